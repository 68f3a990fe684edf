"""Tx/Rx linear array geometries, sum co-arrays and redundancy patterns.

Positions are non-negative integers in units of half the carrier wavelength.
All index conventions in this module are 0-based; row ``n`` of a redundancy
pattern pairs Tx sensor ``n // N_rx`` with Rx sensor ``n % N_rx`` (Tx-major).
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


def _normalize_positions(values: Iterable, name: str) -> tuple[int, ...]:
    out = []
    for v in values:
        if isinstance(v, bool):
            raise ValueError(f"{name} positions must be integers, got {v!r}")
        if not isinstance(v, numbers.Integral):
            if isinstance(v, numbers.Real) and float(v).is_integer():
                v = int(v)
            else:
                raise ValueError(f"{name} positions must be integers, got {v!r}")
        v = int(v)
        if v < 0:
            raise ValueError(f"{name} positions must be non-negative, got {v}")
        out.append(v)
    if not out:
        raise ValueError(f"{name} array must contain at least one sensor")
    pos = tuple(sorted(set(out)))
    if pos[0] != 0:
        raise ValueError(f"{name} array must contain position 0, got {pos}")
    return pos


@dataclass(frozen=True)
class ArrayGeometry:
    """Colocated linear Tx and Rx arrays.

    Inputs are sorted and deduplicated. Both arrays must contain position 0;
    a shifted array is rejected rather than silently translated.
    """

    tx_positions: tuple[int, ...]
    rx_positions: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tx_positions", _normalize_positions(self.tx_positions, "tx"))
        object.__setattr__(self, "rx_positions", _normalize_positions(self.rx_positions, "rx"))

    @property
    def n_tx(self) -> int:
        return len(self.tx_positions)

    @property
    def n_rx(self) -> int:
        return len(self.rx_positions)

    @property
    def n_pairs(self) -> int:
        return self.n_tx * self.n_rx

    def pair(self, n: int) -> tuple[int, int]:
        """(Tx index, Rx index) encoded by Tx-Rx row ``n``."""
        return divmod(n, self.n_rx)

    def to_dict(self) -> dict:
        return {"tx": list(self.tx_positions), "rx": list(self.rx_positions)}

    @classmethod
    def from_dict(cls, d: dict, name: str = "") -> "ArrayGeometry":
        if not isinstance(d, dict) or "tx" not in d or "rx" not in d:
            raise ValueError("geometry document needs integer arrays 'tx' and 'rx'")
        return cls(tuple(d["tx"]), tuple(d["rx"]), name=name)


ARRAY_I = ArrayGeometry((0, 1, 2), (0, 1, 2, 5), name="array-I")
ARRAY_II = ArrayGeometry((0, 1, 2), (0, 1, 3, 5), name="array-II")

NAMED_GEOMETRIES = {"paper:array-I": ARRAY_I, "paper:array-II": ARRAY_II}


@dataclass(frozen=True)
class SumCoarray:
    positions: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.positions)

    def index(self, position: int) -> int:
        return self.positions.index(position)


@dataclass(frozen=True, eq=False)
class RedundancyPattern:
    """Binary (N_tx*N_rx) x N_sigma map from Tx-Rx pairs to co-array elements."""

    matrix: np.ndarray
    coarray: SumCoarray
    n_tx: int
    n_rx: int

    def __post_init__(self):
        self.matrix.setflags(write=False)

    @property
    def row_pairing(self) -> list[tuple[int, int]]:
        return [divmod(n, self.n_rx) for n in range(self.n_tx * self.n_rx)]

    @property
    def multiplicities(self) -> np.ndarray:
        return self.matrix.sum(axis=0)

    @property
    def column_of_row(self) -> np.ndarray:
        """Co-array column index hit by each Tx-Rx row."""
        return np.argmax(self.matrix, axis=1)

    def rx_support(self, column: int) -> frozenset[int]:
        """Rx indices that take part in co-array element ``column``."""
        rows = np.flatnonzero(self.matrix[:, column])
        return frozenset(int(r) % self.n_rx for r in rows)

    def to_csv(self) -> str:
        return "\n".join(",".join(str(int(v)) for v in row) for row in self.matrix) + "\n"


def sum_coarray(geom: ArrayGeometry) -> SumCoarray:
    """Sorted distinct pairwise sums of Tx and Rx positions."""
    sums = {t + r for t in geom.tx_positions for r in geom.rx_positions}
    return SumCoarray(tuple(sorted(sums)))


def redundancy_pattern(geom: ArrayGeometry) -> RedundancyPattern:
    ca = sum_coarray(geom)
    lookup = {p: i for i, p in enumerate(ca.positions)}
    mat = np.zeros((geom.n_pairs, ca.size), dtype=np.int8)
    for n in range(geom.n_pairs):
        t, r = geom.pair(n)
        mat[n, lookup[geom.tx_positions[t] + geom.rx_positions[r]]] = 1
    return RedundancyPattern(mat, ca, geom.n_tx, geom.n_rx)


def is_contiguous(ca: SumCoarray | Sequence[int]) -> bool:
    positions = ca.positions if isinstance(ca, SumCoarray) else tuple(sorted(set(ca)))
    return positions == tuple(range(len(positions)))


def is_redundant(geom: ArrayGeometry) -> bool:
    return sum_coarray(geom).size < geom.n_pairs


def random_geometry(n_tx: int, n_rx: int, seed=0, contiguous: bool = True, max_tries: int = 10_000) -> ArrayGeometry:
    """Random Tx/Rx arrays containing 0, by rejection sampling.

    Tx positions are drawn from ``0..2*n_tx`` and Rx positions from
    ``0..n_tx*n_rx``. With ``contiguous=True`` only geometries whose sum
    co-array has no holes are returned.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        tx_span = int(rng.integers(n_tx - 1, 2 * n_tx + 1))
        rx_span = int(rng.integers(n_rx - 1, n_tx * n_rx + 1))
        tx = {0, *(int(v) for v in rng.choice(np.arange(1, tx_span + 1), n_tx - 1, replace=False))} if n_tx > 1 else {0}
        rx = {0, *(int(v) for v in rng.choice(np.arange(1, rx_span + 1), n_rx - 1, replace=False))} if n_rx > 1 else {0}
        geom = ArrayGeometry(tuple(tx), tuple(rx))
        if not contiguous or is_contiguous(sum_coarray(geom)):
            return geom
    raise RuntimeError(f"no contiguous geometry found for N_tx={n_tx}, N_rx={n_rx}")
