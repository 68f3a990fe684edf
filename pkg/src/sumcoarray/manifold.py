"""Steering (manifold) matrices on an angular grid and the Khatri-Rao identity.

Grid points are stored as ``u = sin(theta)`` in ``[-1, 1)``. The entry for a
sensor at integer position ``d`` and grid point ``u`` is ``exp(j*pi*d*u)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError
from .geometry import ArrayGeometry, redundancy_pattern, sum_coarray


@dataclass(frozen=True, eq=False)
class AngularGrid:
    u_values: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u_values, dtype=float).ravel()
        if u.size == 0:
            raise ValueError("grid must contain at least one point")
        if np.any(u < -1.0) or np.any(u >= 1.0):
            raise ValueError("grid values must lie in [-1, 1)")
        if np.any(np.diff(u) <= 0):
            raise ValueError("grid values must be strictly increasing")
        u.setflags(write=False)
        object.__setattr__(self, "u_values", u)

    @property
    def V(self) -> int:
        return self.u_values.size

    @property
    def theta(self) -> np.ndarray:
        return np.arcsin(self.u_values)


def uniform_grid(V: int, offset: float = 0.5) -> AngularGrid:
    """V points uniform in u: ``u_i = -1 + 2 (i + offset) / V``, i = 0..V-1.

    The default half-bin offset keeps the grid symmetric about broadside and
    away from the endfire points u = +-1, whose nodes coincide on the unit
    circle. ``offset=0`` gives the plain DFT grid, which contains u = -1 and
    u = 0 and produces extra structured column dependencies in reduced-rank
    sensing matrices.
    """
    if V < 1:
        raise ValueError("V must be positive")
    if not 0.0 <= offset < 1.0:
        raise ValueError("offset must be in [0, 1)")
    return AngularGrid(-1.0 + 2.0 * (np.arange(V) + offset) / V)


def random_grid(V: int, seed: int = 0, jitter: float = 0.4) -> AngularGrid:
    """Uniform grid with each point jittered inside its own bin.

    Point i is drawn from ``-1 + 2 (i + 0.5 + delta) / V`` with
    ``|delta| <= jitter < 0.5``, so nodes stay distinct with a guaranteed
    minimum separation of ``2 (1 - 2 jitter) / V``.
    """
    if not 0.0 <= jitter < 0.5:
        raise ValueError("jitter must be in [0, 0.5)")
    rng = np.random.default_rng(seed)
    delta = rng.uniform(-jitter, jitter, size=V)
    return AngularGrid(-1.0 + 2.0 * (np.arange(V) + 0.5 + delta) / V)


@dataclass(frozen=True, eq=False)
class ManifoldMatrix:
    entries: np.ndarray
    positions: tuple[int, ...]

    @property
    def shape(self):
        return self.entries.shape


def manifold(positions: Sequence[int], grid: AngularGrid) -> ManifoldMatrix:
    pos = tuple(int(p) for p in positions)
    if not pos:
        raise ValueError("positions must be non-empty")
    entries = np.exp(1j * np.pi * np.outer(np.asarray(pos, dtype=float), grid.u_values))
    entries.setflags(write=False)
    return ManifoldMatrix(entries, pos)


def virtual_manifold(geom: ArrayGeometry, grid: AngularGrid) -> ManifoldMatrix:
    """Manifold of the sum co-array (N_sigma x V)."""
    return manifold(sum_coarray(geom).positions, grid)


def khatri_rao(a_tx, a_rx) -> np.ndarray:
    """Column-wise Kronecker product, Tx-major rows."""
    a = a_tx.entries if isinstance(a_tx, ManifoldMatrix) else np.asarray(a_tx)
    b = a_rx.entries if isinstance(a_rx, ManifoldMatrix) else np.asarray(a_rx)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise DimensionError(f"column counts differ: {a.shape} vs {b.shape}")
    return (a[:, None, :] * b[None, :, :]).reshape(a.shape[0] * b.shape[0], a.shape[1])


def factorization_residual(geom: ArrayGeometry, grid: AngularGrid) -> float:
    """Max-abs deviation between A_tx (kr) A_rx and (redundancy pattern) @ A."""
    physical = khatri_rao(manifold(geom.tx_positions, grid), manifold(geom.rx_positions, grid))
    ups = redundancy_pattern(geom).matrix
    virtual = ups @ virtual_manifold(geom, grid).entries
    return float(np.max(np.abs(physical - virtual)))
