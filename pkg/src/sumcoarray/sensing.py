"""Waveform matrices and assembly of the spatio-temporal sensing matrix.

The noiseless receive model is ``y = (S kron I) (A_tx kr A_rx) x = W A x = B x``
with ``W = (S kron I_{N_rx}) Upsilon`` the effective waveform pattern.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .geometry import ArrayGeometry, RedundancyPattern, redundancy_pattern
from .linalg import DEFAULT_TOL, complex_gaussian, numerical_rank, rng_from
from .manifold import AngularGrid, ManifoldMatrix, virtual_manifold


@dataclass(frozen=True, eq=False)
class WaveformMatrix:
    """T x N_tx space-time code; column n is the signal launched by Tx sensor n."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        if e.ndim != 2 or e.shape[0] < 1 or e.shape[1] < 1:
            raise DimensionError(f"waveform must be a non-empty 2-D matrix, got shape {e.shape}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def T(self) -> int:
        return self.entries.shape[0]

    @property
    def n_tx(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        if not isinstance(other, WaveformMatrix):
            return NotImplemented
        return self.entries.shape == other.entries.shape and bool(np.all(self.entries == other.entries))


def waveform_rank(S: WaveformMatrix, tol: float = DEFAULT_TOL) -> int:
    return numerical_rank(S.entries, tol)


def proof_waveform() -> WaveformMatrix:
    """Rank-2 code with s11 = s22 = s13 = 1/sqrt(3) and all other entries zero."""
    c = 1.0 / np.sqrt(3.0)
    return WaveformMatrix(np.array([[c, 0.0, c], [0.0, c, 0.0]]))


def random_waveform(n_s: int, n_tx: int, T: int | None = None, seed=0) -> WaveformMatrix:
    """Seeded random T x N_tx waveform of rank ``n_s`` (almost surely).

    Drawn as the product of T x n_s and n_s x N_tx standard complex Gaussian
    factors. ``T`` defaults to ``n_s`` (the reduced form).
    """
    T = n_s if T is None else T
    if not 1 <= n_s <= min(T, n_tx):
        raise ValueError(f"need 1 <= N_s <= min(T, N_tx), got N_s={n_s}, T={T}, N_tx={n_tx}")
    rng = rng_from(seed)
    left = complex_gaussian(rng, (T, n_s))
    right = complex_gaussian(rng, (n_s, n_tx))
    return WaveformMatrix(left @ right)


def _check_dims(S: WaveformMatrix, ups: RedundancyPattern, n_rx: int | None) -> int:
    n_rx = ups.n_rx if n_rx is None else n_rx
    if S.n_tx != ups.n_tx or n_rx != ups.n_rx:
        raise DimensionError(
            f"waveform has {S.n_tx} Tx columns, pattern expects N_tx={ups.n_tx}, N_rx={ups.n_rx}"
        )
    return n_rx


def effective_pattern(S: WaveformMatrix, ups: RedundancyPattern, n_rx: int | None = None) -> np.ndarray:
    """(S kron I_{N_rx}) @ Upsilon, shape (T*N_rx) x N_sigma."""
    n_rx = _check_dims(S, ups, n_rx)
    return np.kron(S.entries, np.eye(n_rx)) @ ups.matrix


def effective_pattern_by_columns(S: WaveformMatrix, ups: RedundancyPattern) -> np.ndarray:
    """Same as :func:`effective_pattern`, accumulated over each column's Tx-Rx pairs.

    Column l is the sum of ``S[:, t] kron e_r`` over pairs (t, r) mapped to
    co-array element l. Used as an independent check of the Kronecker route.
    """
    _check_dims(S, ups, None)
    W = np.zeros((S.T * ups.n_rx, ups.coarray.size), dtype=complex)
    cols = ups.column_of_row
    for n, (t, r) in enumerate(ups.row_pairing):
        # S[:, t] kron e_r puts S[k, t] at row k*N_rx + r
        W[r :: ups.n_rx, cols[n]] += S.entries[:, t]
    return W


@dataclass(frozen=True, eq=False)
class SensingMatrix:
    B: np.ndarray
    W: np.ndarray
    S: WaveformMatrix
    pattern: RedundancyPattern
    A: ManifoldMatrix
    geometry: ArrayGeometry
    grid: AngularGrid

    @property
    def shape(self):
        return self.B.shape


def sensing_matrix(S: WaveformMatrix, geom: ArrayGeometry, grid: AngularGrid) -> SensingMatrix:
    ups = redundancy_pattern(geom)
    W = effective_pattern(S, ups)
    A = virtual_manifold(geom, grid)
    B = W @ A.entries
    for m in (B, W):
        m.setflags(write=False)
    return SensingMatrix(B, W, S, ups, A, geom, grid)
