"""Noiseless measurement simulation and exhaustive l0 sparse recovery.

Scene supports are 0-based grid indices in memory; the scene file format
uses 1-based indices (see :mod:`sumcoarray.io`).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionError, NoFeasibleSupport
from .rank_analysis import DEFAULT_BUDGET, _chunks, first_dependent_subset
from .sensing import SensingMatrix

RECOVERY_TOL = 1e-8


def _as_matrix(B) -> np.ndarray:
    return B.B if isinstance(B, SensingMatrix) else np.asarray(B)


@dataclass(frozen=True, eq=False)
class Scene:
    """K-sparse complex reflectivity on a V-point grid."""

    V: int
    support: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        support = tuple(int(i) for i in self.support)
        amps = np.array(self.amplitudes, dtype=complex).ravel()
        if self.V < 1:
            raise ValueError("V must be positive")
        if len(support) != amps.size:
            raise DimensionError("support and amplitudes differ in length")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("support must be strictly increasing")
        if support and not (0 <= support[0] and support[-1] < self.V):
            raise ValueError(f"support indices must lie in 0..{self.V - 1}")
        if np.any(amps == 0):
            raise ValueError("scene amplitudes must be nonzero")
        amps.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def K(self) -> int:
        return len(self.support)

    def dense(self) -> np.ndarray:
        x = np.zeros(self.V, dtype=complex)
        x[list(self.support)] = self.amplitudes
        return x

    @classmethod
    def from_dense(cls, x, atol: float = 0.0) -> "Scene":
        x = np.asarray(x, dtype=complex).ravel()
        support = tuple(int(i) for i in np.flatnonzero(np.abs(x) > atol))
        return cls(x.size, support, x[list(support)])

    def __eq__(self, other):
        if not isinstance(other, Scene):
            return NotImplemented
        return (
            self.V == other.V
            and self.support == other.support
            and bool(np.all(self.amplitudes == other.amplitudes))
        )

    def matches(self, other: "Scene", atol: float = 1e-8) -> bool:
        """Same V and support, amplitudes equal to within ``atol``."""
        return (
            self.V == other.V
            and self.support == other.support
            and bool(np.all(np.abs(self.amplitudes - other.amplitudes) <= atol))
        )


def empty_scene(V: int) -> Scene:
    return Scene(V, (), np.zeros(0, dtype=complex))


def random_scene(V: int, K: int, seed=0, min_magnitude: float = 0.1) -> Scene:
    """K scatterers at random grid points with random phases.

    Magnitudes are uniform in ``[min_magnitude, 1]``.
    """
    rng = np.random.default_rng(seed)
    support = np.sort(rng.choice(V, size=K, replace=False))
    mags = rng.uniform(min_magnitude, 1.0, size=K)
    phases = rng.uniform(0, 2 * np.pi, size=K)
    return Scene(V, tuple(support), mags * np.exp(1j * phases))


def simulate(B, scene: Scene) -> np.ndarray:
    M = _as_matrix(B)
    if M.shape[1] != scene.V:
        raise DimensionError(f"scene has V={scene.V}, sensing matrix has {M.shape[1]} columns")
    return M @ scene.dense()


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    estimate: Scene
    sparsity_found: int
    unique: bool
    residual: float
    n_feasible: int = 1


def l0_recover(
    y,
    B,
    K_max: int,
    tol: float = RECOVERY_TOL,
    budget: int = DEFAULT_BUDGET,
) -> RecoveryResult:
    """Sparsest z with ``y = B z`` by exhaustive support enumeration.

    For k = 0..K_max every k-column support is solved by least squares and
    accepted when ``||y - B_S z|| <= tol * ||y||``. The first k with a feasible
    support wins; ties go to the lexicographically smallest support and are
    reported as ``unique=False``.
    """
    M = _as_matrix(B)
    y = np.asarray(y, dtype=complex).ravel()
    n_rows, V = M.shape
    if y.size != n_rows:
        raise DimensionError(f"y has length {y.size}, B has {n_rows} rows")
    if not 0 <= K_max <= V:
        raise ValueError(f"K_max must be in 0..{V}")
    ynorm = float(np.linalg.norm(y))
    spent = 0
    for k in range(K_max + 1):
        spent += math.comb(V, k)
        if spent > budget:
            raise BudgetExceeded(spent, budget, what="l0_recover")
        if k == 0:
            if ynorm == 0.0:
                return RecoveryResult(empty_scene(V), 0, True, 0.0)
            continue
        first = None
        n_feasible = 0
        for idx in _chunks(V, k):
            sub = np.moveaxis(M[:, idx], 1, 0)
            z = np.linalg.pinv(sub) @ y
            resid = np.linalg.norm(y[None, :] - np.einsum("nij,nj->ni", sub, z), axis=1) / ynorm
            ok = np.flatnonzero(resid <= tol)
            n_feasible += ok.size
            if first is None and ok.size:
                j = ok[0]
                first = (tuple(int(i) for i in idx[j]), z[j], float(resid[j]))
        if first is not None:
            support, amps, resid = first
            nonzero = bool(np.all(np.abs(amps) > tol * np.max(np.abs(amps))))
            if not nonzero:
                keep = np.abs(amps) > tol * np.max(np.abs(amps))
                support = tuple(s for s, kk in zip(support, keep) if kk)
                amps = amps[keep]
            est = Scene(V, support, amps)
            return RecoveryResult(est, k, n_feasible == 1 and nonzero, resid, n_feasible)
    raise NoFeasibleSupport(f"no support of size <= {K_max} reproduces y within tol={tol}")


def uniqueness_bound(krank: int) -> int:
    """Largest K for which every K-sparse scene is uniquely identifiable."""
    if krank < 0:
        raise ValueError("krank must be non-negative")
    return krank // 2


def find_ambiguous_scene(
    B,
    K: int,
    tol: float = 1e-10,
    budget: int = DEFAULT_BUDGET,
) -> Optional[tuple[Scene, Scene]]:
    """Two distinct scenes with at most K scatterers each and equal measurements.

    Finds the smallest dependent column subset (at most 2K columns), takes its
    null vector ``n`` and splits it: ``s1`` keeps the first ``ceil(r/2)``
    entries, ``s2`` the negated rest, so ``B s1 - B s2 = B n = 0``. Returns
    ``None`` when every 2K columns are independent.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    M = _as_matrix(B)
    V = M.shape[1]
    spent = 0
    for r in range(1, min(2 * K, V) + 1):
        spent += math.comb(V, r)
        if spent > budget:
            raise BudgetExceeded(spent, budget, what="find_ambiguous_scene")
        subset = first_dependent_subset(M, r, tol)
        if subset is None:
            continue
        _, _, vh = np.linalg.svd(M[:, list(subset)])
        null = vh[-1].conj()
        null = null / null[np.argmax(np.abs(null))]
        h = -(-r // 2)
        s1 = Scene(V, subset[:h], null[:h])
        s2 = Scene(V, subset[h:], -null[h:])
        return s1, s2
    return None


def measurement_gap(B, s1: Scene, s2: Scene) -> float:
    """Relative difference ``||B s1 - B s2|| / ||B s1||``."""
    y1, y2 = simulate(B, s1), simulate(B, s2)
    denom = np.linalg.norm(y1)
    return float(np.linalg.norm(y1 - y2) / denom) if denom > 0 else float(np.linalg.norm(y2))


def support_errors(truth: Scene, estimate: Scene) -> tuple[Sequence[int], Sequence[int]]:
    """(missed, spurious) grid indices."""
    t, e = set(truth.support), set(estimate.support)
    return sorted(t - e), sorted(e - t)
