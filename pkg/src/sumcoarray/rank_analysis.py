"""Rank and Kruskal-rank analysis of sensing matrices.

Kruskal ranks are computed exactly by exhaustive column-subset enumeration.
Subsets are processed in batches through a stacked SVD, optionally spread
over a thread pool; the answer does not depend on scheduling since each rank
level reduces to "does any subset fail".
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetExceeded
from .geometry import ArrayGeometry, RedundancyPattern, redundancy_pattern, sum_coarray
from .linalg import DEFAULT_TOL, numerical_rank, singular_values
from .manifold import AngularGrid
from .sensing import (
    WaveformMatrix,
    effective_pattern,
    random_waveform,
    sensing_matrix,
    waveform_rank,
)

__all__ = [
    "numerical_rank",
    "kruskal_rank",
    "kruskal_rank_oracle",
    "first_dependent_subset",
    "max_krank_bound",
    "TradeoffCurve",
    "tradeoff_curve",
    "RedundancyLimitedCheck",
    "redundancy_limited_check",
    "InfeasibilityCertificate",
    "structural_certificate",
    "SearchResult",
    "waveform_search",
]

DEFAULT_BUDGET = 2_000_000
_CHUNK = 2048


def _chunks(n_cols: int, r: int, size: int = _CHUNK) -> Iterator[np.ndarray]:
    combos = itertools.combinations(range(n_cols), r)
    while True:
        block = list(itertools.islice(combos, size))
        if not block:
            return
        yield np.asarray(block, dtype=np.intp)


def _first_dependent_in_chunk(M: np.ndarray, idx: np.ndarray, tol: float) -> Optional[int]:
    # stacked (n_subsets, rows, r) submatrices
    sub = np.moveaxis(M[:, idx], 1, 0)
    s = np.linalg.svd(sub, compute_uv=False)
    bad = ~(s[:, -1] > tol * s[:, 0])
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def first_dependent_subset(M, r: int, tol: float = DEFAULT_TOL, workers: int = 1) -> Optional[tuple[int, ...]]:
    """Lexicographically first r-column subset that is numerically rank-deficient.

    A subset counts as dependent when its smallest singular value is not above
    ``tol`` times its largest (so an all-zero subset is dependent too).
    """
    M = np.asarray(M)
    n_rows, n_cols = M.shape
    if r > n_cols:
        return None
    if r > n_rows:
        return tuple(range(r))
    if workers <= 1:
        for idx in _chunks(n_cols, r):
            hit = _first_dependent_in_chunk(M, idx, tol)
            if hit is not None:
                return tuple(int(i) for i in idx[hit])
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        blocks = list(_chunks(n_cols, r))
        for idx, hit in zip(blocks, pool.map(lambda b: _first_dependent_in_chunk(M, b, tol), blocks)):
            if hit is not None:
                return tuple(int(i) for i in idx[hit])
    return None


def kruskal_rank(M, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Largest r such that every r columns of ``M`` are linearly independent.

    Scans r = 1, 2, ... and stops at the first level with a dependent subset.
    ``budget`` caps the total number of subsets examined; exceeding it raises
    :class:`BudgetExceeded` before any work at that level is done.
    """
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[1] < 1:
        raise ValueError("need a 2-D matrix with at least one column")
    n_rows, n_cols = M.shape
    cap = min(n_rows, n_cols)
    spent = 0
    for r in range(1, cap + 1):
        spent += math.comb(n_cols, r)
        if spent > budget:
            raise BudgetExceeded(spent, budget, what="kruskal_rank")
        if first_dependent_subset(M, r, tol, workers) is not None:
            return r - 1
    return cap


def kruskal_rank_oracle(M, tol: float = DEFAULT_TOL) -> int:
    """Reference Kruskal rank, one SVD per subset, threshold set by the full matrix.

    r is the largest value for which the minimum over all r-subsets of the
    smallest singular value exceeds ``tol * sigma_max(M)``.
    """
    M = np.asarray(M)
    n_rows, n_cols = M.shape
    smax = singular_values(M)[0] if M.size else 0.0
    best = 0
    for r in range(1, min(n_rows, n_cols) + 1):
        worst = min(
            np.linalg.svd(M[:, list(c)], compute_uv=False)[-1]
            for c in itertools.combinations(range(n_cols), r)
        )
        if worst > tol * smax:
            best = r
        else:
            break
    return best


def max_krank_bound(n_s: int, n_rx: int, n_sigma: int) -> int:
    return min(n_s * n_rx, n_sigma)


@dataclass(frozen=True)
class TradeoffCurve:
    n_tx: int
    n_rx: int
    n_sigma: int
    points: tuple[tuple[int, int], ...]
    optimal_n_s: int


def tradeoff_curve(geom: ArrayGeometry) -> TradeoffCurve:
    n_sigma = sum_coarray(geom).size
    points = tuple((n_s, max_krank_bound(n_s, geom.n_rx, n_sigma)) for n_s in range(1, geom.n_tx + 1))
    return TradeoffCurve(geom.n_tx, geom.n_rx, n_sigma, points, -(-n_sigma // geom.n_rx))


@dataclass(frozen=True)
class RedundancyLimitedCheck:
    """Both sides of the full-Kruskal-rank equivalence for one (geometry, S, grid)."""

    applicable: bool
    lhs: bool
    cond_A: bool
    cond_W: bool
    krank_B: int
    krank_A: int
    rank_W: int
    n_s: int
    n_sigma: int

    @property
    def consistent(self) -> bool:
        return (not self.applicable) or (self.lhs == (self.cond_A and self.cond_W))


def redundancy_limited_check(
    geom: ArrayGeometry,
    grid: AngularGrid,
    S: WaveformMatrix,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
) -> RedundancyLimitedCheck:
    """Evaluate ``krank(B) = N_sigma`` against ``krank(A) = N_sigma and rank(W) = N_sigma``.

    The equivalence is only claimed when ``rank(S) * N_rx >= N_sigma``;
    ``applicable`` reports whether that holds.
    """
    sm = sensing_matrix(S, geom, grid)
    n_sigma = sm.pattern.coarray.size
    n_s = waveform_rank(S, tol)
    krank_B = kruskal_rank(sm.B, tol, budget)
    krank_A = kruskal_rank(sm.A.entries, tol, budget)
    rank_W = numerical_rank(sm.W, tol)
    return RedundancyLimitedCheck(
        applicable=n_s * geom.n_rx >= n_sigma,
        lhs=krank_B == n_sigma,
        cond_A=krank_A == n_sigma,
        cond_W=rank_W == n_sigma,
        krank_B=krank_B,
        krank_A=krank_A,
        rank_W=rank_W,
        n_s=n_s,
        n_sigma=n_sigma,
    )


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Rx subset R and co-array columns L, all fed only by Rx sensors in R.

    Columns of W indexed by L live in the span of ``{S[:, t] kron e_m : m in R}``
    whose dimension is at most ``N_s * |R|``; ``|L| > N_s * |R|`` therefore
    forces rank(W) < N_sigma for every waveform of rank at most N_s.
    """

    rx_subset: tuple[int, ...]
    coarray_subset: tuple[int, ...]
    n_s: int
    rx_positions: tuple[int, ...] = ()
    coarray_positions: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "n_s": self.n_s,
            "rx_indices": list(self.rx_subset),
            "rx_positions": list(self.rx_positions),
            "coarray_indices": list(self.coarray_subset),
            "coarray_positions": list(self.coarray_positions),
        }


MAX_CERT_RX = 24


def structural_certificate(
    ups: RedundancyPattern, n_s: int, geom: ArrayGeometry | None = None
) -> Optional[InfeasibilityCertificate]:
    """Search Rx subsets (smallest first, then lexicographic) for a rank witness.

    Sound but not complete: ``None`` does not prove that a rank-``n_s``
    waveform achieving full-rank W exists.
    """
    if not 1 <= n_s <= ups.n_tx:
        raise ValueError(f"N_s must be in 1..{ups.n_tx}, got {n_s}")
    if ups.n_rx > MAX_CERT_RX:
        raise ValueError(f"certificate search supports N_rx <= {MAX_CERT_RX}")
    supports = [ups.rx_support(c) for c in range(ups.coarray.size)]
    for size in range(1, ups.n_rx + 1):
        for R in itertools.combinations(range(ups.n_rx), size):
            Rset = set(R)
            L = tuple(c for c, sup in enumerate(supports) if sup <= Rset)
            if len(L) > n_s * size:
                return InfeasibilityCertificate(
                    rx_subset=R,
                    coarray_subset=L,
                    n_s=n_s,
                    rx_positions=tuple(geom.rx_positions[m] for m in R) if geom else (),
                    coarray_positions=tuple(ups.coarray.positions[c] for c in L),
                )
    return None


@dataclass(frozen=True, eq=False)
class SearchResult:
    waveform: Optional[WaveformMatrix]
    certificate: Optional[InfeasibilityCertificate] = None
    trials_used: int = 0
    ranks: list = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.waveform is not None


def waveform_search(
    geom: ArrayGeometry, n_s: int, trials: int = 5, seed=0, tol: float = DEFAULT_TOL
) -> SearchResult:
    """Look for a rank-``n_s`` waveform S with rank((S kron I) Upsilon) = N_sigma.

    Returns immediately with the certificate attached when a structural
    obstruction exists; otherwise tries ``trials`` seeded generic draws.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ups = redundancy_pattern(geom)
    cert = structural_certificate(ups, n_s, geom)
    if cert is not None:
        return SearchResult(None, cert, 0)
    rng = np.random.default_rng(seed)
    ranks = []
    for k in range(1, trials + 1):
        S = random_waveform(n_s, geom.n_tx, seed=rng)
        rank_W = numerical_rank(effective_pattern(S, ups), tol)
        ranks.append(rank_W)
        if rank_W == ups.coarray.size:
            return SearchResult(S, None, k, ranks)
    return SearchResult(None, None, trials, ranks)
