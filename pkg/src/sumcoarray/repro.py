"""End-to-end reproduction checks for the two reference arrays.

Each ``check_*`` function returns a list of :class:`Check` records; the
``paper-repro`` CLI subcommand and ``scripts/run_repro.py`` collect them into
a :class:`ReproReport`.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .geometry import (
    ARRAY_I,
    ARRAY_II,
    is_contiguous,
    random_geometry,
    redundancy_pattern,
    sum_coarray,
)
from .identifiability import (
    Scene,
    find_ambiguous_scene,
    l0_recover,
    measurement_gap,
    random_scene,
    simulate,
)
from .linalg import DEFAULT_TOL, numerical_rank, singular_values
from .manifold import random_grid, uniform_grid
from .rank_analysis import (
    kruskal_rank,
    max_krank_bound,
    redundancy_limited_check,
    structural_certificate,
    tradeoff_curve,
    waveform_search,
)
from .sensing import WaveformMatrix, effective_pattern, proof_waveform, random_waveform, sensing_matrix

GRID_SIZE = 16

# Co-array column (0-based) hit by each Tx-Rx row of the two reference patterns.
REFERENCE_COLUMNS = {
    "array-I": (0, 1, 2, 5, 1, 2, 3, 6, 2, 3, 4, 7),
    "array-II": (0, 1, 3, 5, 1, 2, 4, 6, 2, 3, 5, 7),
}


@dataclass
class Check:
    name: str
    expected: object
    observed: object
    passed: bool

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: expected {self.expected}, observed {self.observed}"


@dataclass
class ReproReport:
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "seconds": round(self.seconds, 3),
            "passed": self.passed,
            "checks": [{**asdict(c), "expected": str(c.expected), "observed": str(c.observed)} for c in self.checks],
        }


def _chk(name, expected, observed, passed=None) -> Check:
    return Check(name, expected, observed, bool(expected == observed) if passed is None else bool(passed))


def check_coarray_fidelity() -> list[Check]:
    out = []
    for geom in (ARRAY_I, ARRAY_II):
        ca = sum_coarray(geom)
        ups = redundancy_pattern(geom)
        expected = np.zeros((12, 8), dtype=np.int8)
        expected[np.arange(12), REFERENCE_COLUMNS[geom.name]] = 1
        out.append(_chk(f"{geom.name} N_sigma", 8, ca.size))
        out.append(_chk(f"{geom.name} contiguous", True, is_contiguous(ca)))
        out.append(_chk(f"{geom.name} N_tx*N_rx", 12, geom.n_pairs))
        out.append(_chk(f"{geom.name} pattern entries", "identical", "identical" if np.array_equal(ups.matrix, expected) else "differ"))
    return out


def check_tradeoff() -> list[Check]:
    out = []
    for geom in (ARRAY_I, ARRAY_II):
        curve = tradeoff_curve(geom)
        out.append(_chk(f"{geom.name} max krank by N_s", (4, 8, 8), tuple(k for _, k in curve.points)))
        out.append(_chk(f"{geom.name} optimal N_s", 2, curve.optimal_n_s))
    return out


def check_singular_values(grid=None, label="default grid", tol=DEFAULT_TOL) -> list[Check]:
    grid = uniform_grid(GRID_SIZE) if grid is None else grid
    S = proof_waveform()
    s1 = singular_values(sensing_matrix(S, ARRAY_I, grid).B)
    s2 = singular_values(sensing_matrix(S, ARRAY_II, grid).B)
    return [
        _chk(f"sigma_8/sigma_1 of B_I <= 1e-10 ({label})", "<= 1e-10", f"{s1[7] / s1[0]:.3e}", s1[7] <= 1e-10 * s1[0]),
        _chk(f"sigma_8/sigma_1 of B_II >= 1e-4 ({label})", ">= 1e-4", f"{s2[7] / s2[0]:.3e}", s2[7] >= 1e-4 * s2[0]),
        _chk(f"sigma_7/sigma_8 of B_I > 1e6 ({label})", "> 1e6", f"{s1[6] / max(s1[7], 1e-300):.3e}", s1[6] > 1e6 * s1[7]),
        _chk(f"rank(B_I) ({label})", 7, numerical_rank(sensing_matrix(S, ARRAY_I, grid).B, tol)),
        _chk(f"rank(B_II) ({label})", 8, numerical_rank(sensing_matrix(S, ARRAY_II, grid).B, tol)),
    ]


def check_counterexample(tol=DEFAULT_TOL, seed=0) -> list[Check]:
    grid = uniform_grid(GRID_SIZE)
    S = proof_waveform()
    out = [
        _chk("krank(B_II)", 8, kruskal_rank(sensing_matrix(S, ARRAY_II, grid).B, tol)),
        _chk("krank(B_I)", 7, kruskal_rank(sensing_matrix(S, ARRAY_I, grid).B, tol)),
    ]
    cert = structural_certificate(redundancy_pattern(ARRAY_I), 2, ARRAY_I)
    out.append(_chk("certificate(array-I, N_s=2)", "R=rx@(5,), |L|=3",
                    None if cert is None else f"R=rx@{cert.rx_positions}, |L|={len(cert.coarray_subset)}"))
    out.append(_chk("certificate(array-II, N_s=2)", None, structural_certificate(redundancy_pattern(ARRAY_II), 2, ARRAY_II)))
    res2 = waveform_search(ARRAY_II, 2, trials=5, seed=seed, tol=tol)
    out.append(_chk("waveform_search(array-II, N_s=2) succeeds", True, res2.success))
    res1 = waveform_search(ARRAY_I, 2, trials=5, seed=seed, tol=tol)
    out.append(_chk("waveform_search(array-I, N_s=2) blocked by certificate", (False, True),
                    (res1.success, res1.certificate is not None)))
    return out


def check_ambiguity(n_scenes=100, seed=0, tol=DEFAULT_TOL) -> list[Check]:
    grid = uniform_grid(GRID_SIZE)
    S = proof_waveform()
    B1 = sensing_matrix(S, ARRAY_I, grid).B
    B2 = sensing_matrix(S, ARRAY_II, grid).B
    pair = find_ambiguous_scene(B1, 4, tol)
    if pair is None:
        out = [_chk("ambiguous K=4 pair on B_I", "found", "none")]
    else:
        s1, s2 = pair
        gap = measurement_gap(B1, s1, s2)
        out = [_chk("ambiguous K=4 pair on B_I", "distinct, gap <= 1e-10",
                    f"K=({s1.K},{s2.K}), gap={gap:.2e}", s1 != s2 and gap <= 1e-10 and max(s1.K, s2.K) <= 4)]
    rng = np.random.default_rng(seed)
    ok = 0
    for _ in range(n_scenes):
        scene = random_scene(GRID_SIZE, 4, seed=rng)
        res = l0_recover(simulate(B2, scene), B2, 4)
        ok += res.unique and res.estimate.matches(scene, atol=1e-8)
    out.append(_chk(f"l0 recovery on B_II, {n_scenes} random K=4 scenes", n_scenes, ok))
    return out


def equivalence_instances(n=300, seed=2024, max_sigma=12, max_V=14):
    """Seeded random (geometry, grid, S) triples for the equivalence suite.

    About three quarters of the waveform ranks are drawn from the
    redundancy-limited range ``N_s >= N_sigma / N_rx``; half of the waveforms
    get a random sparsity mask so rank-deficient W cases appear.
    """
    rng = np.random.default_rng(seed)
    for _ in range(n):
        while True:
            n_tx, n_rx = int(rng.integers(2, 5)), int(rng.integers(2, 5))
            geom = random_geometry(n_tx, n_rx, rng)
            n_sigma = sum_coarray(geom).size
            if n_sigma <= max_sigma:
                break
        V = int(rng.integers(n_sigma, max_V + 1))
        grid = random_grid(V, seed=int(rng.integers(1 << 31)))
        lo = -(-n_sigma // n_rx)
        n_s = int(rng.integers(lo, n_tx + 1)) if rng.random() < 0.75 else int(rng.integers(1, n_tx + 1))
        S = random_waveform(n_s, n_tx, seed=rng)
        if rng.random() < 0.5:
            mask = rng.random(S.entries.shape) < 0.6
            if np.any(mask):
                S = WaveformMatrix(S.entries * mask)
        yield geom, grid, S


def check_equivalence_suite(n=300, seed=2024, tol=DEFAULT_TOL) -> list[Check]:
    applicable = consistent = violations = 0
    for geom, grid, S in equivalence_instances(n, seed):
        c = redundancy_limited_check(geom, grid, S, tol)
        violations += c.krank_B > max_krank_bound(c.n_s, geom.n_rx, c.n_sigma)
        if c.applicable:
            applicable += 1
            consistent += c.consistent
    return [
        _chk("equivalence: applicable instances >= 200", ">= 200", applicable, applicable >= 200),
        _chk("equivalence holds on every applicable instance", applicable, consistent),
        _chk(f"krank bound violations over {n} instances", 0, violations),
    ]


def check_full_rank_waveforms(n=20, seed=7, tol=DEFAULT_TOL) -> list[Check]:
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(n):
        n_tx, n_rx = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        while True:
            geom = random_geometry(n_tx, n_rx, rng)
            n_sigma = sum_coarray(geom).size
            if n_sigma <= 12:
                break
        grid = random_grid(int(rng.integers(n_sigma, 15)), seed=int(rng.integers(1 << 31)))
        S = random_waveform(n_tx, n_tx, seed=rng)
        hits += kruskal_rank(sensing_matrix(S, geom, grid).B, tol) == n_sigma
    return [_chk(f"krank(B) = N_sigma with full-rank waveforms ({n} geometries)", n, hits)]


def check_rank_revealing(n=50, seed=11, tol=DEFAULT_TOL) -> list[Check]:
    rng = np.random.default_rng(seed)
    agree = 0
    for _ in range(n):
        n_tx, n_rx = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        geom = random_geometry(n_tx, n_rx, rng, contiguous=bool(rng.random() < 0.5))
        ups = redundancy_pattern(geom)
        n_s = int(rng.integers(1, n_tx + 1))
        S = random_waveform(n_s, n_tx, seed=rng)
        if rng.random() < 0.5:
            S = WaveformMatrix(S.entries * (rng.random(S.entries.shape) < 0.6))
        T2 = int(rng.integers(n_s, n_s + 4))
        U = random_waveform(n_s, n_s, T=T2, seed=rng).entries
        US = WaveformMatrix(U @ S.entries)
        agree += numerical_rank(effective_pattern(US, ups), tol) == numerical_rank(effective_pattern(S, ups), tol)
    return [_chk(f"rank((US kron I) Ups) = rank((S kron I) Ups) over {n} pairs", n, agree)]


def make_ambiguous_fixture(tol=DEFAULT_TOL) -> Scene:
    """K=4 scene on the default grid that Array I confuses with another scene.

    Second half of the null-vector split from :func:`find_ambiguous_scene` on
    B_I, rescaled to unit peak magnitude. Its partner has a lexicographically
    smaller support, so exhaustive recovery on Array I returns the wrong scene.
    """
    B1 = sensing_matrix(proof_waveform(), ARRAY_I, uniform_grid(GRID_SIZE)).B
    _, s2 = find_ambiguous_scene(B1, 4, tol)
    amps = s2.amplitudes / np.max(np.abs(s2.amplitudes))
    return Scene(s2.V, s2.support, amps)


def check_fixture(tol=DEFAULT_TOL) -> list[Check]:
    from .io import fixture_scene

    scene = fixture_scene()
    grid = uniform_grid(GRID_SIZE)
    out = []
    for geom, want_exact in ((ARRAY_I, False), (ARRAY_II, True)):
        B = sensing_matrix(proof_waveform(), geom, grid).B
        res = l0_recover(simulate(B, scene), B, 4)
        exact = res.unique and res.estimate.matches(scene, atol=1e-8)
        out.append(_chk(f"stored K=4 scene exactly recovered on {geom.name}", want_exact, exact))
    return out


def run_all(tol=DEFAULT_TOL, seed=0, quick=False) -> ReproReport:
    start = time.perf_counter()
    report = ReproReport(seed=seed)
    report.checks += check_coarray_fidelity()
    report.checks += check_tradeoff()
    report.checks += check_singular_values(tol=tol)
    report.checks += check_singular_values(random_grid(GRID_SIZE, seed=seed), f"random grid seed {seed}", tol)
    report.checks += check_counterexample(tol, seed)
    report.checks += check_ambiguity(20 if quick else 100, seed, tol)
    report.checks += check_fixture(tol)
    report.checks += check_equivalence_suite(300, tol=tol) if not quick else check_equivalence_suite(40, tol=tol)[1:]
    report.checks += check_full_rank_waveforms(tol=tol)
    report.checks += check_rank_revealing(tol=tol)
    report.seconds = time.perf_counter() - start
    return report
