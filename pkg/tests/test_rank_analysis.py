import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumcoarray import (
    ARRAY_I,
    ARRAY_II,
    ArrayGeometry,
    BudgetExceeded,
    WaveformMatrix,
    effective_pattern,
    kruskal_rank,
    kruskal_rank_oracle,
    max_krank_bound,
    numerical_rank,
    random_geometry,
    random_grid,
    random_waveform,
    redundancy_limited_check,
    redundancy_pattern,
    sensing_matrix,
    structural_certificate,
    sum_coarray,
    tradeoff_curve,
    uniform_grid,
    virtual_manifold,
    waveform_rank,
    waveform_search,
)
from sumcoarray.rank_analysis import first_dependent_subset


def test_numerical_rank_examples(sm_I):
    assert numerical_rank(sm_I.B) == 7
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.zeros((3, 3))) == 0
    with pytest.raises(ValueError):
        numerical_rank(np.eye(2), tol=0)


def test_kruskal_rank_reference_arrays(sm_I, sm_II, grid16):
    assert kruskal_rank(sm_II.B) == 8
    assert kruskal_rank(sm_I.B) == 7
    assert kruskal_rank(virtual_manifold(ARRAY_II, grid16).entries) == 8


def test_kruskal_rank_matches_oracle_on_reference_arrays(sm_I, sm_II, grid16):
    assert kruskal_rank_oracle(sm_I.B) == 7
    assert kruskal_rank_oracle(sm_II.B) == 8
    assert kruskal_rank_oracle(virtual_manifold(ARRAY_I, grid16).entries) == 8


def test_kruskal_rank_depends_on_grid_for_array_I():
    # the plain DFT grid (containing u = -1 and u = 0) creates extra
    # dependencies among six columns of B_I
    from sumcoarray import proof_waveform

    B = sensing_matrix(proof_waveform(), ARRAY_I, uniform_grid(16, offset=0.0)).B
    assert kruskal_rank(B) == 5 == kruskal_rank_oracle(B)
    B2 = sensing_matrix(proof_waveform(), ARRAY_II, uniform_grid(16, offset=0.0)).B
    assert kruskal_rank(B2) == 8


def test_kruskal_rank_handmade():
    # columns e1, e2, e1+e2, e3: every 2 independent, {0,1,2} dependent
    M = np.array([[1, 0, 1, 0], [0, 1, 1, 0], [0, 0, 0, 1]], dtype=float)
    assert kruskal_rank(M) == 2
    assert first_dependent_subset(M, 3) == (0, 1, 2)
    # repeated column -> krank 1; zero column -> krank 0
    assert kruskal_rank(np.array([[1, 1, 0], [0, 0, 1]], dtype=float)) == 1
    assert kruskal_rank(np.array([[1, 0], [0, 0]], dtype=float)) == 0
    assert kruskal_rank(np.eye(3)) == 3
    assert kruskal_rank(np.ones((2, 5))) == 1


def test_kruskal_rank_budget(sm_II):
    with pytest.raises(BudgetExceeded):
        kruskal_rank(sm_II.B, budget=1000)


def test_kruskal_rank_threaded_matches(sm_I, sm_II):
    assert kruskal_rank(sm_I.B, workers=4) == 7
    assert kruskal_rank(sm_II.B, workers=4) == 8


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 8), st.integers(0, 4), st.integers(0, 2**31))
def test_kruskal_rank_agrees_with_oracle_random(rows, cols, n_dup, seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    for _ in range(n_dup):
        i, j = rng.integers(0, cols, size=2)
        M[:, j] = 2.0 * M[:, i]
    kr = kruskal_rank(M)
    assert kr == kruskal_rank_oracle(M)
    assert kr <= numerical_rank(M)


@pytest.mark.parametrize("args, expected", [((1, 4, 8), 4), ((2, 4, 8), 8), ((3, 4, 8), 8)])
def test_max_krank_bound(args, expected):
    assert max_krank_bound(*args) == expected


@pytest.mark.parametrize("geom", [ARRAY_I, ARRAY_II], ids=lambda g: g.name)
def test_tradeoff_reference(geom):
    curve = tradeoff_curve(geom)
    assert curve.points == ((1, 4), (2, 8), (3, 8))
    assert curve.optimal_n_s == 2
    assert (curve.n_tx, curve.n_rx, curve.n_sigma) == (3, 4, 8)


def test_tradeoff_singleton():
    curve = tradeoff_curve(ArrayGeometry((0,), (0,)))
    assert curve.points == ((1, 1),) and curve.optimal_n_s == 1


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31))
def test_tradeoff_invariants(n_tx, n_rx, seed):
    geom = random_geometry(n_tx, n_rx, seed, contiguous=False)
    curve = tradeoff_curve(geom)
    ks = [k for _, k in curve.points]
    assert ks == sorted(ks)
    assert curve.optimal_n_s == -(-curve.n_sigma // n_rx)


def test_check_array_II_proof(grid16):
    from sumcoarray import proof_waveform

    c = redundancy_limited_check(ARRAY_II, grid16, proof_waveform())
    assert (c.applicable, c.lhs, c.cond_A, c.cond_W) == (True, True, True, True)


def test_check_array_I_proof(grid16):
    from sumcoarray import proof_waveform

    c = redundancy_limited_check(ARRAY_I, grid16, proof_waveform())
    assert c.applicable and not c.lhs and not c.cond_W and c.cond_A
    assert c.consistent and c.krank_B == 7 and c.rank_W == 7


def test_check_full_rank_waveform(grid16):
    c = redundancy_limited_check(ARRAY_II, grid16, WaveformMatrix(np.eye(3)))
    assert (c.applicable, c.lhs, c.cond_A, c.cond_W) == (True, True, True, True)


def brute_certificate(geom, n_s):
    """Independent enumeration over Rx subsets straight from Tx-Rx sums."""
    ca = sorted({t + r for t in geom.tx_positions for r in geom.rx_positions})
    hits = []
    for size in range(1, geom.n_rx + 1):
        for R in itertools.combinations(range(geom.n_rx), size):
            rx_in = {geom.rx_positions[m] for m in R}
            L = [
                p for p in ca
                if all(r in rx_in for t in geom.tx_positions for r in geom.rx_positions if t + r == p)
            ]
            if len(L) > n_s * size:
                hits.append((R, L))
    return hits


def test_certificate_array_I():
    cert = structural_certificate(redundancy_pattern(ARRAY_I), 2, ARRAY_I)
    assert cert.rx_subset == (3,) and cert.rx_positions == (5,)
    assert cert.coarray_positions == (5, 6, 7) and cert.n_s == 2
    assert brute_certificate(ARRAY_I, 2)[0] == ((3,), [5, 6, 7])


def test_no_certificate_array_II():
    assert structural_certificate(redundancy_pattern(ARRAY_II), 2, ARRAY_II) is None
    assert brute_certificate(ARRAY_II, 2) == []


def test_no_certificate_full_rank():
    assert structural_certificate(redundancy_pattern(ARRAY_I), 3) is None


def test_certificate_bad_rank():
    with pytest.raises(ValueError):
        structural_certificate(redundancy_pattern(ARRAY_I), 4)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31))
def test_certificate_agrees_with_brute_force(n_tx, n_rx, seed):
    geom = random_geometry(n_tx, n_rx, seed, contiguous=False)
    for n_s in range(1, n_tx + 1):
        cert = structural_certificate(redundancy_pattern(geom), n_s, geom)
        brute = brute_certificate(geom, n_s)
        if cert is None:
            assert brute == []
        else:
            assert (cert.rx_subset, list(cert.coarray_positions)) == brute[0]


def certified_instances():
    rng = np.random.default_rng(99)
    found = []
    while len(found) < 8:
        geom = random_geometry(int(rng.integers(2, 5)), int(rng.integers(2, 5)), rng)
        for n_s in range(1, geom.n_tx):
            cert = structural_certificate(redundancy_pattern(geom), n_s, geom)
            if cert is not None and n_s * geom.n_rx >= sum_coarray(geom).size:
                found.append((geom, n_s))
                break
    return [(ARRAY_I, 2)] + found


@pytest.mark.parametrize("geom, n_s", certified_instances())
def test_certificate_soundness(geom, n_s):
    ups = redundancy_pattern(geom)
    rng = np.random.default_rng(5)
    for _ in range(50):
        S = random_waveform(n_s, geom.n_tx, T=n_s + int(rng.integers(0, 3)), seed=rng)
        assert numerical_rank(effective_pattern(S, ups)) < ups.coarray.size


def test_waveform_search_examples():
    ok = waveform_search(ARRAY_II, 2, trials=1, seed=0)
    assert ok.success and ok.trials_used == 1
    assert numerical_rank(effective_pattern(ok.waveform, redundancy_pattern(ARRAY_II))) == 8
    assert waveform_rank(ok.waveform) == 2
    bad = waveform_search(ARRAY_I, 2, trials=5)
    assert not bad.success and bad.certificate is not None and bad.trials_used == 0
    geom = ArrayGeometry((0, 1), (0, 2))
    assert waveform_search(geom, 2, trials=1).trials_used == 1


@pytest.mark.slow
def test_bound_conformance_random():
    rng = np.random.default_rng(31)
    for _ in range(200):
        n_tx, n_rx = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        geom = random_geometry(n_tx, n_rx, rng, contiguous=bool(rng.random() < 0.5))
        V = int(rng.integers(1, 15))
        n_s = int(rng.integers(1, n_tx + 1))
        S = random_waveform(n_s, n_tx, T=n_s + int(rng.integers(0, 2)), seed=rng)
        B = sensing_matrix(S, geom, random_grid(V, seed=int(rng.integers(1 << 31)))).B
        kr = kruskal_rank(B)
        assert kr <= max_krank_bound(waveform_rank(S), n_rx, sum_coarray(geom).size)
        assert kr <= numerical_rank(B)
