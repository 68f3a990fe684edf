import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumcoarray import (
    ARRAY_I,
    ARRAY_II,
    ArrayGeometry,
    is_contiguous,
    is_redundant,
    random_geometry,
    redundancy_pattern,
    sum_coarray,
)
from sumcoarray.geometry import SumCoarray

# 1-based column of the single 1 in each row of the two printed 12x8 patterns
PRINTED_I = [1, 2, 3, 6, 2, 3, 4, 7, 3, 4, 5, 8]
PRINTED_II = [1, 2, 4, 6, 2, 3, 5, 7, 3, 4, 6, 8]


def printed(cols):
    m = np.zeros((12, 8), dtype=int)
    for n, c in enumerate(cols):
        m[n, c - 1] = 1
    return m


positions = st.lists(st.integers(0, 20), min_size=0, max_size=5).map(lambda xs: [0] + xs)
geometries = st.builds(ArrayGeometry, positions, positions)


@pytest.mark.parametrize(
    "tx, rx, expected",
    [
        ((0, 1, 2), (0, 1, 2, 5), tuple(range(8))),
        ((0,), (0,), (0,)),
        ((0, 1, 2), (0, 1, 3, 5), tuple(range(8))),
    ],
)
def test_sum_coarray_examples(tx, rx, expected):
    ca = sum_coarray(ArrayGeometry(tx, rx))
    assert ca.positions == expected
    assert ca.size == len(expected)


def test_printed_patterns_match():
    assert np.array_equal(redundancy_pattern(ARRAY_I).matrix, printed(PRINTED_I))
    assert np.array_equal(redundancy_pattern(ARRAY_II).matrix, printed(PRINTED_II))


def test_pattern_spot_entries():
    ups_I = redundancy_pattern(ARRAY_I).matrix
    ups_II = redundancy_pattern(ARRAY_II).matrix
    # row 3 -> column 3, row 4 -> column 6 (1-based)
    assert ups_I[2, 2] == 1 and ups_I[3, 5] == 1
    assert ups_II[2, 3] == 1


def test_singleton_pattern():
    ups = redundancy_pattern(ArrayGeometry((0,), (0,)))
    assert ups.matrix.tolist() == [[1]]
    assert ups.row_pairing == [(0, 0)]


def test_row_pairing_is_tx_major():
    ups = redundancy_pattern(ARRAY_I)
    assert ups.row_pairing[:5] == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0)]
    assert ups.row_pairing[-1] == (2, 3)


def brute_multiplicities(geom):
    counts = {}
    for t, r in itertools.product(geom.tx_positions, geom.rx_positions):
        counts[t + r] = counts.get(t + r, 0) + 1
    return [counts[p] for p in sorted(counts)]


def test_multiplicities_against_enumeration():
    assert brute_multiplicities(ARRAY_I) == [1, 2, 3, 2, 1, 1, 1, 1]
    assert brute_multiplicities(ARRAY_II) == [1, 2, 2, 2, 1, 2, 1, 1]
    assert redundancy_pattern(ARRAY_I).multiplicities.tolist() == [1, 2, 3, 2, 1, 1, 1, 1]
    assert redundancy_pattern(ARRAY_II).multiplicities.tolist() == [1, 2, 2, 2, 1, 2, 1, 1]


@pytest.mark.parametrize(
    "ca, expected",
    [(SumCoarray(tuple(range(8))), True), (SumCoarray((0, 2)), False), (SumCoarray((0,)), True)],
)
def test_is_contiguous(ca, expected):
    assert is_contiguous(ca) is expected


def test_is_redundant():
    assert is_redundant(ARRAY_I)
    assert is_redundant(ARRAY_II)
    assert not is_redundant(ArrayGeometry((0,), (0, 1)))


def test_rx_support_of_last_columns():
    ups = redundancy_pattern(ARRAY_I)
    assert [ups.rx_support(c) for c in (5, 6, 7)] == [frozenset({3})] * 3


@pytest.mark.parametrize(
    "tx, rx",
    [((1, 2), (0,)), ((0,), ()), ((0, -1), (0,)), ((0, 1.5), (0,)), ((0, True), (0,))],
)
def test_invalid_geometry_rejected(tx, rx):
    with pytest.raises(ValueError):
        ArrayGeometry(tx, rx)


def test_geometry_normalized():
    g = ArrayGeometry((2, 0, 1, 1), (5.0, 0))
    assert g.tx_positions == (0, 1, 2)
    assert g.rx_positions == (0, 5)


@given(geometries)
def test_pattern_invariants(geom):
    ups = redundancy_pattern(geom)
    m = ups.matrix
    assert m.shape == (geom.n_pairs, sum_coarray(geom).size)
    assert np.all(m.sum(axis=1) == 1)
    assert np.all(ups.multiplicities >= 1)
    assert m.sum() == geom.n_pairs
    gram = m.T.astype(int) @ m
    assert np.array_equal(gram, np.diag(ups.multiplicities))
    assert ups.multiplicities.tolist() == brute_multiplicities(geom)


@given(geometries)
def test_coarray_invariants(geom):
    ca = sum_coarray(geom)
    assert ca.positions[0] == 0
    assert ca.size <= geom.n_pairs
    assert list(ca.positions) == sorted(set(ca.positions))
    swapped = ArrayGeometry(geom.rx_positions, geom.tx_positions)
    assert sum_coarray(swapped) == ca
    assert is_redundant(geom) == (ca.size < geom.n_pairs)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31))
def test_random_geometry_contiguous(n_tx, n_rx, seed):
    g = random_geometry(n_tx, n_rx, seed)
    assert (g.n_tx, g.n_rx) == (n_tx, n_rx)
    assert is_contiguous(sum_coarray(g))
