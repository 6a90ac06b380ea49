import math

import numpy as np
import pytest
from hypothesis import given, settings

import oracles
from conftest import bit_matrices
from jacobibound.matching import as_bitmatrix, extremal_cover, koenig, match_hk, match_naive, maxima_pattern
from jacobibound.trop_core import NEG_INF, OrderMatrix


def covers_all_ones(B, rows, cols) -> bool:
    return all(i in rows or j in cols for i, r in enumerate(B) for j, x in enumerate(r) if x)


def is_matching(B, matching) -> bool:
    cols = [j for j in matching if j is not None]
    return len(cols) == len(set(cols)) and all(B[i][j] for i, j in enumerate(matching) if j is not None)


STAGED = [[0, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 1], [1, 0, 0, 0]]
LOOPED = [[1, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 1], [0, 0, 1, 0]]


@pytest.mark.parametrize("B", [STAGED, LOOPED], ids=["staged", "looped"])
@pytest.mark.parametrize("algo", [match_hk, match_naive], ids=["hk", "naive"])
def test_four_by_four_examples_are_perfect(B, algo):
    res = algo(B)
    assert res.size == 4
    assert is_matching(B, res.matching)


def test_phase_lengths_increase():
    # a chain where greedy picks badly and long augmenting paths are needed
    n = 6
    B = np.zeros((n, n), dtype=bool)
    for i in range(n):
        B[i, i] = True
        if i + 1 < n:
            B[i, i + 1] = True
    res = match_hk(B[::-1, ::-1].copy())
    assert res.size == n
    assert list(res.phase_lengths) == sorted(set(res.phase_lengths))


def test_empty_rows_and_columns():
    res = match_hk([[0, 0], [0, 1]])
    assert res.size == 1
    assert res.matching == (None, 1)
    assert res.pairs() == [(1, 1)]


def test_bitmatrix_validation():
    with pytest.raises(ValueError):
        as_bitmatrix([[0, 2]])
    with pytest.raises(ValueError):
        as_bitmatrix([1, 0])
    with pytest.raises(ValueError):
        as_bitmatrix(OrderMatrix([[1, NEG_INF]]))
    assert as_bitmatrix(OrderMatrix([[1, 0]])).tolist() == [[True, False]]


def test_maxima_pattern_ignores_neg_inf():
    A = OrderMatrix([[1, NEG_INF], [1, 0]])
    assert maxima_pattern(A).tolist() == [[True, False], [True, True]]


@settings(max_examples=300)
@given(bit_matrices(max_s=6, max_n=8))
def test_algorithms_agree_with_enumeration(B):
    expected = oracles.max_matching_size(B)
    hk, naive = match_hk(B), match_naive(B)
    assert hk.size == naive.size == expected
    assert is_matching(B, hk.matching) and is_matching(B, naive.matching)


@settings(max_examples=300)
@given(bit_matrices(max_s=7, max_n=7))
def test_phase_count_bound(B):
    res = match_hk(B)
    assert res.steps <= 2 * math.isqrt(res.size)


@settings(max_examples=200)
@given(bit_matrices(max_s=6, max_n=7))
def test_koenig_duality(B):
    res, rows, cols = koenig(B)
    assert covers_all_ones(B, rows, cols)
    assert len(rows) + len(cols) == res.size == oracles.min_line_cover_size(B)


class TestExtremalCovers:
    CROSS = [[1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [1, 1, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0]]

    def test_row_and_column_maximal(self):
        assert extremal_cover(self.CROSS, "row_maximal") == ({0, 1, 2}, {0})
        assert extremal_cover(self.CROSS, "col_maximal") == ({0, 1}, {0, 1})

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            extremal_cover(self.CROSS, "diagonal")

    @settings(max_examples=120)
    @given(bit_matrices(max_s=5, max_n=5))
    def test_extremal_covers_are_minimum_and_extremal(self, B):
        size = oracles.min_line_cover_size(B)
        for mode in ("row_maximal", "col_maximal"):
            rows, cols = extremal_cover(B, mode)
            assert covers_all_ones(B, rows, cols)
            assert len(rows) + len(cols) == size
        # every minimum cover has its rows (resp. columns) inside the extremal one
        rows_max, _ = extremal_cover(B, "row_maximal")
        _, cols_max = extremal_cover(B, "col_maximal")
        s, n = len(B), len(B[0])
        for mask in range(1 << s):
            R = {i for i in range(s) if mask >> i & 1}
            C = {j for i in range(s) if i not in R for j in range(n) if B[i][j]}
            if len(R) + len(C) == size:
                assert R <= rows_max
                assert C <= cols_max
