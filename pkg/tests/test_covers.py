import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import oracles
from conftest import order_matrices
from jacobibound.canon import (
    Cover,
    canon_of_cover,
    constrained_canon,
    cover_of_canon,
    cover_shift,
    explore_covers,
    is_cover,
    is_minimal_cover,
    jacobi_cover,
    minimal_canon,
    shift_bound,
)
from jacobibound.errors import NotACanon, NotACover, NotMinimal, ShiftTooLarge
from jacobibound.trop_core import NEG_INF, OrderMatrix, tropdet

CROSS = [[1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [1, 1, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0]]
BOUND7 = [[5, 2, 3], [NEG_INF, 1, NEG_INF], [3, NEG_INF, 1]]


def bidiagonal(n):
    return [[1 if j in (i, i + 1) else 0 for j in range(n)] for i in range(n)]


def tridiagonal(n):
    return [[1 if abs(i - j) <= 1 else 0 for j in range(n)] for i in range(n)]


class TestJacobiCover:
    def test_bound7(self):
        assert jacobi_cover(BOUND7) == Cover((2, 1, 0), (3, 0, 1))

    def test_transpose_is_not_the_swapped_cover(self):
        A = OrderMatrix(CROSS)
        assert jacobi_cover(A) == Cover((1, 1, 1, 0, 0), (1, 0, 0, 0, 0))
        assert jacobi_cover(A.T) == Cover((1, 1, 0, 0, 0), (1, 1, 0, 0, 0))

    def test_additive_matrix(self):
        mu, nu = (0, 2, 1), (3, 0, 5)
        A = [[m + v for v in nu] for m in mu]
        assert jacobi_cover(A) == Cover(mu, nu)

    def test_requires_square(self):
        with pytest.raises(ValueError):
            cover_of_canon([[1, 2]], (0,))

    def test_requires_canon(self):
        with pytest.raises(NotACanon):
            cover_of_canon([[3, 4, 2], [1, 3, 4], [1, 1, 3]], (0, 0, 0))

    @settings(max_examples=200, deadline=None)
    @given(order_matrices(max_s=5, max_n=5, square=True))
    def test_is_minimal(self, A):
        assume(tropdet(A)[0] is not NEG_INF)
        cov = jacobi_cover(A)
        assert is_cover(A, cov)
        assert cov.total == oracles.tropdet(A)
        assert min(cov.mu) == 0


class TestCanonCoverCorrespondence:
    @settings(max_examples=150, deadline=None)
    @given(order_matrices(max_s=5, max_n=5, square=True), st.data())
    def test_roundtrip(self, A, data):
        assume(tropdet(A)[0] is not NEG_INF)
        c = data.draw(st.lists(st.integers(0, 4), min_size=A.s, max_size=A.s))
        ell = constrained_canon(A, c)
        cov = cover_of_canon(A, ell)
        assert is_minimal_cover(A, cov)
        low = min(ell)
        assert canon_of_cover(A, cov) == tuple(x - low for x in ell)

    def test_rejects_non_cover(self):
        with pytest.raises(NotACover):
            canon_of_cover(BOUND7, Cover((0, 0, 0), (0, 0, 0)))

    def test_rejects_non_minimal_cover(self):
        with pytest.raises(NotMinimal):
            canon_of_cover(BOUND7, Cover((3, 1, 1), (3, 0, 1)))


class TestShifts:
    def test_shift_on_bidiagonal(self):
        A = bidiagonal(4)
        start = Cover((1, 1, 1, 1), (0, 0, 0, 0))
        assert shift_bound(A, start, 3, "row") is None  # nothing blocks the last row
        moved = cover_shift(A, start, 3, 1, "col")
        assert is_minimal_cover(A, moved)

    def test_zero_shift_is_identity(self):
        cov = jacobi_cover(BOUND7)
        assert cover_shift(BOUND7, cov, 0, 0) == cov

    def test_shift_beyond_bound(self):
        A = [[2, 1], [1, 2]]
        cov = jacobi_cover(A)
        bound = shift_bound(A, cov, 0, "row")
        assert bound is not None
        with pytest.raises(ShiftTooLarge):
            cover_shift(A, cov, 0, bound + 1, "row")

    def test_negative_shift(self):
        with pytest.raises(ShiftTooLarge):
            cover_shift(BOUND7, jacobi_cover(BOUND7), 0, -1)

    def test_requires_minimal_cover(self):
        with pytest.raises(NotMinimal):
            cover_shift(BOUND7, Cover((5, 5, 5), (5, 5, 5)), 0, 1)

    @settings(max_examples=100, deadline=None)
    @given(order_matrices(max_s=4, max_n=4, square=True), st.data())
    def test_admissible_shifts_stay_minimal(self, A, data):
        assume(tropdet(A)[0] is not NEG_INF)
        cov = jacobi_cover(A)
        mode = data.draw(st.sampled_from(["row", "col"]))
        pivot = data.draw(st.integers(0, A.n - 1))
        bound = shift_bound(A, cov, pivot, mode)
        e = data.draw(st.integers(0, 5 if bound is None else bound))
        assert is_minimal_cover(A, cover_shift(A, cov, pivot, e, mode))


class TestExploreCovers:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_bidiagonal_has_n_plus_one(self, n):
        found = explore_covers(bidiagonal(n))
        assert len(found) == n + 1
        expected = {
            (tuple(1 if i < k else 0 for i in range(n)), tuple(0 if j < k else 1 for j in range(n)))
            for k in range(n + 1)
        }
        assert {(c.mu, c.nu) for c in found} == expected

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_tridiagonal_has_two(self, n):
        found = explore_covers(tridiagonal(n))
        assert {(c.mu, c.nu) for c in found} == {((1,) * n, (0,) * n), ((0,) * n, (1,) * n)}

    @settings(max_examples=80, deadline=None)
    @given(order_matrices(max_s=3, max_n=3, square=True, lo=0, hi=3, neg_inf=False))
    def test_finds_every_nonnegative_minimal_cover(self, A):
        found = {(c.mu, c.nu) for c in explore_covers(A)}
        assert found == oracles.nonnegative_minimal_covers(A, 3)

    def test_small_step_cap_still_yields_minimal_covers(self):
        A = [[2, 1], [1, 2]]
        for cov in explore_covers(A, max_step=1):
            assert is_minimal_cover(A, cov) and cov.is_nonnegative()


def test_bidiagonal_minimal_canon_is_zero():
    assert minimal_canon(bidiagonal(5)) == (0,) * 5
