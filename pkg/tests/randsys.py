"""Random order matrices and differential systems realising them."""

from __future__ import annotations

import random

from jacobibound.diffpoly import DiffPoly
from jacobibound.trop_core import NEG_INF, OrderMatrix


def random_order_matrix(rng: random.Random, s: int, n: int, lo: int = 0, hi: int = 3, neg_inf: float = 0.3) -> OrderMatrix:
    """Entries uniform in lo..hi, each replaced by -inf with probability ``neg_inf``.

    Every column keeps at least one finite entry so that the system mentions
    every unknown.
    """
    rows = [[NEG_INF if rng.random() < neg_inf else rng.randint(lo, hi) for _ in range(n)] for _ in range(s)]
    for j in range(n):
        if all(rows[i][j] is NEG_INF for i in range(s)):
            rows[rng.randrange(s)][j] = rng.randint(lo, hi)
    return OrderMatrix(rows)


COEFFS = (-3, -2, -1, 1, 2, 3)


def _coeff(rng: random.Random, coeffs=COEFFS) -> int:
    return rng.choice(coeffs)


def linear_system(A: OrderMatrix, rng: random.Random, dense: bool = False, coeffs=COEFFS) -> list[DiffPoly]:
    """Constant-coefficient linear system whose order matrix is exactly ``A``.

    Each finite a_{i,j} contributes c·x_j^(a_{i,j}) with c drawn from
    ``coeffs``; lower derivatives are added at random, or all of them with
    ``dense``.  Small coefficient sets such as ``(1,)`` make singular leading
    parts frequent.
    """
    system = []
    for i in range(A.s):
        p = DiffPoly()
        for j in range(A.n):
            a = A[i, j]
            if a is NEG_INF:
                continue
            p = p + _coeff(rng, coeffs) * DiffPoly.var(j + 1, a)
            for k in range(a):
                if dense or rng.random() < 0.3:
                    p = p + _coeff(rng, coeffs) * DiffPoly.var(j + 1, k)
        system.append(p)
    return system


def polynomial_system(A: OrderMatrix, rng: random.Random) -> list[DiffPoly]:
    """Non-linear system with order matrix ``A``: linear part plus random products of lower derivatives."""
    system = linear_system(A, rng)
    out = []
    for i, p in enumerate(system):
        finite = [(j, A[i, j]) for j in range(A.n) if A[i, j] is not NEG_INF]
        for _ in range(rng.randint(0, 2)):
            (j1, a1), (j2, a2) = rng.choice(finite), rng.choice(finite)
            p = p + _coeff(rng) * DiffPoly.var(j1 + 1, rng.randint(0, a1)) * DiffPoly.var(j2 + 1, rng.randint(0, a2))
        out.append(p)
    return out
