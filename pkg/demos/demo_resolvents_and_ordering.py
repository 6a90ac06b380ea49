"""
Bounds for eliminating unknowns and changing main variables
===========================================================

Two applications of canons with lower bounds.  The first bounds the orders
reached when all unknowns but one are eliminated; the second bounds how
many derivatives of each equation are needed when another derivative of
the same unknown becomes the main one.
"""

from jacobibound.analysis import (
    jacobi_bound,
    ordering_change_bound,
    profile,
    resolvent_bounds,
    resolvent_identity_check,
)
from jacobibound.canon import minimal_canon
from jacobibound.diffpoly import parse_system
from jacobibound.trop_core import format_matrix, subdet

# %%
# A rotation-like system: each equation is first order in its own unknown
# and involves the others without derivatives.
rotation = parse_system("x1' - x2 + x3\n-x1 + x2' - x3\n-x1 + x2 + x3'\n")
A = profile(rotation).order_matrix
print("order matrix:\n" + format_matrix(A), end="")
print("bound:", jacobi_bound(A))

# %%
# To eliminate x2 and x3 in favour of x1, raise the equation owning x1 so
# that x1's top derivative reaches the bound, then take the smallest canon
# above that.  Here it coincides with the tropical determinants of the
# minors obtained by deleting row i and the x1 column.
res = resolvent_bounds(A, 0)
print("canon:", res.ell)
print("minor determinants:", tuple(subdet(A, [i], [0]) for i in range(3)))
print("rows that cannot reach the x1 row:", sorted(res.unreachable))

# %%
# The minors obey an exact balance: summing them equals summing, over the
# other columns, the best minor-plus-entry in that column.
print("balance identity holds:", resolvent_identity_check(A, 0))

# %%
# A chain where only the first two equations involve x1 and x2: the
# remaining rows never feed back, they keep their minimal-canon values, and
# the determinant on them is what they contribute on their own.
chain = parse_system("x1'' - x2\n-x1 + x2'\n-x1' + x3\n-x3''' + x4\n-x4' + x5\n")
C = profile(chain).order_matrix
res = resolvent_bounds(C, 0)
print("chain canon:", res.ell, " minimal canon:", minimal_canon(C))
print("reachable rows:", sorted(i + 1 for i in res.reachable), " unreachable:", sorted(i + 1 for i in res.unreachable))
print("determinant on the unreachable rows:", res.unreachable_det)

# %%
# Ordering change: each equation currently has main derivative x_i^(e_i)
# on the diagonal; we want x_i^(f_i) instead.  The answer is the smallest
# ℓ >= max(f - e, 0) keeping every diagonal entry a column maximum.
system = parse_system("x1'' + x2 + x3' + x4\nx2'''\nx3'' - x4'\nx4''\n")
B = profile(system).order_matrix
e = [B[i, i] for i in range(4)]
f = [5, 0, 2, 2]
print("order matrix:\n" + format_matrix(B), end="")
print("e =", e, " f =", f, " -> differentiate equation i at most", ordering_change_bound(B, e, f), "times")
