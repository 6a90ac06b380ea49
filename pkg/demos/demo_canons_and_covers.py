"""
Tropical determinants, minimal canons and covers
================================================

A walk through the combinatorial core: the maximal transversal sum of a
matrix, the smallest row shifts that make such a transversal consist of
column maxima, and the dual row/column potentials that cover the matrix.
"""

from jacobibound.canon import (
    canon_from_maxima,
    cover_of_canon,
    cover_shift,
    explore_covers,
    is_canon,
    jacobi_cover,
    minimal_canon,
    minimal_canon_with_maxima,
    shift_bound,
)
from jacobibound.trop_core import NEG_INF, OrderMatrix, square_complete, tropdet

# %%
# The tropical determinant is the largest sum a_{1,σ(1)} + ... + a_{n,σ(n)}
# over all permutations σ; -inf entries forbid a position.
A = OrderMatrix([[3, 4, 2], [1, 3, 4], [1, 1, 3]])
value, witness = tropdet(A)
print("matrix:\n" + str(A))
print("tropical determinant:", value, "reached by columns", witness)

# %%
# A canon ℓ is a vector of non-negative row shifts such that A + ℓ has a
# transversal made only of column maxima.  The minimal canon is the
# componentwise smallest one; it is unique.
lam, maxima = minimal_canon_with_maxima(A)
print("minimal canon:", lam, "with column maxima at", maxima)
print("(0,0,0) is a canon?", is_canon(A, (0, 0, 0)))

# %%
# Knowing which transversal must be maximal is enough to recover the
# minimal canon directly by shortest-path relaxation.
print("from the diagonal:", canon_from_maxima(A, [0, 1, 2]))

# %%
# Staircases show how many raising rounds the engine may need.
staircase = OrderMatrix([[9 - i * j for j in range(4)] for i in range(4)])
stats = {}
print("staircase canon:", minimal_canon(staircase, stats=stats), "after", stats.get("raises"), "raises")

# %%
# Wide matrices (more unknowns than equations) are handled directly, or via
# the square completion which pads with zero rows.
wide = OrderMatrix([[1, 0, 3, 4], [0, 1, 2, 0]])
print("wide tropdet:", tropdet(wide)[0], " wide canon:", minimal_canon(wide))
print("completed canon:", minimal_canon(square_complete(wide)))

# %%
# Covers: integers μ_i, ν_j with a_{i,j} <= μ_i + ν_j everywhere.  The least
# possible total Σμ + Σν equals the tropical determinant, and every canon
# yields such a minimal cover.
cover = jacobi_cover(A)
print("canonical cover: mu =", cover.mu, " nu =", cover.nu, " total =", cover.total)
assert cover.total == value
print("cover of a larger canon:", cover_of_canon(A, (1, 2, 3)))

# %%
# Minimal covers are not unique.  Raising the potential of one row (and
# lowering the columns it is tight on) moves between them, as long as the
# shift stays within the computed bound.
bidiagonal = [[1 if j in (i, i + 1) else 0 for j in range(4)] for i in range(4)]
start = jacobi_cover(bidiagonal)
print("bidiagonal start cover:", start)
print("largest admissible shift of row 2:", shift_bound(bidiagonal, start, 1, "row"))
print("after shifting row 2 by 1:", cover_shift(bidiagonal, start, 1, 1, "row"))

# %%
# Exploring all shifts enumerates the non-negative minimal covers: n+1 of
# them for the bidiagonal pattern, only two for the tridiagonal one.
tridiagonal = [[1 if abs(i - j) <= 1 else 0 for j in range(4)] for i in range(4)]
for name, M in (("bidiagonal", bidiagonal), ("tridiagonal", tridiagonal)):
    covers = explore_covers(M)
    print(f"{name}: {len(covers)} non-negative minimal covers")
    for c in covers:
        print("   mu =", c.mu, " nu =", c.nu)

# %%
# -inf entries make some positions unusable; if no transversal survives,
# the determinant itself is -inf.
print("blocked:", tropdet([[NEG_INF, NEG_INF], [1, 2]])[0])
