"""
Matchings, line covers and shortest paths
=========================================

Canon questions reduce to two classical graph problems: bipartite matching
on the pattern of column maxima, and single-target shortest paths on a
graph built from a matrix whose diagonal is a maximal transversal.
"""

import numpy as np

from jacobibound.graph_bridge import (
    canon_to_graph,
    format_graph,
    matrix_to_graph,
    permute_to_witness,
    shortest_paths,
)
from jacobibound.canon import minimal_canon
from jacobibound.errors import NegativeCycle
from jacobibound.matching import extremal_cover, koenig, match_hk, match_naive, maxima_pattern

# %%
# A 0/1 matrix is a bipartite graph: rows on one side, columns on the other,
# a one for every edge.  Hopcroft-Karp grows the matching by shortest
# augmenting paths, one batch per phase.
B = [[0, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 1], [1, 0, 0, 0]]
res = match_hk(B)
print("maximum matching size:", res.size)
print("pairs (row, column):", res.pairs())
print("steps (greedy start + phases):", res.steps, "; augmenting path lengths", res.phase_lengths)
print("one-path-at-a-time search agrees:", match_naive(B).size == res.size)

# %%
# König: the fewest rows and columns that contain every one has exactly as
# many lines as a maximum matching.  Among these minimum line covers there
# is one using as many rows as possible, and one using as many columns.
cross = [[1, 1, 1, 1, 1], [1, 1, 1, 1, 1], [1, 1, 0, 0, 0], [1, 0, 0, 0, 0], [1, 0, 0, 0, 0]]
res, rows, cols = koenig(cross)
print("matching size", res.size, "; minimum line cover: rows", sorted(rows), "cols", sorted(cols))
for mode in ("row_maximal", "col_maximal"):
    r, c = extremal_cover(cross, mode)
    print(f"{mode}: rows {sorted(r)} cols {sorted(c)}")

# %%
# Large sparse instances are quick.
rng = np.random.default_rng(0)
big = rng.random((1000, 1000)) < 0.01
print("random 1000x1000 at 1% density: matching of size", match_hk(big).size)

# %%
# The positions holding column maxima of A + ℓ form the pattern on which a
# canon needs a perfect matching.
A = [[3, 4, 2], [1, 3, 4], [1, 1, 3]]
lam = minimal_canon(A)
print("minimal canon", lam, "-> maxima pattern")
print(maxima_pattern([[a + l for a in row] for row, l in zip(A, lam)]).astype(int))

# %%
# Put a maximal transversal on the diagonal, then build the graph with edge
# weights a_{i,i} - a_{j,i} from row vertex i to row vertex j and zero-weight
# edges to a sink 0.  Minus the distances to the sink are the minimal canon.
Ap, perm = permute_to_witness(A)
G = matrix_to_graph(Ap)
print("column order putting a maximal transversal on the diagonal:", perm)
print(format_graph(G), end="")
dist = shortest_paths(G).dist
print("minus the sink distances:", tuple(-d for d in dist[1:]), "== minimal canon", minimal_canon(Ap))

# %%
# For a canon ℓ, the reweighted graph has only non-negative edges, so
# Dijkstra applies; ℓ minus the distances gives back the minimal canon.
ell = (2, 3, 4)
H = canon_to_graph(A, ell)
d = shortest_paths(H).dist
print("from the canon", ell, "down to", tuple(x - y for x, y in zip(ell, d[1:])))

# %%
# If the diagonal is not a maximal transversal, a negative cycle proves it.
try:
    shortest_paths(matrix_to_graph([[1, 5], [5, 1]]))
except NegativeCycle as exc:
    print("negative cycle through vertices", exc.cycle)
