"""Canons as shortest-path problems.

For a square matrix whose diagonal is a maximal transversal family, build a
digraph on vertices ``0..n`` (vertex 0 is the sink, vertex ``i`` stands for
row ``i-1`` of the matrix):

* from a canon ℓ: w_{i,j} = a_{i,i} + ℓ_i − a_{j,i} − ℓ_j ≥ 0 and
  w_{i,0} = ℓ_i; then λ_i = ℓ_i − dist(i → 0);
* from the matrix alone: w_{i,j} = a_{i,i} − a_{j,i} and w_{i,0} = 0; then a
  negative cycle exists iff the diagonal is not maximal, and otherwise
  λ_i = −dist(i → 0).

Edges are only created where a_{j,i} is finite.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .canon import is_canon, minimal_canon_with_maxima, minimal_canon
from .errors import NegativeCycle, NotMaximalFamily
from .trop_core import NEG_INF, OrderMatrix, as_matrix, tropdet


@dataclass(frozen=True)
class WeightedDigraph:
    """Vertices ``0..n``; ``edges`` holds ``(source, target, weight)`` triples."""

    n: int
    edges: tuple

    def __post_init__(self):
        for u, v, w in self.edges:
            if not (0 <= u <= self.n and 0 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertices 0..{self.n}")
            if u == v == 0:
                raise ValueError("no self-loop on the sink")
            if not isinstance(w, (int, np.integer)):
                raise ValueError("edge weights must be integers")

    def weight_map(self) -> dict:
        return {(u, v): w for u, v, w in self.edges}

    def max_abs_weight(self) -> int:
        return max((abs(w) for _, _, w in self.edges), default=0)


def _require_square_diag(A: OrderMatrix) -> None:
    if not A.is_square:
        raise ValueError("graph constructions need a square matrix")
    if not A.finite.diagonal().all():
        raise NotMaximalFamily("diagonal contains -inf")


def canon_to_graph(A, ell) -> WeightedDigraph:
    """Graph with w_{i,j} = a_{i,i} + ℓ_i − a_{j,i} − ℓ_j and w_{i,0} = ℓ_i."""
    A = as_matrix(A)
    _require_square_diag(A)
    n = A.n
    ell = [int(x) for x in ell]
    if not is_canon(A, ell):
        raise ValueError("increments do not form a canon")
    edges = []
    for i in range(n):
        top = int(A.values[i, i]) + ell[i]
        for j in range(n):
            if j != i and A.finite[j, i]:
                w = top - int(A.values[j, i]) - ell[j]
                if w < 0:
                    raise NotMaximalFamily("diagonal is not maximal in A + ell")
                edges.append((i + 1, j + 1, w))
        edges.append((i + 1, 0, ell[i]))
    return WeightedDigraph(n, tuple(edges))


def matrix_to_graph(A) -> WeightedDigraph:
    """Graph with w_{i,j} = a_{i,i} − a_{j,i} and w_{i,0} = 0."""
    A = as_matrix(A)
    _require_square_diag(A)
    n = A.n
    edges = []
    for i in range(n):
        for j in range(n):
            if j != i and A.finite[j, i]:
                edges.append((i + 1, j + 1, int(A.values[i, i]) - int(A.values[j, i])))
        edges.append((i + 1, 0, 0))
    return WeightedDigraph(n, tuple(edges))


def _reverse_constant(G: WeightedDigraph) -> int:
    return max(0, 2 * G.max_abs_weight())


def graph_to_canon(G: WeightedDigraph) -> tuple[OrderMatrix, tuple]:
    """Matrix and canon whose :func:`canon_to_graph` is ``G``.

    Needs non-negative weights and an edge i -> 0 for every row vertex.
    """
    C = _reverse_constant(G)
    w = G.weight_map()
    n = G.n
    ell = []
    for i in range(1, n + 1):
        if (i, 0) not in w:
            raise ValueError(f"vertex {i} has no edge to the sink")
        ell.append(w[(i, 0)])
    if any(x < 0 for x in w.values()):
        raise ValueError("canon graphs have non-negative weights")
    rows = [[NEG_INF] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = C
    for (u, v), wt in w.items():
        if u >= 1 and v >= 1 and u != v:
            i, j = u - 1, v - 1
            rows[j][i] = C - wt + ell[i] - ell[j]
    return OrderMatrix(rows), tuple(ell)


def graph_to_matrix(G: WeightedDigraph) -> OrderMatrix:
    """Matrix whose :func:`matrix_to_graph` is ``G`` (a_{i,i} = C, a_{j,i} = C − w_{i,j})."""
    C = _reverse_constant(G)
    n = G.n
    rows = [[NEG_INF] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = C
    for u, v, wt in G.edges:
        if u >= 1 and v >= 1 and u != v:
            rows[v - 1][u - 1] = C - wt
    return OrderMatrix(rows)


# ---------------------------------------------------------------------------
# shortest paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShortestPaths:
    """Distances to ``target``; ``None`` marks vertices that cannot reach it.

    ``next_hop[v]`` is the successor of ``v`` on a shortest path.
    """

    target: int
    dist: tuple
    next_hop: tuple


def shortest_paths(G: WeightedDigraph, target: int = 0) -> ShortestPaths:
    """Single-target shortest distances.

    Dijkstra is used when every weight is non-negative; otherwise
    Bellman–Ford, raising :class:`NegativeCycle` with a witness cycle.
    """
    nv = G.n + 1
    incoming: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for u, v, w in G.edges:
        incoming[v].append((u, int(w)))
    if all(w >= 0 for _, _, w in G.edges):
        return _dijkstra(incoming, nv, target)
    return _bellman_ford(G, nv, target)


def _dijkstra(incoming, nv: int, target: int) -> ShortestPaths:
    dist: list[int | None] = [None] * nv
    nxt: list[int | None] = [None] * nv
    dist[target] = 0
    heap = [(0, target)]
    done = [False] * nv
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for u, w in incoming[v]:
            nd = d + w
            if dist[u] is None or nd < dist[u]:
                dist[u], nxt[u] = nd, v
                heapq.heappush(heap, (nd, u))
    return ShortestPaths(target, tuple(dist), tuple(nxt))


def _bellman_ford(G: WeightedDigraph, nv: int, target: int) -> ShortestPaths:
    dist: list[int | None] = [None] * nv
    nxt: list[int | None] = [None] * nv
    dist[target] = 0
    edges = [(u, v, int(w)) for u, v, w in G.edges]
    changed_vertex = None
    for _ in range(nv):
        changed_vertex = None
        for u, v, w in edges:
            if dist[v] is not None and (dist[u] is None or dist[v] + w < dist[u]):
                dist[u], nxt[u] = dist[v] + w, v
                changed_vertex = u
        if changed_vertex is None:
            return ShortestPaths(target, tuple(dist), tuple(nxt))
    # still relaxing after |V| rounds: follow successors to land on the cycle
    v = changed_vertex
    for _ in range(nv):
        v = nxt[v]
    cycle = [v]
    u = nxt[v]
    while u != v:
        cycle.append(u)
        u = nxt[u]
    cycle.append(v)
    raise NegativeCycle(cycle)


def cycle_weight(G: WeightedDigraph, cycle) -> int:
    w = G.weight_map()
    return sum(w[(a, b)] for a, b in zip(cycle, cycle[1:]))


# ---------------------------------------------------------------------------
# self-test
# ---------------------------------------------------------------------------


def permute_to_witness(A) -> tuple[OrderMatrix, tuple]:
    """Permute columns so the diagonal is a maximal transversal family.

    Returns ``(A', perm)`` with column ``j`` of ``A'`` equal to column
    ``perm[j]`` of ``A``; row increments (canons) are unchanged.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("square matrix expected")
    _, sigma = minimal_canon_with_maxima(A)
    perm = [0] * A.n
    for i, j in enumerate(sigma):
        perm[i] = j
    return A.permute_cols(perm), tuple(perm)


def graph_roundtrip_check(A) -> bool:
    """True iff the minimal canon equals minus the sink distances of :func:`matrix_to_graph`."""
    A = as_matrix(A)
    lam = minimal_canon(A)
    G = matrix_to_graph(A)
    try:
        sp = shortest_paths(G, 0)
    except NegativeCycle:
        return False
    return all(sp.dist[i + 1] is not None and -sp.dist[i + 1] == lam[i] for i in range(A.n))


def diagonal_is_maximal(A) -> bool:
    A = as_matrix(A)
    if not A.finite.diagonal().all():
        return False
    return tropdet(A)[0] == int(np.trace(A.values))


# ---------------------------------------------------------------------------
# edge-list text format
# ---------------------------------------------------------------------------


def format_graph(G: WeightedDigraph) -> str:
    lines = [f"# vertices 0..{G.n}, 0 is the sink"]
    lines += [f"{u} {v} {w}" for u, v, w in G.edges]
    return "\n".join(lines) + "\n"


def parse_graph(text: str, n: int | None = None) -> WeightedDigraph:
    edges = []
    top = 0
    header_n = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("# vertices 0.."):
            try:
                header_n = int(stripped.split("..", 1)[1].split(",", 1)[0])
            except ValueError:
                pass
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 3:
            raise ValueError(f"line {lineno}: expected 'from to weight'")
        try:
            u, v, w = (int(x) for x in body)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: non-integer field") from exc
        edges.append((u, v, w))
        top = max(top, u, v)
    if n is None:
        n = header_n if header_n is not None else top
    return WeightedDigraph(n, tuple(edges))
