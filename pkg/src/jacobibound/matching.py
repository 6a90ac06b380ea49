"""Maximum matchings in 0/1 matrices, König line covers and extremal covers.

Rows are matched to columns through entries equal to one.  In the row
oriented language used throughout the package, a row is *upper* when it is
matched and *lower* otherwise; a column is *left* when matched and *right*
otherwise.  An elementary path goes from an upper row ``i`` to any row
``i'`` having a one in the column matched with ``i``.

Scan order is row-major everywhere (smallest row first, then smallest
column), so results are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .trop_core import OrderMatrix, as_matrix

BitMatrix = np.ndarray  # 2-d boolean array


@dataclass(frozen=True)
class MatchResult:
    """A maximum matching: ``matching[i]`` is the column of row ``i`` or ``None``."""

    matching: tuple
    size: int
    phase_lengths: tuple = field(default=(), compare=False)
    greedy_size: int = field(default=0, compare=False)

    @property
    def steps(self) -> int:
        """Greedy step (when it matched anything) plus augmenting phases."""
        return (1 if self.greedy_size else 0) + len(self.phase_lengths)

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.matching) if j is not None]


def as_bitmatrix(A) -> BitMatrix:
    """Validate and convert to a boolean 2-d array."""
    if isinstance(A, OrderMatrix):
        if not A.finite.all() or not np.isin(A.values, (0, 1)).all():
            raise ValueError("0/1 matrix expected")
        return A.values.astype(bool)
    arr = np.asarray(A)
    if arr.ndim != 2:
        raise ValueError("0/1 matrix must be two dimensional")
    if arr.dtype != bool:
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("0/1 matrix expected")
        arr = arr.astype(bool)
    return arr


def maxima_pattern(A) -> BitMatrix:
    """Pattern of finite column-maximal entries of an order matrix."""
    A = as_matrix(A)
    masked = np.where(A.finite, A.values, np.iinfo(np.int64).min)
    colmax = masked.max(axis=0)
    return A.finite & (A.values == colmax[None, :])


def _adjacency(B: BitMatrix) -> tuple[list[list[int]], list[list[int]]]:
    rows = [np.flatnonzero(B[i]).tolist() for i in range(B.shape[0])]
    cols = [np.flatnonzero(B[:, j]).tolist() for j in range(B.shape[1])]
    return rows, cols


def _transpose_adj(rows_adj: list[list[int]], ncols: int) -> list[list[int]]:
    cols: list[list[int]] = [[] for _ in range(ncols)]
    for i, adj in enumerate(rows_adj):
        for j in adj:
            cols[j].append(i)
    return cols


# ---------------------------------------------------------------------------
# Hopcroft–Karp, row formulation
# ---------------------------------------------------------------------------


def _hk(rows_adj: list[list[int]], ncols: int):
    """Phase-structured maximum matching.

    Step 0 greedily takes lower-right ones.  Each phase then

    * Length: layers rows from ``L_0`` (upper rows owning a right one) along
      elementary paths until a layer contains a lower row;
    * Path: collects a maximal family of disjoint shortest paths;
    * Increase: augments along all of them.

    Returns ``(row_match, col_match, phase_lengths, greedy_size)``.
    """
    s = len(rows_adj)
    cols_adj = _transpose_adj(rows_adj, ncols)
    rm = [-1] * s
    cm = [-1] * ncols

    for i in range(s):  # step 0
        for j in rows_adj[i]:
            if cm[j] < 0:
                rm[i], cm[j] = j, i
                break
    greedy = sum(1 for j in rm if j >= 0)
    phases: list[int] = []

    while True:
        # Length
        layer = [-1] * s
        frontier = [i for i in range(s) if rm[i] >= 0 and any(cm[j] < 0 for j in rows_adj[i])]
        for i in frontier:
            layer[i] = 0
        gamma = -1
        depth = 0
        while frontier and gamma < 0:
            nxt = []
            for i in frontier:
                for k in cols_adj[rm[i]]:
                    if layer[k] < 0:
                        layer[k] = depth + 1
                        nxt.append(k)
                        if rm[k] < 0:
                            gamma = depth + 1
            frontier = nxt
            depth += 1
        if gamma < 0:
            break
        phases.append(gamma)

        # Path: maximal family of disjoint shortest paths (iterative DFS)
        used = [False] * s
        col_taken = [False] * ncols
        ptr = [0] * s
        paths = []
        for root in range(s):
            if layer[root] != 0 or used[root]:
                continue
            right = next((j for j in rows_adj[root] if cm[j] < 0 and not col_taken[j]), -1)
            if right < 0:
                continue
            stack = [root]
            used[root] = True
            while stack:
                i = stack[-1]
                if rm[i] < 0:  # reached a lower row at depth gamma
                    paths.append((right, list(stack)))
                    col_taken[right] = True
                    break
                adj = cols_adj[rm[i]]
                advanced = False
                while ptr[i] < len(adj):
                    k = adj[ptr[i]]
                    ptr[i] += 1
                    if not used[k] and layer[k] == layer[i] + 1 and (rm[k] >= 0 or layer[k] == gamma):
                        used[k] = True
                        stack.append(k)
                        advanced = True
                        break
                if not advanced:
                    stack.pop()

        # Increase
        for right, path in paths:
            for a in range(len(path) - 1, 0, -1):
                col = rm[path[a - 1]]
                rm[path[a]], cm[col] = col, path[a]
            rm[path[0]], cm[right] = right, path[0]
    return rm, cm, phases, greedy


def _max_matching(rows_adj: list[list[int]], ncols: int):
    """Size, row and column matches of a maximum matching (engine for other modules)."""
    rm, cm, _, _ = _hk(rows_adj, ncols)
    return sum(1 for j in rm if j >= 0), rm, cm


def _result(rm, phases=(), greedy=0) -> MatchResult:
    matching = tuple(j if j >= 0 else None for j in rm)
    return MatchResult(matching, sum(1 for j in rm if j >= 0), tuple(phases), greedy)


def match_hk(A) -> MatchResult:
    """Maximum matching by Hopcroft–Karp phases (Jacobi's formulation).

    ``phase_lengths`` records the minimal path length of every augmenting
    phase; these lengths strictly increase.
    """
    B = as_bitmatrix(A)
    rows_adj = [np.flatnonzero(B[i]).tolist() for i in range(B.shape[0])]
    rm, _, phases, greedy = _hk(rows_adj, B.shape[1])
    return _result(rm, phases, greedy)


# ---------------------------------------------------------------------------
# naive single-path augmentation
# ---------------------------------------------------------------------------


def _first_class(rows_adj, cols_adj, rm, cm):
    """BFS over elementary paths from upper rows owning a right one.

    Returns ``(parent, lower_row)``: ``parent`` maps every first-class row to
    its predecessor (``None`` for roots); ``lower_row`` is the first lower
    row reached, or ``None``.
    """
    parent: dict[int, int | None] = {}
    queue: deque[int] = deque()
    for i in range(len(rows_adj)):
        if rm[i] >= 0 and any(cm[j] < 0 for j in rows_adj[i]):
            parent[i] = None
            queue.append(i)
    while queue:
        i = queue.popleft()
        for k in cols_adj[rm[i]]:
            if k not in parent:
                parent[k] = i
                if rm[k] < 0:
                    return parent, k
                queue.append(k)
    return parent, None


def match_naive(A) -> MatchResult:
    """Maximum matching by repeated single-path augmentation.

    Lower-right ones are taken first; then the first class is grown along
    elementary paths and, as soon as it reaches a lower row, the matching is
    augmented along that one path.
    """
    B = as_bitmatrix(A)
    s, n = B.shape
    rows_adj, cols_adj = _adjacency(B)
    rm, cm = [-1] * s, [-1] * n
    while True:
        for i in range(s):
            if rm[i] < 0:
                for j in rows_adj[i]:
                    if cm[j] < 0:
                        rm[i], cm[j] = j, i
                        break
        parent, low = _first_class(rows_adj, cols_adj, rm, cm)
        if low is None:
            return _result(rm)
        cur = low
        while parent[cur] is not None:
            p = parent[cur]
            col = rm[p]
            rm[cur], cm[col] = col, cur
            cur = p
        right = next(j for j in rows_adj[cur] if cm[j] < 0)
        rm[cur], cm[right] = right, cur


# ---------------------------------------------------------------------------
# covers
# ---------------------------------------------------------------------------


def koenig(A) -> tuple[MatchResult, frozenset, frozenset]:
    """Maximum matching together with a minimum line cover of all ones.

    The cover is the first class (rows reachable from rows owning a right
    one) plus the columns matched to the remaining upper rows.
    """
    B = as_bitmatrix(A)
    rows_adj, cols_adj = _adjacency(B)
    rm, cm, phases, greedy = _hk(rows_adj, B.shape[1])
    parent, low = _first_class(rows_adj, cols_adj, rm, cm)
    assert low is None, "matching from Hopcroft–Karp is not maximum"
    first = frozenset(parent)
    cols = frozenset(rm[i] for i in range(len(rm)) if rm[i] >= 0 and i not in first)
    return _result(rm, phases, greedy), first, cols


def _row_maximal(B: BitMatrix) -> tuple[frozenset, frozenset]:
    from .canon import minimize_canon  # local import: canon uses this module
    from .trop_core import square_complete

    s, n = B.shape
    match, _, _ = koenig(B)
    if match.size == s:
        return frozenset(range(s)), frozenset()

    def zero_rows_of_minimal_canon(M: BitMatrix) -> list[int]:
        _, R, C = koenig(M)
        mu = [1 if i in R else 0 for i in range(M.shape[0])]
        nu = [1 if j in C else 0 for j in range(M.shape[1])]
        ell = [max(mu) - m for m in mu]
        tight = M.astype(np.int64) == np.add.outer(mu, nu)
        size, rm, _ = _max_matching([np.flatnonzero(t).tolist() for t in tight], M.shape[1])
        assert size == M.shape[0], "minimal cover without a tight permutation"
        lam = minimize_canon(OrderMatrix.from_arrays(M.astype(np.int64)), ell, tuple(rm))
        return [i for i, v in enumerate(lam) if v == 0]

    Aprime = square_complete(OrderMatrix.from_arrays(B.astype(np.int64))).values.astype(bool)
    zero = zero_rows_of_minimal_canon(Aprime)
    if len(zero) == Aprime.shape[0]:
        m = Aprime.shape[0]
        A2 = np.zeros((m + 1, m + 1), dtype=bool)
        A2[:m, :m] = Aprime
        A2[m, :] = True
        zero = zero_rows_of_minimal_canon(A2)
    R = frozenset(i for i in zero if i < s)
    C = frozenset(j for j in range(n) if B[[i for i in range(s) if i not in R], j].any())
    return R, C


def extremal_cover(A, mode: str = "row_maximal") -> tuple[frozenset, frozenset]:
    """The minimal line cover whose row set (or column set) is maximal.

    ``mode`` is ``"row_maximal"`` or ``"col_maximal"``.  Rows and columns are
    0-based.
    """
    B = as_bitmatrix(A)
    if mode == "row_maximal":
        return _row_maximal(B)
    if mode == "col_maximal":
        C, R = _row_maximal(B.T)
        return R, C
    raise ValueError(f"unknown mode {mode!r}")
