"""Canons, covers and path relations.

A *canon* of an s×n order matrix A (s ≤ n) is a vector ℓ ≥ 0 of row
increments such that A + ℓ has s transversal maxima: every row owns a finite
column-maximal entry, in pairwise distinct columns.  The componentwise
minimum of two canons is a canon, so there is a unique minimal one, λ.

A *cover* is a pair (μ, ν) with a_{i,j} ≤ μ_i + ν_j; it is minimal when
Σμ + Σν equals the tropical determinant.  Canons and minimal covers of a
square matrix correspond to each other.

All indices are 0-based.  Canons are returned as tuples of ints.
"""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    InfeasibleCanon,
    NoSuchCanon,
    NotACanon,
    NotACover,
    NotMaximalFamily,
    NotMinimal,
    ShiftTooLarge,
)
from .matching import _max_matching, maxima_pattern
from .trop_core import OrderMatrix, as_matrix, check_int64, tropdet

_NEG = np.iinfo(np.int64).min
_BIG = np.iinfo(np.int64).max

Canon = tuple  # tuple[int, ...]


def _colmax(B: np.ndarray, fin: np.ndarray) -> np.ndarray:
    return np.where(fin, B, _NEG).max(axis=0)


# ---------------------------------------------------------------------------
# Jacobi's minimal canon algorithm
# ---------------------------------------------------------------------------


def _canon_engine(vals: np.ndarray, fin: np.ndarray, improved: bool = True, stats: dict | None = None):
    """Minimal canon of an s×n matrix with s ≤ n.

    Returns ``(ell, row_match)`` where ``row_match[i]`` is the column of the
    transversal maximum owned by row ``i`` in A + ell.

    The loop follows Jacobi's scheme.  Matched rows are *upper*, matched
    columns *left*; the matched entries are the starred maxima.

    b) lower rows owning a maximum in a right column are matched directly;
    c) the first class is grown from upper rows owning a right maximum along
       elementary paths (row i -> row k when k has a maximum in the starred
       column of i);
    d) reaching a lower row means the starred maxima can be shifted along
       the path, gaining one transversal maximum;
    e) otherwise the third class (rows with a path to a lower row) is raised
       by the least amount making one of its entries tie with a right
       maximum or with the starred maximum of another row.

    With ``improved`` the raise of step e is iterated with incrementally
    maintained distances: a second-class row reached by a tie joins the
    third class and the distances are updated in O(n), which keeps the
    whole computation within O(s²n).
    """
    s, n = vals.shape
    if s > n:
        raise ValueError("canon engine needs s <= n")
    if not fin.any(axis=1).all():
        raise InfeasibleCanon("a row has no finite entry")
    vals = np.where(fin, vals, 0).astype(np.int64)
    colhas = fin.any(axis=0)

    # preparation: every row is raised until it owns a column maximum
    cm0 = np.where(colhas, _colmax(vals, fin), 0)
    ell = np.where(fin, cm0[None, :] - vals, _BIG).min(axis=1)
    B = vals + ell[:, None]

    rm = np.full(s, -1, dtype=np.int64)
    cm = np.full(n, -1, dtype=np.int64)
    counts = {"augmentations": 0, "raises": 0, "raise_rounds": 0}

    while True:
        colmax = _colmax(B, fin)
        ismax = fin & (B == colmax[None, :])

        # b) lower-right maxima
        lower = np.flatnonzero(rm < 0)
        if lower.size and (ismax[lower][:, cm < 0]).any():
            for i in lower:
                cand = np.flatnonzero(ismax[i] & (cm < 0))
                if cand.size:
                    j = cand[0]
                    rm[i], cm[j] = j, i
        if (rm >= 0).all():
            break

        # c) first class
        free = cm < 0
        roots = np.flatnonzero((rm >= 0) & ismax[:, free].any(axis=1))
        parent: dict[int, int | None] = {int(i): None for i in roots}
        queue = deque(parent)
        low = None
        while queue and low is None:
            i = queue.popleft()
            for k in np.flatnonzero(ismax[:, rm[i]]):
                k = int(k)
                if k not in parent:
                    parent[k] = i
                    if rm[k] < 0:
                        low = k
                        break
                    queue.append(k)

        if low is not None:
            # d) augment along the path
            cur = low
            while parent[cur] is not None:
                p = parent[cur]
                col = rm[p]
                rm[cur], cm[col] = col, cur
                cur = p
            j = np.flatnonzero(ismax[cur] & (cm < 0))[0]
            rm[cur], cm[j] = j, cur
            counts["augmentations"] += 1
            continue

        # e) third class: lower rows and rows with a path to one
        third = rm < 0
        queue = deque(np.flatnonzero(third).tolist())
        while queue:
            t = queue.popleft()
            for c in np.flatnonzero(ismax[t] & (cm >= 0)):
                r = int(cm[c])
                if not third[r]:
                    third[r] = True
                    queue.append(r)
        first = np.zeros(s, dtype=bool)
        first[list(parent)] = True

        owner_third = np.zeros(n, dtype=bool)
        owner_third[cm >= 0] = third[cm[cm >= 0]]
        cand = colhas & ~owner_third
        colmax_safe = np.where(colhas, colmax, 0)
        hasT = fin[third].any(axis=0)
        maxT = np.where(fin[third], B[third], _NEG).max(axis=0)
        joined = np.zeros(s, dtype=np.int64)
        total = 0
        counts["raise_rounds"] += 1
        while True:
            cur = np.where(hasT, maxT + total, 0)
            gaps = np.where(cand & hasT, colmax_safe - cur, _BIG)
            c = int(np.argmin(gaps))
            if gaps[c] == _BIG:
                raise InfeasibleCanon("no transversal family of finite entries")
            total += int(gaps[c])
            counts["raises"] += 1
            if not improved or cm[c] < 0:
                break
            i0 = int(cm[c])
            if first[i0]:
                break
            # second-class row reached: it joins the third class
            third[i0] = True
            joined[i0] = total
            cand[c] = False
            hasT |= fin[i0]
            maxT = np.where(fin[i0], np.maximum(maxT, B[i0] - total), maxT)
        inc = np.where(third, total - joined, 0)
        ell += inc
        B += inc[:, None]

    if stats is not None:
        stats.update(counts)
    return ell, rm


def _finite_check(A: OrderMatrix) -> None:
    if not A.finite.any(axis=1).all():
        raise InfeasibleCanon("a row has only -inf entries")
    A.check_headroom()


def minimal_canon(A, *, improved: bool = True, stats: dict | None = None) -> Canon:
    """The minimal canon λ of A (s ≤ n).

    ``improved`` selects the incremental raising step (default); the
    original one-raise-per-round step is used otherwise.  ``stats``, when
    given, receives operation counters.
    """
    A = as_matrix(A)
    if A.s > A.n:
        raise ValueError("a canon needs s <= n; use the transpose for s > n")
    _finite_check(A)
    ell, _ = _canon_engine(A.values, A.finite, improved, stats)
    return tuple(int(x) for x in ell)


def minimal_canon_with_maxima(A, *, improved: bool = True) -> tuple[Canon, tuple]:
    """Minimal canon together with a family of transversal maxima."""
    A = as_matrix(A)
    if A.s > A.n:
        raise ValueError("a canon needs s <= n; use the transpose for s > n")
    _finite_check(A)
    ell, rm = _canon_engine(A.values, A.finite, improved)
    return tuple(int(x) for x in ell), tuple(int(j) for j in rm)


def _check_increments(A: OrderMatrix, ell) -> np.ndarray:
    ell = [check_int64(x) for x in ell]
    if len(ell) != A.s:
        raise ValueError(f"increment vector of length {len(ell)} for {A.s} rows")
    if any(x < 0 for x in ell):
        raise ValueError("canon increments must be non-negative")
    A.check_headroom(max(ell, default=0))
    return np.array(ell, dtype=np.int64)


def is_canon(A, ell) -> bool:
    """True iff A + ℓ has s transversal maxima (checked by matching)."""
    A = as_matrix(A)
    try:
        ell = _check_increments(A, ell)
    except ValueError:
        return False
    B = OrderMatrix.from_arrays(A.values + ell[:, None], A.finite)
    pattern = maxima_pattern(B)
    size, _, _ = _max_matching([np.flatnonzero(r).tolist() for r in pattern], A.n)
    return size == A.s


def _check_maxima(A: OrderMatrix, ell: np.ndarray, maxima) -> np.ndarray:
    sigma = [int(j) for j in maxima]
    if len(sigma) != A.s or len(set(sigma)) != A.s or not all(0 <= j < A.n for j in sigma):
        raise NotACanon("maxima must be an injection from rows to columns")
    B = A.values + ell[:, None]
    colmax = _colmax(B, A.finite)
    for i, j in enumerate(sigma):
        if not A.finite[i, j] or B[i, j] != colmax[j]:
            raise NotACanon(f"entry ({i}, {j}) is not a column maximum of A + ell")
    return np.array(sigma, dtype=np.int64)


# ---------------------------------------------------------------------------
# minimizing a known canon
# ---------------------------------------------------------------------------


def _rows_reaching(B: np.ndarray, fin: np.ndarray, sigma: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Rows having a (possibly empty) path to a row in ``targets``."""
    s = B.shape[0]
    inv = np.full(B.shape[1], -1, dtype=np.int64)
    inv[sigma] = np.arange(s)
    starred = B[np.arange(s), sigma]
    reach = targets.copy()
    queue = deque(np.flatnonzero(reach).tolist())
    while queue:
        t = queue.popleft()
        cols = np.flatnonzero(fin[t] & (inv >= 0))
        for c in cols:
            i = int(inv[c])
            if not reach[i] and B[t, c] == starred[i]:
                reach[i] = True
                queue.append(i)
    return reach


def minimize_canon(A, ell, maxima, *, method: str = "tree") -> Canon:
    """The minimal canon, starting from a canon ℓ and its transversal maxima.

    ``method="simple"`` repeatedly lowers every row lacking a path to a
    zero row by the largest admissible common amount (O(n³));
    ``method="tree"`` keeps, for each such row, an ordered heap of the
    distances to rows already settled (O(n² log n)).
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("minimize_canon needs a square matrix")
    ellv = _check_increments(A, ell)
    sigma = _check_maxima(A, ellv, maxima)
    ellv = ellv - ellv.min()
    if method == "simple":
        return _minimize_simple(A, ellv, sigma)
    if method == "tree":
        return _minimize_tree(A, ellv, sigma)
    raise ValueError(f"unknown method {method!r}")


def _minimize_simple(A: OrderMatrix, ell: np.ndarray, sigma: np.ndarray) -> Canon:
    vals, fin = A.values, A.finite
    rows = np.arange(A.s)
    while True:
        B = vals + ell[:, None]
        L1 = _rows_reaching(B, fin, sigma, ell == 0)
        if L1.all():
            return tuple(int(x) for x in ell)
        L2 = ~L1
        starred = B[rows, sigma]
        b = int(ell[L2].min())
        for i in np.flatnonzero(L2):
            c = sigma[i]
            col_ok = fin[:, c] & L1
            if col_ok.any():
                b = min(b, int((starred[i] - B[col_ok, c]).min()))
        ell = ell - np.where(L2, b, 0)


def _minimize_tree(A: OrderMatrix, ell: np.ndarray, sigma: np.ndarray) -> Canon:
    vals, fin = A.values, A.finite
    s = A.s
    ell = [int(x) for x in ell]
    diag = [int(vals[i, sigma[i]]) for i in range(s)]
    L1 = [i for i in range(s) if ell[i] == 0]
    L2 = [i for i in range(s) if ell[i] != 0]
    heaps: dict[int, list[tuple[int, int]]] = {i: [] for i in L2}

    def insert(i: int, k: int) -> None:
        c = sigma[i]
        if fin[k, c]:
            heapq.heappush(heaps[i], (diag[i] - int(vals[k, c]) - ell[k], k))

    for i in L2:
        for k in L1:
            insert(i, k)
    offset = 0  # amount already subtracted from every row still in L2
    while L2:
        keys = {}
        for i in L2:
            cur = ell[i] - offset
            keys[i] = min(heaps[i][0][0] + cur, cur) if heaps[i] else cur
        b = min(keys.values())
        L3 = [i for i in L2 if keys[i] == b]
        offset += b
        for i in L3:
            ell[i] -= offset
        L2 = [i for i in L2 if keys[i] != b]
        for i in L2:
            for k in L3:
                insert(i, k)
    return tuple(ell)


# ---------------------------------------------------------------------------
# canons from known maxima
# ---------------------------------------------------------------------------


def _relax(A: OrderMatrix, sigma, prescribed, lower, error) -> Canon:
    """Least ℓ ≥ lower making every constrained entry column-maximal.

    Constraints are (row, col) pairs: the transversal family plus any
    prescribed entries.  Each elementary step raises row i by
    max_k (a_{k,j} + ℓ_k) − (a_{i,j} + ℓ_i) for each constraint (i, j), all
    rows at once; a solution is reached within n steps or never.
    """
    n = A.n
    constraints = [(i, int(j)) for i, j in enumerate(sigma)] + [(int(i), int(j)) for i, j in prescribed]
    for i, j in constraints:
        if not (0 <= i < A.s and 0 <= j < A.n):
            raise ValueError(f"index ({i}, {j}) out of range")
        if not A.finite[i, j]:
            raise error(f"entry ({i}, {j}) is -inf and can never be a maximum")
    ci = np.array([c[0] for c in constraints], dtype=np.int64)
    cj = np.array([c[1] for c in constraints], dtype=np.int64)
    ell = np.array(lower, dtype=np.int64)
    for _ in range(n):
        B = A.values + ell[:, None]
        colmax = _colmax(B, A.finite)
        need = colmax[cj] - B[ci, cj]
        inc = np.zeros(A.s, dtype=np.int64)
        np.maximum.at(inc, ci, need)
        if not inc.any():
            return tuple(int(x) for x in ell)
        ell = ell + inc
    raise error("the iteration does not stabilise within n steps")


def canon_from_maxima(A, maxima) -> Canon:
    """Minimal canon in which the given transversal family is maximal.

    Raises :class:`NotMaximalFamily` when the family does not realise a
    maximal transversal sum.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("canon_from_maxima needs a square matrix")
    sigma = list(maxima)
    if sorted(sigma) != list(range(A.n)):
        raise ValueError("maxima must be a permutation")
    A.check_headroom()
    return _relax(A, sigma, (), [0] * A.s, NotMaximalFamily)


def canon_with_prescribed(A, maxima, prescribed: Sequence[tuple[int, int]] = (), lower_bounds=None) -> Canon:
    """Minimal canon keeping ``maxima`` and every prescribed entry column-maximal.

    ``lower_bounds`` optionally imposes ℓ ≥ c.  Raises :class:`NoSuchCanon`
    when no such canon exists.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("canon_with_prescribed needs a square matrix")
    sigma = list(maxima)
    if sorted(sigma) != list(range(A.n)):
        raise ValueError("maxima must be a permutation")
    lower = [0] * A.s if lower_bounds is None else [check_int64(c) for c in lower_bounds]
    if len(lower) != A.s or any(c < 0 for c in lower):
        raise ValueError("lower bounds must be a non-negative vector of length s")
    A.check_headroom(max(lower))
    return _relax(A, sigma, prescribed, lower, NoSuchCanon)


def constrained_canon(A, lower_bounds) -> Canon:
    """Minimal canon with ℓ ≥ c, computed as c + minimal_canon(A + c)."""
    A = as_matrix(A)
    c = [check_int64(x) for x in lower_bounds]
    if len(c) != A.s or any(x < 0 for x in c):
        raise ValueError("lower bounds must be a non-negative vector of length s")
    lam = minimal_canon(A.add_rows(c))
    return tuple(ci + li for ci, li in zip(c, lam))


# ---------------------------------------------------------------------------
# covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    mu: tuple
    nu: tuple

    @property
    def total(self) -> int:
        return sum(self.mu) + sum(self.nu)

    def is_nonnegative(self) -> bool:
        return min(self.mu) >= 0 and min(self.nu) >= 0


def is_cover(A, cover: Cover) -> bool:
    A = as_matrix(A)
    if len(cover.mu) != A.s or len(cover.nu) != A.n:
        return False
    bound = np.add.outer(np.array(cover.mu, dtype=object), np.array(cover.nu, dtype=object))
    return bool(np.all(~A.finite | (A.values.astype(object) <= bound)))


def is_minimal_cover(A, cover: Cover) -> bool:
    A = as_matrix(A)
    return is_cover(A, cover) and tropdet(A)[0] == cover.total


def cover_of_canon(A, ell) -> Cover:
    """μ_i = max ℓ − ℓ_i and ν_j = max_k (a_{k,j} − μ_k)."""
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("covers are defined for square matrices")
    if not is_canon(A, ell):
        raise NotACanon("increments do not form a canon")
    top = max(ell)
    mu = tuple(int(top - x) for x in ell)
    shifted = np.where(A.finite, A.values - np.array(mu)[:, None], _NEG)
    nu = tuple(int(v) for v in shifted.max(axis=0))
    return Cover(mu, nu)


def canon_of_cover(A, cover: Cover) -> Canon:
    """ℓ_i = max μ − μ_i for a minimal cover."""
    A = as_matrix(A)
    if not is_cover(A, cover):
        raise NotACover("some entry exceeds mu_i + nu_j")
    if tropdet(A)[0] != cover.total:
        raise NotMinimal("cover total differs from the tropical determinant")
    top = max(cover.mu)
    return tuple(int(top - m) for m in cover.mu)


def jacobi_cover(A) -> Cover:
    """The cover (α, β) associated with the minimal canon."""
    A = as_matrix(A)
    return cover_of_canon(A, minimal_canon(A))


def _tight_permutation(A: OrderMatrix, cover: Cover) -> list[int]:
    tight = A.finite & (A.values == np.add.outer(np.array(cover.mu), np.array(cover.nu)))
    size, rm, _ = _max_matching([np.flatnonzero(r).tolist() for r in tight], A.n)
    if size != A.s:
        raise NotMinimal("cover admits no tight permutation")
    return rm


def _shift_closure(A: OrderMatrix, cover: Cover, pivot: int, mode: str):
    """Closure set and owner maps for a cover shift.

    ``mode="row"``: rows reachable from ``pivot``, row i -> row k when
    a_{k,σ(i)} = μ_k + ν_{σ(i)}.  ``mode="col"``: columns reachable from
    ``pivot``, column j -> column k when the row owning j is tight at k.
    """
    sigma = _tight_permutation(A, cover)
    mu, nu = np.array(cover.mu), np.array(cover.nu)
    tight = A.finite & (A.values == np.add.outer(mu, nu))
    inv = [0] * A.n
    for i, j in enumerate(sigma):
        inv[j] = i
    seen = {pivot}
    queue = deque([pivot])
    while queue:
        x = queue.popleft()
        if mode == "row":
            nxt = np.flatnonzero(tight[:, sigma[x]])
        else:
            nxt = np.flatnonzero(tight[inv[x]])
        for y in nxt:
            y = int(y)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen, sigma, inv


def shift_bound(A, cover: Cover, pivot: int, mode: str = "row") -> int | None:
    """Largest admissible shift amount, ``None`` when unbounded."""
    A = as_matrix(A)
    S, sigma, inv = _shift_closure(A, cover, pivot, mode)
    best = None
    for x in S:
        for y in range(A.n):
            if y in S:
                continue
            if mode == "row":  # entry (y, σ(x))
                i, j = y, sigma[x]
            else:  # entry (σ⁻¹(x), y)
                i, j = inv[x], y
            if A.finite[i, j]:
                slack = cover.mu[i] + cover.nu[j] - int(A.values[i, j])
                best = slack if best is None else min(best, slack)
    return best


def cover_shift(A, cover: Cover, pivot: int, e: int, mode: str = "row") -> Cover:
    """Another minimal cover obtained by shifting along a path closure.

    ``mode="row"`` raises μ on the rows reachable from ``pivot`` and lowers
    ν on their matched columns; ``mode="col"`` raises ν on the columns
    reachable from column ``pivot`` and lowers μ on their owning rows.
    """
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("cover shifts need a square matrix")
    if not is_minimal_cover(A, cover):
        raise NotMinimal("cover_shift needs a minimal cover")
    if e < 0:
        raise ShiftTooLarge("shift amount must be non-negative")
    if e == 0:
        return cover
    bound = shift_bound(A, cover, pivot, mode)
    if bound is not None and e > bound:
        raise ShiftTooLarge(f"shift {e} exceeds the admissible bound {bound}")
    S, sigma, inv = _shift_closure(A, cover, pivot, mode)
    mu, nu = list(cover.mu), list(cover.nu)
    for x in S:
        if mode == "row":
            mu[x] += e
            nu[sigma[x]] -= e
        else:
            nu[x] += e
            mu[inv[x]] -= e
    return Cover(tuple(mu), tuple(nu))


def explore_covers(A, start: Cover | None = None, *, max_step: int | None = None) -> list[Cover]:
    """Non-negative minimal covers reachable by repeated row and column shifts.

    Shift amounts range over 1..min(bound, ``max_step``) (``max_step``
    defaults to max|a| + 1, which caps unbounded shifts).  Only covers with
    non-negative entries are kept: there are finitely many of them, whereas
    signed minimal covers come in infinite families (μ + c, ν − c).
    """
    A = as_matrix(A)
    cap = max_step if max_step is not None else A.max_abs() + 1
    start = start or jacobi_cover(A)
    seen = {start}
    queue = deque([start])
    while queue:
        cov = queue.popleft()
        for mode in ("row", "col"):
            for pivot in range(A.n):
                bound = shift_bound(A, cov, pivot, mode)
                top = cap if bound is None else min(bound, cap)
                for e in range(1, top + 1):
                    new = cover_shift(A, cov, pivot, e, mode)
                    if not new.is_nonnegative():
                        continue
                    if new not in seen:
                        seen.add(new)
                        queue.append(new)
    return sorted(seen, key=lambda c: (c.mu, c.nu))


# ---------------------------------------------------------------------------
# path relation and classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathRelation:
    """Elementary paths of A + ℓ for a family of transversal maxima."""

    ell: tuple
    witness: tuple
    successors: tuple  # successors[i]: rows k != i with an elementary path i -> k

    def closure(self) -> tuple:
        """Reflexive-transitive closure: ``closure()[i]`` = rows reachable from i."""
        out = []
        for i in range(len(self.successors)):
            seen = {i}
            queue = deque([i])
            while queue:
                x = queue.popleft()
                for y in self.successors[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            out.append(frozenset(seen))
        return tuple(out)

    def has_path(self, i: int, k: int) -> bool:
        return k in self.closure()[i]


def path_relation_for(A, ell, maxima) -> PathRelation:
    A = as_matrix(A)
    ellv = _check_increments(A, ell)
    sigma = _check_maxima(A, ellv, maxima)
    B = A.values + ellv[:, None]
    succ = []
    for i in range(A.s):
        c = sigma[i]
        ks = np.flatnonzero(A.finite[:, c] & (B[:, c] == B[i, c]))
        succ.append(tuple(int(k) for k in ks if k != i))
    return PathRelation(tuple(int(x) for x in ellv), tuple(int(j) for j in sigma), tuple(succ))


def path_relation(A, maxima=None) -> PathRelation:
    """Path relation of the minimal canon (witness from the canon, or ``maxima``)."""
    A = as_matrix(A)
    lam, witness = minimal_canon_with_maxima(A)
    return path_relation_for(A, lam, witness if maxima is None else maxima)


@dataclass(frozen=True)
class ClassPartition:
    first: frozenset
    second: frozenset
    third: frozenset
    paths: dict  # first-class row -> predecessor on an elementary path (None for roots)


def class_partition(A, ell, row_match) -> ClassPartition:
    """First/second/third classes of rows for a partial family of starred maxima.

    ``row_match[i]`` is the starred column of row ``i`` or ``None`` for a
    lower row.  Starred entries must be column maxima of A + ℓ.
    """
    A = as_matrix(A)
    ellv = _check_increments(A, ell)
    B = A.values + ellv[:, None]
    ismax = A.finite & (B == _colmax(B, A.finite)[None, :])
    rm = [-1 if j is None else int(j) for j in row_match]
    cm = [-1] * A.n
    for i, j in enumerate(rm):
        if j >= 0:
            if not ismax[i, j] or cm[j] >= 0:
                raise NotACanon("starred entries must be distinct column maxima")
            cm[j] = i
    parent: dict[int, int | None] = {}
    queue: deque[int] = deque()
    for i in range(A.s):
        if rm[i] >= 0 and any(cm[j] < 0 for j in np.flatnonzero(ismax[i])):
            parent[i] = None
            queue.append(i)
    while queue:
        i = queue.popleft()
        for k in np.flatnonzero(ismax[:, rm[i]]):
            k = int(k)
            if k not in parent:
                parent[k] = i
                queue.append(k)
    third = {i for i in range(A.s) if rm[i] < 0}
    queue = deque(sorted(third))
    while queue:
        t = queue.popleft()
        for c in np.flatnonzero(ismax[t]):
            r = cm[c]
            if r >= 0 and r not in third:
                third.add(r)
                queue.append(r)
    first = frozenset(parent) - third
    second = frozenset(range(A.s)) - first - third
    return ClassPartition(first, second, frozenset(third), {k: v for k, v in parent.items() if k in first})


def lambda_from_paths(A, relation: PathRelation) -> tuple:
    """Rebuild λ by summing a_{i_k,σ(i_{k-1})} − a_{i_{k-1},σ(i_{k-1})} along paths to zero rows."""
    A = as_matrix(A)
    s = A.s
    zero = [i for i in range(s) if relation.ell[i] == 0]
    # BFS backwards from zero rows gives, for each row, a path to some zero row
    nxt: dict[int, int | None] = {z: None for z in zero}
    queue = deque(zero)
    preds: list[list[int]] = [[] for _ in range(s)]
    for i, succ in enumerate(relation.successors):
        for k in succ:
            preds[k].append(i)
    while queue:
        k = queue.popleft()
        for i in preds[k]:
            if i not in nxt:
                nxt[i] = k
                queue.append(i)
    out = []
    for i in range(s):
        if i not in nxt:
            out.append(None)
            continue
        total, cur = 0, i
        while nxt[cur] is not None:
            k = nxt[cur]
            c = relation.witness[cur]
            total += int(A.values[k, c]) - int(A.values[cur, c])
            cur = k
        out.append(total)
    return tuple(out)


__all__ = [
    "Canon",
    "ClassPartition",
    "Cover",
    "PathRelation",
    "canon_from_maxima",
    "canon_of_cover",
    "canon_with_prescribed",
    "class_partition",
    "constrained_canon",
    "cover_of_canon",
    "cover_shift",
    "explore_covers",
    "is_canon",
    "is_cover",
    "is_minimal_cover",
    "jacobi_cover",
    "lambda_from_paths",
    "minimal_canon",
    "minimal_canon_with_maxima",
    "minimize_canon",
    "path_relation",
    "path_relation_for",
    "shift_bound",
]
