"""Extended integers, order matrices and max-plus determinants.

Values live in Z ∪ {-inf}.  Finite values are ordinary Python ints (bounded
to the signed 64-bit range); minus infinity is the dedicated singleton
:data:`NEG_INF`, which is absorbing for addition and smaller than every
integer.  An :class:`OrderMatrix` stores an ``int64`` array of values
together with a boolean mask of finite entries, so ``-inf`` is never encoded
as a magic integer.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from typing import Union

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class _NegInf:
    """The bottom element of Z ∪ {-inf}."""

    _instance: "_NegInf | None" = None

    def __new__(cls) -> "_NegInf":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_NegInf, ())

    def __hash__(self) -> int:
        return hash("jacobibound.NEG_INF")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, (int, np.integer)):
            return True
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if other is self or isinstance(other, (int, np.integer)):
            return True
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self or isinstance(other, (int, np.integer)):
            return False
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if other is self:
            return True
        if isinstance(other, (int, np.integer)):
            return False
        return NotImplemented

    def __add__(self, other: object) -> "_NegInf":
        if other is self or isinstance(other, (int, np.integer)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("-(-inf) is not an order value")


NEG_INF = _NegInf()

OrderValue = Union[int, _NegInf]


def check_int64(v: int) -> int:
    """Return ``v`` as a Python int, raising ``OverflowError`` outside int64."""
    v = int(v)
    if v < INT64_MIN or v > INT64_MAX:
        raise OverflowError(f"value {v} does not fit in a signed 64-bit integer")
    return v


def is_finite(v: OrderValue) -> bool:
    return v is not NEG_INF


def oadd(*terms: OrderValue) -> OrderValue:
    """Sum in Z ∪ {-inf} with overflow checking."""
    total = 0
    for t in terms:
        if t is NEG_INF:
            return NEG_INF
        total += int(t)
    return check_int64(total)


def as_order_value(x) -> OrderValue:
    """Coerce ints, ``NEG_INF``, ``float('-inf')`` or the string ``'-inf'``."""
    if x is NEG_INF:
        return NEG_INF
    if isinstance(x, str):
        token = x.strip().lower()
        if token in ("-inf", "-∞"):
            return NEG_INF
        return check_int64(int(token))
    if isinstance(x, (float, np.floating)):
        if x == float("-inf"):
            return NEG_INF
        if not float(x).is_integer():
            raise ValueError(f"non-integer order value {x!r}")
        return check_int64(int(x))
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (int, np.integer)):
        return check_int64(int(x))
    raise TypeError(f"cannot interpret {x!r} as an order value")


class OrderMatrix:
    """Immutable s×n matrix over Z ∪ {-inf}.

    ``values`` holds the finite entries (0 where the entry is ``-inf``) and
    ``finite`` is the mask of finite positions.  Both arrays are read-only.
    """

    __slots__ = ("values", "finite")

    def __init__(self, rows: Iterable[Iterable]) -> None:
        grid = [[as_order_value(x) for x in row] for row in rows]
        if not grid or not grid[0]:
            raise ValueError("an order matrix needs at least one row and one column")
        n = len(grid[0])
        if any(len(r) != n for r in grid):
            raise ValueError("ragged rows in order matrix")
        finite = np.array([[x is not NEG_INF for x in r] for r in grid], dtype=bool)
        values = np.array([[0 if x is NEG_INF else x for x in r] for r in grid], dtype=np.int64)
        self._set(values, finite)

    def _set(self, values: np.ndarray, finite: np.ndarray) -> None:
        values = np.where(finite, values, 0).astype(np.int64)
        values.setflags(write=False)
        finite = np.ascontiguousarray(finite, dtype=bool)
        finite.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "finite", finite)

    def __setattr__(self, name, value):
        raise AttributeError("OrderMatrix is immutable")

    @classmethod
    def from_arrays(cls, values: np.ndarray, finite: np.ndarray | None = None) -> "OrderMatrix":
        values = np.asarray(values)
        if values.ndim != 2 or values.shape[0] == 0 or values.shape[1] == 0:
            raise ValueError("an order matrix needs a non-empty 2-d array")
        if finite is None:
            finite = np.ones(values.shape, dtype=bool)
        finite = np.asarray(finite, dtype=bool)
        if finite.shape != values.shape:
            raise ValueError("mask shape does not match values")
        if values.dtype.kind == "f":
            bad = finite & ~np.isfinite(values)
            if bad.any():
                raise ValueError("non-finite float marked finite")
            values = np.where(finite, values, 0)
            if not np.all(np.equal(np.mod(values, 1), 0)):
                raise ValueError("non-integer order values")
        obj = cls.__new__(cls)
        obj._set(np.asarray(values, dtype=np.int64), finite)
        return obj

    @classmethod
    def full(cls, s: int, n: int, value: OrderValue = 0) -> "OrderMatrix":
        if value is NEG_INF:
            return cls.from_arrays(np.zeros((s, n), np.int64), np.zeros((s, n), bool))
        return cls.from_arrays(np.full((s, n), check_int64(value), np.int64))

    # -- basic access ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape  # type: ignore[return-value]

    @property
    def s(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]

    @property
    def is_square(self) -> bool:
        return self.s == self.n

    def __getitem__(self, ij: tuple[int, int]) -> OrderValue:
        i, j = ij
        return int(self.values[i, j]) if self.finite[i, j] else NEG_INF

    def row(self, i: int) -> list[OrderValue]:
        return [self[i, j] for j in range(self.n)]

    def tolist(self) -> list[list[OrderValue]]:
        return [self.row(i) for i in range(self.s)]

    def __iter__(self):
        return iter(self.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and bool(np.array_equal(self.finite, other.finite))
            and bool(np.array_equal(self.values, other.values))
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.finite.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        return f"OrderMatrix({self.tolist()!r})"

    def __str__(self) -> str:
        return format_matrix(self).rstrip("\n")

    # -- derived matrices -------------------------------------------------
    @property
    def T(self) -> "OrderMatrix":
        return OrderMatrix.from_arrays(self.values.T, self.finite.T)

    def transpose(self) -> "OrderMatrix":
        return self.T

    def max_abs(self) -> int:
        if not self.finite.any():
            return 0
        return int(np.abs(self.values[self.finite]).max())

    def max_finite(self) -> OrderValue:
        if not self.finite.any():
            return NEG_INF
        return int(self.values[self.finite].max())

    def check_headroom(self, extra: int = 0) -> None:
        """Guard internal int64 arithmetic.

        The algorithms add row increments bounded by ``(n-1)·max|a|`` and sum
        up to ``max(s, n)`` entries; this raises ``OverflowError`` when such
        sums could leave the int64 range.
        """
        k = max(self.s, self.n) + 2
        if (self.max_abs() + abs(extra)) * 4 * k >= INT64_MAX:
            raise OverflowError("order matrix entries too large for exact 64-bit processing")

    def add_rows(self, ell: Sequence[int]) -> "OrderMatrix":
        """The matrix A + ℓ (ℓ_i added to every entry of row i)."""
        inc = np.array([check_int64(x) for x in ell], dtype=object)
        if inc.shape != (self.s,):
            raise ValueError("row increment vector has wrong length")
        vals = self.values.astype(object) + inc[:, None]
        for v in vals[self.finite]:
            check_int64(v)
        return OrderMatrix.from_arrays(np.where(self.finite, vals, 0).astype(np.int64), self.finite)

    def add_cols(self, nu: Sequence[int]) -> "OrderMatrix":
        return self.T.add_rows(nu).T

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "OrderMatrix":
        rows, cols = list(rows), list(cols)
        return OrderMatrix.from_arrays(
            self.values[np.ix_(rows, cols)], self.finite[np.ix_(rows, cols)]
        )

    def permute_cols(self, perm: Sequence[int]) -> "OrderMatrix":
        """Column ``j`` of the result is column ``perm[j]`` of ``self``."""
        perm = list(perm)
        return OrderMatrix.from_arrays(self.values[:, perm], self.finite[:, perm])

    def permute_rows(self, perm: Sequence[int]) -> "OrderMatrix":
        perm = list(perm)
        return OrderMatrix.from_arrays(self.values[perm, :], self.finite[perm, :])

    def diagonal(self) -> list[OrderValue]:
        return [self[i, i] for i in range(min(self.s, self.n))]


Injection = tuple  # tuple[int | None, ...]: row i -> column, None when unmatched


def as_matrix(A) -> OrderMatrix:
    return A if isinstance(A, OrderMatrix) else OrderMatrix(A)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def parse_matrix(text: str) -> OrderMatrix:
    """Parse the whitespace separated matrix format (``-inf`` allowed, ``#`` comments)."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        row = []
        for tok in body.split():
            try:
                row.append(as_order_value(tok))
            except (ValueError, TypeError) as exc:
                raise ValueError(f"line {lineno}: bad matrix entry {tok!r}") from exc
        rows.append(row)
    if not rows:
        raise ValueError("empty matrix")
    width = len(rows[0])
    for k, r in enumerate(rows):
        if len(r) != width:
            raise ValueError(f"row {k + 1} has {len(r)} entries, expected {width}")
    return OrderMatrix(rows)


def format_matrix(A: OrderMatrix) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in A.tolist())


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def square_complete(A) -> OrderMatrix:
    """Pad with zero rows (s < n) or zero columns (s > n) to a square matrix."""
    A = as_matrix(A)
    s, n = A.shape
    if s == n:
        return A
    m = max(s, n)
    vals = np.zeros((m, m), np.int64)
    fin = np.ones((m, m), bool)
    vals[:s, :n] = A.values
    fin[:s, :n] = A.finite
    return OrderMatrix.from_arrays(vals, fin)


def tropdet(A) -> tuple[OrderValue, Injection | None]:
    """Max over injections σ of Σ a_{i,σ(i)}, with a witness injection.

    Computed through the minimal canon of the square completion: the
    transversal maxima of the canon realise a maximal transversal sum.  When
    s > n the transpose is used; the witness is still indexed by rows, with
    ``None`` for the s - n rows left out.
    """
    from .canon import _canon_engine  # local import: canon builds on this module
    from .matching import _max_matching

    A = as_matrix(A)
    s, n = A.shape
    transposed = s > n
    M = A.T if transposed else A
    rows_adj = [np.flatnonzero(M.finite[i]).tolist() for i in range(M.s)]
    if _max_matching(rows_adj, M.n)[0] < M.s:
        return NEG_INF, None
    sq = square_complete(M)
    _, row_match = _canon_engine(sq.values, sq.finite)
    pairs = [(i, int(row_match[i])) for i in range(M.s)]
    value = oadd(*(M[i, j] for i, j in pairs))
    if transposed:
        sigma: list[int | None] = [None] * s
        for col, row in pairs:
            sigma[row] = col
        return value, tuple(sigma)
    return value, tuple(j for _, j in pairs)


def tropdet_value(A) -> OrderValue:
    return tropdet(A)[0]


def tropdet_bruteforce(A) -> OrderValue:
    """Exhaustive maximum over all injections (test oracle; tiny inputs only)."""
    A = as_matrix(A)
    if A.s > A.n:
        A = A.T
    best: OrderValue = NEG_INF
    for cols in itertools.permutations(range(A.n), A.s):
        total = oadd(*(A[i, j] for i, j in enumerate(cols)))
        if total > best:
            best = total
    return best


def trop_mul(A, B) -> OrderMatrix:
    """Max-plus product c_{i,j} = max_k (a_{i,k} + b_{k,j})."""
    A, B = as_matrix(A), as_matrix(B)
    if A.n != B.s:
        raise ValueError(f"dimension mismatch: {A.shape} ⊙ {B.shape}")
    A.check_headroom(B.max_abs())
    vals = A.values[:, :, None] + B.values[None, :, :]
    fin = A.finite[:, :, None] & B.finite[None, :, :]
    any_fin = fin.any(axis=1)
    best = np.where(fin, vals, INT64_MIN).max(axis=1)
    return OrderMatrix.from_arrays(np.where(any_fin, best, 0), any_fin)


def trop_identity(n: int) -> OrderMatrix:
    return OrderMatrix.from_arrays(np.zeros((n, n), np.int64), np.eye(n, dtype=bool))


def trop_power(A, k: int) -> OrderMatrix:
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("matrix power needs a square matrix")
    result = trop_identity(A.n)
    for _ in range(k):
        result = trop_mul(result, A)
    return result


def subdet(A, delete_rows: Iterable[int] = (), delete_cols: Iterable[int] = ()) -> OrderValue:
    """Tropical determinant of A with the given rows and columns removed."""
    A = as_matrix(A)
    dr, dc = set(delete_rows), set(delete_cols)
    rows = [i for i in range(A.s) if i not in dr]
    cols = [j for j in range(A.n) if j not in dc]
    if not rows or not cols:
        if not rows and not cols:
            return 0  # empty determinant
        raise ValueError("cannot delete all rows or all columns of a non-empty side")
    return tropdet(A.submatrix(rows, cols))[0]


def partition_identity_check(A, I: Iterable[int]) -> bool:
    """Check |A| = max over #J = #I of |A_{I,J}| + |A_{Ī,J̄}| (square A)."""
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("partition identity needs a square matrix")
    rows = sorted(set(I))
    comp_rows = [i for i in range(A.n) if i not in rows]
    lhs = tropdet(A)[0]
    best: OrderValue = NEG_INF
    for J in itertools.combinations(range(A.n), len(rows)):
        Jbar = [j for j in range(A.n) if j not in J]
        left = tropdet(A.submatrix(rows, J))[0] if rows else 0
        right = tropdet(A.submatrix(comp_rows, Jbar))[0] if comp_rows else 0
        best = max(best, oadd(left, right))
    return lhs == best
