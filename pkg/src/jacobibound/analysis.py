"""Structural analysis of ordinary differential systems.

Given equations P_1..P_s in unknowns x_1..x_n, the order matrix has
a_{i,j} = order of x_j in P_i (``-inf`` when absent, or 0 in the *weak*
mode).  Its tropical determinant is Jacobi's bound; the minimal canon gives
how many times each equation must be differentiated; the associated cover
(α, β) selects the truncated Jacobian whose determinant ∇ certifies that the
bound is reached in the generic case.

Library indices are 0-based; the JSON report uses 1-based row/column labels.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
import numpy as np

from .canon import (
    Cover,
    canon_with_prescribed,
    constrained_canon,
    cover_of_canon,
    minimal_canon,
    path_relation,
    path_relation_for,
)
from .diffpoly import DerivVar, DiffPoly, det_mod_p, eval_mod_p, symbolic_det
from .errors import InfeasibleCanon
from .matching import _max_matching
from .trop_core import NEG_INF, OrderMatrix, OrderValue, as_matrix, oadd, square_complete, subdet, tropdet

DEFAULT_PRIME = 4611686018427387847  # largest prime below 2**62
SYMBOLIC_LIMIT = 5


# ---------------------------------------------------------------------------
# profiles, bound and cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SystemProfile:
    order_matrix: OrderMatrix
    bound_mode: str = "strong"

    @property
    def s(self) -> int:
        return self.order_matrix.s

    @property
    def n(self) -> int:
        return self.order_matrix.n


def profile(system: Sequence[DiffPoly], mode: str = "strong", n: int | None = None) -> SystemProfile:
    """Order matrix of a system; absent unknowns give -inf (strong) or 0 (weak)."""
    if mode not in ("strong", "weak"):
        raise ValueError(f"unknown bound mode {mode!r}")
    if not system:
        raise ValueError("empty system")
    if n is None:
        n = max((max(p.var_indices(), default=0) for p in system), default=0)
    if n == 0:
        raise ValueError("the system involves no unknown")
    absent = NEG_INF if mode == "strong" else 0
    rows = []
    for p in system:
        row = []
        for j in range(1, n + 1):
            k = p.order(j)
            row.append(absent if k is None else k)
        rows.append(row)
    return SystemProfile(OrderMatrix(rows), mode)


def _matrix_of(obj) -> OrderMatrix:
    return obj.order_matrix if isinstance(obj, SystemProfile) else as_matrix(obj)


def jacobi_bound(prof) -> OrderValue:
    """Tropical determinant of the order matrix (transposed when s > n)."""
    return tropdet(_matrix_of(prof))[0]


@dataclass(frozen=True)
class SystemCover:
    """Normalised Jacobi cover (α, β) and the canon of the square completion."""

    alpha: tuple
    beta: tuple
    lambda_sq: tuple
    alpha_sq: tuple
    beta_sq: tuple


def system_cover(prof) -> SystemCover:
    """Jacobi cover; for s ≠ n the normalisation through the square completion.

    λ□ is the minimal canon of the completed matrix, shifted so that its
    minimum over the s genuine rows is 0; then α_i = max λ□ − λ□_i (over the
    genuine rows) and β_j = max_i (a_{i,j} − α_i).
    """
    A = _matrix_of(prof)
    if tropdet(A)[0] is NEG_INF:
        raise InfeasibleCanon("Jacobi's bound is -inf")
    sq = square_complete(A)
    lam = minimal_canon(sq)
    cov = cover_of_canon(sq, lam)
    s, n = A.shape
    if s == n:
        return SystemCover(cov.mu, cov.nu, lam, cov.mu, cov.nu)
    genuine = lam[:s]
    low = min(genuine)
    lam_box = tuple(x - low for x in genuine)
    top = max(lam_box)
    alpha = tuple(top - x for x in lam_box)
    beta = []
    for j in range(n):
        col = [int(A.values[i, j]) - alpha[i] for i in range(s) if A.finite[i, j]]
        if not col:
            raise InfeasibleCanon(f"column {j} has no finite entry")
        beta.append(max(col))
    return SystemCover(alpha, tuple(beta), lam_box, cov.mu, cov.nu)


# ---------------------------------------------------------------------------
# truncated Jacobian and ∇
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedJacobian:
    support: frozenset
    entries: dict
    cover: Cover
    s: int
    n: int

    def matrix(self) -> list[list[DiffPoly]]:
        return [[self.entries.get((i, j), DiffPoly()) for j in range(self.n)] for i in range(self.s)]


def truncated_jacobian(system: Sequence[DiffPoly], prof: SystemProfile | None = None, cover: Cover | None = None) -> TruncatedJacobian:
    """Partials ∂P_i/∂x_j^(α_i+β_j) on the support {a_{i,j} = α_i + β_j}."""
    prof = prof or profile(system)
    A = prof.order_matrix
    if cover is None:
        sc = system_cover(prof)
        cover = Cover(sc.alpha, sc.beta)
    support = set()
    entries = {}
    for i in range(A.s):
        for j in range(A.n):
            if A.finite[i, j] and int(A.values[i, j]) == cover.mu[i] + cover.nu[j]:
                support.add((i, j))
                entries[(i, j)] = system[i].partial(DerivVar(j + 1, int(A.values[i, j])))
    return TruncatedJacobian(frozenset(support), entries, cover, A.s, A.n)


@dataclass(frozen=True)
class NablaReport:
    """Outcome of the ∇ ≢ 0 test.

    ``status`` is ``"nonzero_witness"`` (an evaluation mod ``prime`` was
    non-zero), ``"certainly_zero"`` (exact symbolic determinant is 0) or
    ``"probably_zero"`` (all evaluations vanished; ``failure_bound`` bounds
    the probability that ∇ is nevertheless non-zero).
    """

    status: str
    witness_point: dict | None
    prime: int
    trials: int
    failure_bound: Fraction | None = None
    note: str = ""
    symbolic: DiffPoly | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        point = None
        if self.witness_point is not None:
            point = {str(v): r for v, r in sorted(self.witness_point.items())}
        return {"status": self.status, "witness_point": point, "prime": self.prime, "trials": self.trials}


def _det_degree_bound(M: list[list[DiffPoly]]) -> int:
    return sum(max((e.total_degree() for e in row), default=0) for row in M)


def nabla_nonzero(tj: TruncatedJacobian, trials: int = 8, prime: int = DEFAULT_PRIME, seed: int = 0) -> NablaReport:
    """Decide ∇ ≢ 0 as a polynomial (generic-position certificate, not ideal membership)."""
    if tj.s != tj.n:
        raise ValueError("∇ is defined for square systems")
    M = tj.matrix()
    variables = sorted({v for row in M for e in row for v in e.variables()})
    rng = random.Random(seed)
    for _ in range(max(trials, 1)):
        point = {v: rng.randrange(prime) for v in variables}
        ev = [[eval_mod_p(e, point, prime) for e in row] for row in M]
        if det_mod_p(ev, prime):
            return NablaReport("nonzero_witness", point, prime, trials, note="∇ ≢ 0 as a polynomial")
    if not variables or tj.n <= SYMBOLIC_LIMIT:
        det = symbolic_det(M)
        if det.is_zero():
            return NablaReport("certainly_zero", None, prime, trials, note="∇ ≡ 0 (exact determinant)", symbolic=det)
        # a non-zero polynomial vanished at every sample: keep sampling
        for _ in range(1000):
            point = {v: rng.randrange(prime) for v in variables}
            if eval_mod_p(det, point, prime):
                return NablaReport("nonzero_witness", point, prime, trials, note="∇ ≢ 0 as a polynomial", symbolic=det)
        return NablaReport("nonzero_witness", None, prime, trials, note="exact determinant is non-zero", symbolic=det)
    bound = Fraction(_det_degree_bound(M), prime) ** trials
    return NablaReport("probably_zero", None, prime, trials, failure_bound=bound, note=f"probability of error <= (deg/p)^trials = {float(bound):.3g}")


# ---------------------------------------------------------------------------
# reduction plan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionPlan:
    lam: tuple
    alpha: tuple
    beta: tuple
    stage_sets: tuple  # stage_sets[k] = rows with α_i <= k
    jacobi_order: OrderValue


def reduction_plan(prof) -> ReductionPlan:
    """Differentiation counts λ (minimal canon) with the cover stages F_k = {i : α_i ≤ k}."""
    A = _matrix_of(prof)
    order = tropdet(A)[0]
    if order is NEG_INF:
        raise InfeasibleCanon("Jacobi's bound is -inf")
    sc = system_cover(A)
    if A.s <= A.n:
        lam = minimal_canon(A)
    else:
        lam = sc.lambda_sq
    stages = tuple(frozenset(i for i, a in enumerate(sc.alpha) if a <= k) for k in range(max(sc.alpha) + 1))
    return ReductionPlan(tuple(lam), sc.alpha, sc.beta, stages, order)


# ---------------------------------------------------------------------------
# first-order reduction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FirstOrderReduction:
    """Order matrix of the reduced system.

    ``var_map[c] = (j, k)`` names the new unknown of column ``c``: u_{j,k}
    (``j`` 1-based).  ``row_labels`` are ``("Q", i)`` for the substituted
    equations and ``("W", j, k)`` for u_{j,k} − u'_{j,k−1}.
    """

    B: OrderMatrix
    var_map: tuple
    row_labels: tuple
    system: tuple | None = None


def _reduction_layout(A: OrderMatrix):
    r = []
    for j in range(A.n):
        if not A.finite[:, j].any():
            raise InfeasibleCanon(f"unknown x{j + 1} appears in no equation")
        r.append(int(A.values[A.finite[:, j], j].max()))
    columns = []
    for j in range(A.n):
        ks = range(r[j] - 1, -1, -1) if r[j] >= 1 else [0]
        columns += [(j + 1, k) for k in ks]
    labels = [("Q", i) for i in range(A.s)]
    labels += [("W", j, k) for (j, k) in columns if 0 < k < r[j - 1]]
    return r, columns, labels


def first_order_reduce(prof, system: Sequence[DiffPoly] | None = None) -> FirstOrderReduction:
    """Rewrite as first-order equations in u_{j,k} = x_j^(k), 0 ≤ k < r_j = max_i a_{i,j}.

    Q_i replaces x_j^(k) by u_{j,k} (k < r_j) and x_j^(r_j) by u'_{j,r_j−1};
    W_{j,k} = u_{j,k} − u'_{j,k−1}.  Unknowns with r_j = 0 are kept as a
    single order-0 column.  Without ``system`` every derivative up to a_{i,j}
    is assumed present; with it, the substituted equations are built and
    their exact orders used.
    """
    A = _matrix_of(prof)
    if not A.is_square:
        raise ValueError("first-order reduction needs a square system")
    r, columns, labels = _reduction_layout(A)
    col_of = {jk: c for c, jk in enumerate(columns)}
    if system is not None:
        mapping = {}
        for j in range(1, A.n + 1):
            rj = r[j - 1]
            if rj == 0:
                mapping[DerivVar(j, 0)] = DiffPoly.var(col_of[(j, 0)] + 1)
                continue
            for k in range(rj):
                mapping[DerivVar(j, k)] = DiffPoly.var(col_of[(j, k)] + 1)
            mapping[DerivVar(j, rj)] = DiffPoly.var(col_of[(j, rj - 1)] + 1, 1)
        reduced = [p.substitute(mapping) for p in system]
        for _, j, k in labels[A.s :]:
            reduced.append(DiffPoly.var(col_of[(j, k)] + 1) - DiffPoly.var(col_of[(j, k - 1)] + 1, 1))
        B = profile(reduced, "strong", n=len(columns)).order_matrix
        return FirstOrderReduction(B, tuple(columns), tuple(labels), tuple(reduced))

    rows = []
    for i in range(A.s):
        row = []
        for j, k in columns:
            rj = r[j - 1]
            a = A[i, j - 1]
            if a is NEG_INF:
                row.append(NEG_INF)
            elif rj == 0:
                row.append(a)
            elif a == rj:
                row.append(1 if k == rj - 1 else 0)
            else:
                row.append(0 if k <= a else NEG_INF)
        rows.append(row)
    for _, j, k in labels[A.s :]:
        row = [NEG_INF] * len(columns)
        row[col_of[(j, k)]] = 0
        row[col_of[(j, k - 1)]] = 1
        rows.append(row)
    return FirstOrderReduction(OrderMatrix(rows), tuple(columns), tuple(labels))


# ---------------------------------------------------------------------------
# block decomposition
# ---------------------------------------------------------------------------


def block_decompose(prof, mode: str = "triangular", use_canon: bool = False) -> list[tuple[tuple, tuple]]:
    """Blocks ``(rows, cols)`` of the path preorder.

    Rows are joined by the relation i -> k when row k involves the unknown
    matched with row i (on the pattern of finite entries, or on the column
    maxima of the minimal canon with ``use_canon``).  ``mode="triangular"``
    gives the strongly connected components in topological order (a block
    only involves unknowns of itself and earlier blocks);
    ``mode="diagonal"`` gives connected components.
    """
    A = _matrix_of(prof)
    if not A.is_square:
        raise ValueError("block decomposition needs a square system")
    n = A.n
    if use_canon:
        rel = path_relation(A)
        sigma = list(rel.witness)
        succ = [list(x) for x in rel.successors]
    else:
        size, rm, _ = _max_matching([np.flatnonzero(r).tolist() for r in A.finite], n)
        if size < n:
            raise InfeasibleCanon("no transversal of finite entries")
        sigma = list(rm)
        succ = [[int(k) for k in np.flatnonzero(A.finite[:, sigma[i]]) if k != i] for i in range(n)]
    G = nx.DiGraph()
    G.add_nodes_from(range(n))
    G.add_edges_from((i, k) for i in range(n) for k in succ[i])
    if mode == "triangular":
        C = nx.condensation(G)
        order = nx.lexicographical_topological_sort(C, key=lambda c: min(C.nodes[c]["members"]))
        groups = [sorted(C.nodes[c]["members"]) for c in order]
    elif mode == "diagonal":
        groups = sorted((sorted(c) for c in nx.weakly_connected_components(G)), key=lambda g: g[0])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return [(tuple(g), tuple(sorted(sigma[i] for i in g))) for g in groups]


# ---------------------------------------------------------------------------
# ordering change
# ---------------------------------------------------------------------------


def ordering_change_bound(prof, e: Sequence[int], f: Sequence[int]) -> tuple:
    """Least ℓ ≥ max(f − e, 0) keeping every diagonal entry column-maximal.

    ``e_i = a_{i,i}`` are the orders of the current main variables and
    ``f_i`` the target orders; ℓ_i bounds how many derivatives of equation i
    the ordering change needs.
    """
    A = _matrix_of(prof)
    if not A.is_square:
        raise ValueError("ordering change needs a square system")
    if len(e) != A.n or len(f) != A.n:
        raise ValueError("e and f must have one entry per equation")
    for i in range(A.n):
        if A[i, i] != e[i]:
            raise ValueError(f"e_{i + 1} = {e[i]} differs from the diagonal order {A[i, i]}")
    lower = [max(fi - ei, 0) for ei, fi in zip(e, f)]
    return canon_with_prescribed(A, list(range(A.n)), (), lower)


# ---------------------------------------------------------------------------
# resolvent bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolventBounds:
    """Bounds for eliminating towards a resolvent in unknown ``pivot``.

    ``per_row_bounds[i]`` is Ō_{i,pivot}, the tropical determinant of A with
    row i and column ``pivot`` removed.  ``reachable`` holds the rows with a
    path to the row matched with ``pivot`` (computed with a large D);
    ``unreachable_det`` is the tropical determinant on the unreachable rows
    and their matched columns (``None`` when there is none).
    """

    pivot: int
    D: int
    ell: tuple
    per_row_bounds: tuple
    reachable: frozenset
    unreachable: frozenset
    pivot_row: int
    unreachable_det: OrderValue | None = None


def resolvent_bounds(prof, j0: int, D: int = 0) -> ResolventBounds:
    """Minimal canon with (column j0 maximum) ≥ O + D, and the bounds Ō_{i,j0}."""
    A = _matrix_of(prof)
    if not A.is_square:
        raise ValueError("resolvent bounds need a square system")
    n = A.n
    if not 0 <= j0 < n:
        raise ValueError(f"pivot {j0} out of range")
    O, sigma = tropdet(A)
    if O is NEG_INF:
        raise InfeasibleCanon("Jacobi's bound is -inf")
    r = sigma.index(j0)
    a_r = int(A.values[r, j0])

    def canon_for(d: int) -> tuple:
        c = [0] * n
        c[r] = max(0, O + d - a_r)
        return constrained_canon(A, c)

    ell = canon_for(D)
    top = A.max_finite()
    big = (n - 1) * max(0, top) + 1
    ell_big = canon_for(max(big, D))
    rel = path_relation_for(A, ell_big, sigma)
    closure = rel.closure()
    reach = frozenset(i for i in range(n) if r in closure[i])
    o_rr = O - a_r
    bounds = []
    for i in range(n):
        if i in reach:
            bounds.append(ell_big[i] - ell_big[r] + o_rr)
        else:
            bounds.append(subdet(A, {i}, {j0}))
    unreach = frozenset(range(n)) - reach
    udet = None
    if unreach:
        rows = sorted(unreach)
        udet = tropdet(A.submatrix(rows, sorted(sigma[i] for i in rows)))[0]
    return ResolventBounds(j0, D, ell, tuple(bounds), reach, unreach, r, udet)


def resolvent_identity_check(A, j0: int) -> bool:
    """Σ_i Ō_{i,j0} = Σ_{j≠j0} max_i (Ō_{i,j0} + a_{i,j})."""
    A = as_matrix(A)
    if not A.is_square:
        raise ValueError("square matrix expected")
    n = A.n
    obar = [subdet(A, {i}, {j0}) for i in range(n)]
    lhs = oadd(*obar)
    rhs_terms = []
    for j in range(n):
        if j == j0:
            continue
        rhs_terms.append(max((oadd(obar[i], A[i, j]) for i in range(n)), default=NEG_INF))
    return lhs == oadd(*rhs_terms)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _json_value(v: OrderValue):
    return None if v is NEG_INF else int(v)


def analyze(system: Sequence[DiffPoly], mode: str = "strong", seed: int = 0, trials: int = 8, prime: int = DEFAULT_PRIME) -> dict:
    """Full structural report with stable key order (see README for the schema)."""
    prof = profile(system, mode)
    A = prof.order_matrix
    bound = jacobi_bound(prof)
    if bound is NEG_INF:
        raise InfeasibleCanon("Jacobi's bound is -inf")
    plan = reduction_plan(prof)
    if A.is_square:
        tj = truncated_jacobian(system, prof)
        nabla = nabla_nonzero(tj, trials=trials, prime=prime, seed=seed).to_json()
        blocks = [
            {"rows": [i + 1 for i in rows], "cols": [j + 1 for j in cols]}
            for rows, cols in block_decompose(prof)
        ]
    else:
        nabla = {"status": "not_square", "witness_point": None, "prime": prime, "trials": trials}
        blocks = []
    return {
        "bound": _json_value(bound),
        "mode": mode,
        "order_matrix": [[_json_value(x) for x in row] for row in A.tolist()],
        "lambda": list(plan.lam),
        "alpha": list(plan.alpha),
        "beta": list(plan.beta),
        "nabla": nabla,
        "blocks": blocks,
        "plan": {"stages": [[i + 1 for i in sorted(F)] for F in plan.stage_sets]},
    }
