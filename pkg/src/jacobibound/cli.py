"""Command-line front-end: ``jacobibound SUBCOMMAND FILE [options]``.

Matrices, systems and graphs are read from FILE (``-`` for standard input).
Indices on the command line and in every output are 1-based.  Exit status is
0 on success, 1 on parse or validation errors and 2 when the problem is
infeasible; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import analysis, canon, graph_bridge, matching
from .diffpoly import DiffPoly, format_poly, operator_determinant, parse_system
from .errors import Infeasible, JacobiError
from .trop_core import NEG_INF, OrderMatrix, OrderValue, format_matrix, parse_matrix, tropdet


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _matrix(path: str) -> OrderMatrix:
    return parse_matrix(_read(path))


def _system(path: str) -> list[DiffPoly]:
    system = parse_system(_read(path))
    if not system:
        raise ValueError("the system file holds no equation")
    return system


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValueError(f"expected a list of integers, got {text!r}") from exc


def _indices(text: str, bound: int, what: str) -> list[int]:
    """1-based list from the command line, returned 0-based."""
    values = _ints(text)
    for v in values:
        if not 1 <= v <= bound:
            raise ValueError(f"{what} index {v} outside 1..{bound}")
    return [v - 1 for v in values]


def _val(v: OrderValue):
    return None if v is NEG_INF else int(v)


def _txt(v: OrderValue) -> str:
    return "-inf" if v is NEG_INF else str(v)


def _one_based(xs) -> list:
    return [None if x is None else x + 1 for x in xs]


def _join(xs) -> str:
    return " ".join("-" if x is None else str(x) for x in xs)


def _field(label: str, xs) -> str:
    return f"{label}: {_join(xs)}".rstrip()


# ---------------------------------------------------------------------------
# subcommands: each returns (json payload, text lines)
# ---------------------------------------------------------------------------


def cmd_tropdet(args):
    A = _matrix(args.file)
    value, witness = tropdet(A)
    wit = None if witness is None else _one_based(witness)
    lines = [_txt(value)]
    if args.verbose and wit is not None:
        lines.append(_field("witness", wit))
    return {"value": _val(value), "witness": wit}, lines


def cmd_canon(args):
    A = _matrix(args.file)
    maxima = None
    if args.from_canon is not None:
        if args.maxima is None:
            raise ValueError("--from-canon needs --maxima")
        maxima = _indices(args.maxima, A.n, "column")
        lam = canon.minimize_canon(A, _ints(args.from_canon), maxima)
    elif args.from_maxima is not None:
        maxima = _indices(args.from_maxima, A.n, "column")
        lam = canon.canon_from_maxima(A, maxima)
    elif args.lower_bounds is not None:
        lam = canon.constrained_canon(A, _ints(args.lower_bounds))
    else:
        lam, maxima = canon.minimal_canon_with_maxima(A)
    payload = {"lambda": list(lam)}
    if maxima is not None:
        payload["maxima"] = _one_based(maxima)
    return payload, [_field("lambda", lam)]


def cmd_cover(args):
    A = _matrix(args.file)
    if args.transpose:
        A = A.T
    cov = canon.jacobi_cover(A)
    return {"mu": list(cov.mu), "nu": list(cov.nu), "total": cov.total}, [_field("mu", cov.mu), _field("nu", cov.nu)]


def cmd_match(args):
    A = _matrix(args.file)
    res = matching.match_naive(A) if args.algo == "naive" else matching.match_hk(A)
    pairs = [[i + 1, j + 1] for i, j in res.pairs()]
    payload = {"size": res.size, "matching": _one_based(res.matching)}
    if args.algo == "hk":
        payload["phase_lengths"] = list(res.phase_lengths)
    return payload, [f"size: {res.size}", "pairs: " + " ".join(f"{i}-{j}" for i, j in pairs)]


def cmd_koenig(args):
    A = _matrix(args.file)
    if args.row_max or args.col_max:
        R, C = matching.extremal_cover(A, "row_maximal" if args.row_max else "col_maximal")
        size = len(R) + len(C)
    else:
        res, R, C = matching.koenig(A)
        size = res.size
    rows, cols = sorted(i + 1 for i in R), sorted(j + 1 for j in C)
    return {"size": size, "rows": rows, "cols": cols}, [f"size: {size}", _field("rows", rows), _field("cols", cols)]


def cmd_blocks(args):
    A = _matrix(args.file)
    blocks = analysis.block_decompose(A, "diagonal" if args.diagonal else "triangular")
    out = [{"rows": [i + 1 for i in r], "cols": [j + 1 for j in c]} for r, c in blocks]
    lines = [f"rows {_join(b['rows'])} | cols {_join(b['cols'])}" for b in out]
    return {"blocks": out}, lines


def cmd_analyze(args):
    system = _system(args.file)
    report = analysis.analyze(system, "weak" if args.weak else "strong", seed=args.seed, trials=args.trials)
    nabla = report["nabla"]
    lines = [
        f"bound: {_txt(NEG_INF if report['bound'] is None else report['bound'])}",
        f"mode: {report['mode']}",
        "order matrix:",
        *("  " + " ".join("-inf" if x is None else str(x) for x in row) for row in report["order_matrix"]),
        _field("lambda", report["lambda"]),
        _field("alpha", report["alpha"]),
        _field("beta", report["beta"]),
        f"nabla: {nabla['status']}",
        *(f"block: rows {_join(b['rows'])} | cols {_join(b['cols'])}" for b in report["blocks"]),
        *(_field(f"stage {k}", F) for k, F in enumerate(report["plan"]["stages"])),
    ]
    return report, lines


def cmd_plan(args):
    prof = analysis.profile(_system(args.file))
    plan = analysis.reduction_plan(prof)
    stages = [sorted(i + 1 for i in F) for F in plan.stage_sets]
    payload = {
        "bound": _val(plan.jacobi_order),
        "lambda": list(plan.lam),
        "alpha": list(plan.alpha),
        "beta": list(plan.beta),
        "stages": stages,
    }
    lines = [
        f"bound: {_txt(plan.jacobi_order)}",
        _field("lambda", plan.lam),
        _field("alpha", plan.alpha),
        _field("beta", plan.beta),
        *(_field(f"stage {k}", F) for k, F in enumerate(stages)),
    ]
    return payload, lines


def cmd_reduce1(args):
    system = _system(args.file)
    prof = analysis.profile(system)
    red = analysis.first_order_reduce(prof, system if args.exact else None)
    names = [f"u{j},{k}" for j, k in red.var_map]
    labels = ["Q" + str(lab[1] + 1) if lab[0] == "Q" else f"W{lab[1]},{lab[2]}" for lab in red.row_labels]
    payload = {
        "order_matrix": [[_val(x) for x in row] for row in red.B.tolist()],
        "columns": [[j, k] for j, k in red.var_map],
        "rows": labels,
    }
    lines = ["columns: " + " ".join(names), "rows: " + " ".join(labels), format_matrix(red.B).rstrip("\n")]
    if red.system is not None:
        payload["system"] = [format_poly(p) for p in red.system]
        lines += ["system:", *("  " + format_poly(p) for p in red.system)]
    return payload, lines


def cmd_ordering_bound(args):
    prof = analysis.profile(_system(args.file))
    A = prof.order_matrix
    if not A.is_square:
        raise ValueError("ordering change needs a square system")
    f = _ints(args.target)
    e = [A[i, i] for i in range(A.n)]
    if any(x is NEG_INF for x in e):
        raise ValueError("every equation must involve its main unknown (diagonal entries must be finite)")
    ell = analysis.ordering_change_bound(prof, e, f)
    return {"ell": list(ell)}, [_field("ell", ell)]


def cmd_resolvent(args):
    prof = analysis.profile(_system(args.file))
    n = prof.order_matrix.n
    if not 1 <= args.pivot <= n:
        raise ValueError(f"pivot {args.pivot} outside 1..{n}")
    rb = analysis.resolvent_bounds(prof, args.pivot - 1, args.D)
    reach = sorted(i + 1 for i in rb.reachable)
    unreach = sorted(i + 1 for i in rb.unreachable)
    payload = {
        "pivot": rb.pivot + 1,
        "D": rb.D,
        "ell": list(rb.ell),
        "bounds": [_val(x) for x in rb.per_row_bounds],
        "reachable": reach,
        "unreachable": unreach,
        "unreachable_det": None if rb.unreachable_det is None else _val(rb.unreachable_det),
    }
    lines = [
        _field("ell", rb.ell),
        "bounds: " + " ".join(_txt(x) for x in rb.per_row_bounds),
        _field("reachable", reach),
        _field("unreachable", unreach),
    ]
    if rb.unreachable_det is not None:
        lines.append(f"unreachable det: {_txt(rb.unreachable_det)}")
    return payload, lines


def cmd_lindet(args):
    system = _system(args.file)
    det = operator_determinant(system)
    bound = analysis.jacobi_bound(analysis.profile(system))
    deg = det.degree
    payload = {"determinant": str(det), "degree": deg, "bound": _val(bound)}
    return payload, [f"determinant: {det}", f"degree: {'-inf' if deg is None else deg}", f"bound: {_txt(bound)}"]


def cmd_graph(args):
    if args.from_graph:
        G = graph_bridge.parse_graph(_read(args.file))
        A = graph_bridge.graph_to_matrix(G)
        return {"order_matrix": [[_val(x) for x in row] for row in A.tolist()]}, [format_matrix(A).rstrip("\n")]
    A = _matrix(args.file)
    if args.to_graph:
        G = graph_bridge.matrix_to_graph(A)
        edges = [list(e) for e in G.edges]
        return {"vertices": G.n + 1, "edges": edges}, [graph_bridge.format_graph(G).rstrip("\n")]
    Ap, perm = graph_bridge.permute_to_witness(A)
    ok = graph_bridge.graph_roundtrip_check(Ap)
    return {"roundtrip": ok, "column_order": _one_based(perm)}, ["roundtrip: " + ("ok" if ok else "mismatch")]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacobibound", description="Tropical determinants, canons and Jacobi's bound for differential systems.")
    parser.add_argument("--json", action="store_true", help="emit a JSON document instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, kind="FILE"):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", metavar=kind, help="input file, '-' for standard input")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
        p.set_defaults(func=func)
        return p

    p = add("tropdet", cmd_tropdet, "tropical determinant of a matrix")
    p.add_argument("-v", "--verbose", action="store_true", help="also print a witness injection")

    p = add("canon", cmd_canon, "minimal canon of a matrix")
    p.add_argument("--from-canon", metavar="L", help="minimise the given canon (needs --maxima)")
    p.add_argument("--maxima", metavar="SIGMA", help="columns of transversal maxima of the given canon")
    p.add_argument("--from-maxima", metavar="SIGMA", help="minimal canon making these entries maxima")
    p.add_argument("--lower-bounds", metavar="C", help="minimal canon with ell_i >= c_i")

    p = add("cover", cmd_cover, "Jacobi cover (mu, nu) of a square matrix")
    p.add_argument("--transpose", action="store_true", help="use the transposed matrix")

    p = add("match", cmd_match, "maximum matching of a 0/1 matrix")
    p.add_argument("--algo", choices=("naive", "hk"), default="hk")

    p = add("koenig", cmd_koenig, "minimum line cover of a 0/1 matrix")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--row-max", action="store_true", help="cover with the largest row set")
    g.add_argument("--col-max", action="store_true", help="cover with the largest column set")

    p = add("blocks", cmd_blocks, "block decomposition of a square matrix")
    p.add_argument("--diagonal", action="store_true", help="connected components instead of a triangular order")

    p = add("analyze", cmd_analyze, "full structural report of a system", "SYSTEM")
    p.add_argument("--weak", action="store_true", help="absent unknowns count as order 0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=8)

    add("plan", cmd_plan, "differentiation counts and stages", "SYSTEM")

    p = add("reduce1", cmd_reduce1, "order matrix of the first-order reduction", "SYSTEM")
    p.add_argument("--exact", action="store_true", help="substitute into the equations instead of assuming dense support")

    p = add("ordering-bound", cmd_ordering_bound, "derivatives needed for an ordering change", "SYSTEM")
    p.add_argument("--target", required=True, metavar="F", help="target orders f_i")

    p = add("resolvent", cmd_resolvent, "order bounds for a resolvent", "SYSTEM")
    p.add_argument("--pivot", type=int, required=True, metavar="J0")
    p.add_argument("--D", type=int, default=0, metavar="N")

    add("lindet", cmd_lindet, "operator determinant of a linear constant-coefficient system", "SYSTEM")

    p = add("graph", cmd_graph, "shortest-path form of a matrix")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--to-graph", action="store_true", help="print the weighted edge list")
    g.add_argument("--roundtrip", action="store_true", help="compare shortest paths with the minimal canon")
    g.add_argument("--from-graph", action="store_true", help="read an edge list and print a matrix")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # usage errors are validation failures (exit 1); 2 is reserved for infeasibility
        return 0 if exc.code in (0, None) else 1
    try:
        payload, lines = args.func(args)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (JacobiError, ValueError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(payload))
    else:
        print("\n".join(lines))
    return 0


def main() -> None:
    sys.exit(run())
