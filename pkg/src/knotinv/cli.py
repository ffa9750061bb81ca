"""Command-line interface.

Exit codes: 0 success, 2 domain error (unknown knot, pole, bad point ...),
1 usage error.  Errors are reported as a single line on stderr; with
``--json`` the same information is also printed as a JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .descriptors import parse_descriptor
from .errors import DescriptorSyntaxError, DomainError
from .hatops import bar_op, hat_op, rank_report, star_op
from .knotcore import singularize
from .polyalg import to_text
from .scalars import DEFAULT_TOL, parse_scalar, scalar_to_json, format_scalar
from .skein import DEFAULT_MAX_CROSSINGS, SkeinEngine
from .table import KnotTable, load_table
from .vassiliev import (
    DEFAULT_WITNESSES,
    PolyBundle,
    criterion_point,
    eval_invariant,
    eval_singular,
    growth_sequence,
    homfly_locus,
    intersect_points,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def split_top_level(text: str, sep: str) -> list[str]:
    """Split on ``sep`` outside parentheses (descriptors contain ``;``)."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _names(text: str) -> list[str]:
    return [p.strip() for p in text.split(",") if p.strip()]


def parse_point(text: str) -> dict[str, object]:
    """``a=EXPR,z=EXPR`` -> {"a": scalar, "z": scalar}."""
    out = {}
    for part in _names(text):
        if "=" not in part:
            raise DescriptorSyntaxError(f"expected NAME=EXPR in {part!r}", text, text.find(part))
        name, expr = part.split("=", 1)
        out[name.strip()] = parse_scalar(expr.strip())
    return out


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in _names(text)]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands: each returns (human text, JSON-able dict)
# ---------------------------------------------------------------------------

WHICH = ("homfly", "kauffman", "jones", "conway", "alexander", "q")


def cmd_poly(args, table: KnotTable, engine: SkeinEngine):
    K = table.knot(args.knot)
    p = PolyBundle(K, engine).get(args.which)
    text = to_text(p)
    return text, {
        "knot": args.knot,
        "which": args.which,
        "variables": list(p.variables),
        "terms": [[[format_scalar(e) for e in exps], scalar_to_json(c)] for exps, c in p.sorted_terms()],
        "polynomial": text,
    }


def cmd_eval(args, table, engine):
    v = parse_descriptor(args.inv)
    value = eval_invariant(v, table.knot(args.knot), engine)
    return format_scalar(value), {"descriptor": str(v), "knot": args.knot, "value": scalar_to_json(value)}


def cmd_growth(args, table, engine):
    r = growth_sequence(parse_descriptor(args.inv), table.knot(args.base), table.knot(args.pattern),
                        i_max=args.imax, n=args.degree, engine=engine, tol=args.tol)
    return str(r), r.to_json()


def cmd_criterion(args, table, engine):
    point = parse_point(args.point)
    unknown = set(point) - {"a", "z"}
    if unknown or len(point) != 2:
        raise DescriptorSyntaxError("point must assign exactly a and z", args.point, 0)
    orders = _int_list(args.orders)
    if len(orders) != 2 or min(orders) < 0:
        raise UsageError("--orders takes two nonnegative integers m,n")
    names = _names(args.witnesses) if args.witnesses else list(DEFAULT_WITNESSES)
    witnesses = {name: table.knot(name) for name in names}
    r = criterion_point((point["a"], point["z"]), tuple(orders), witnesses, engine, args.tol)
    return str(r), r.to_json()


def cmd_locus(args, table, engine):
    names = _names(args.knot)
    reports = [homfly_locus(table.knot(n), n, engine) for n in names]
    lines = []
    for r in reports:
        lines.append(f"{r.name}:")
        lines.extend("  " + line for line in str(r).splitlines())
    payload = {"loci": [r.to_json() for r in reports]}
    if len(reports) > 1:
        common = intersect_points(*(r.union for r in reports))
        lines.append("intersection: {" + ", ".join(format_scalar(z) for z in common) + "}")
        payload["intersection"] = [[z.real, z.imag] for z in common]
    return "\n".join(lines), payload


def cmd_hat(args, table, engine):
    v = parse_descriptor(args.inv)
    K = table.knot(args.knot)
    chosen = [x for x in (args.bar, args.star, args.patterns) if x is not None]
    if len(chosen) > 1:
        raise UsageError("give at most one of --bar, --star, --patterns")
    if args.bar is not None:
        r = bar_op(v, args.degree, table.knot(args.bar), K, engine)
    elif args.star is not None:
        r = star_op(v, args.degree, table.knot(args.star), K, engine)
    else:
        patterns = [table.knot(n) for n in _names(args.patterns or "")]
        r = hat_op(v, args.degree, K, patterns, engine)
    return str(r), r.to_json()


def cmd_rank(args, table, engine):
    invs = split_top_level(args.invs, ";")
    names = _names(args.knots)
    if not invs or not names:
        raise UsageError("--invs and --knots must be nonempty")
    r = rank_report([parse_descriptor(s) for s in invs], [table.knot(n) for n in names], engine, names)
    return str(r), r.to_json()


def cmd_singular(args, table, engine):
    v = parse_descriptor(args.inv)
    D = table.knot(args.knot).diagram()
    points = _int_list(args.points)
    S = None
    for idx in points:
        S = singularize(S if S is not None else D, idx)
    if S is None:
        raise UsageError("--points must name at least one crossing")
    value = eval_singular(v, S, engine)
    return format_scalar(value), {
        "descriptor": str(v),
        "knot": args.knot,
        "double_points": sorted(S.double_points),
        "value": scalar_to_json(value),
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knotinv", description="Knot polynomials, their derivatives, and finite-type tests.")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--table", default=None, help="knot table path (default: $KNOTTABLE or bundled)")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        return sp

    sp = add("poly", cmd_poly, "print a knot polynomial")
    sp.add_argument("--knot", required=True)
    sp.add_argument("--which", required=True, choices=WHICH)

    sp = add("eval", cmd_eval, "evaluate a descriptor on a knot")
    sp.add_argument("--inv", required=True)
    sp.add_argument("--knot", required=True)

    sp = add("growth", cmd_growth, "values along K # L^i and a degree test")
    sp.add_argument("--inv", required=True)
    sp.add_argument("--base", required=True)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--imax", type=int, default=None)
    sp.add_argument("--degree", type=int, default=None)

    sp = add("criterion", cmd_criterion, "witness test for HOMFLY derivatives at a point")
    sp.add_argument("--point", required=True)
    sp.add_argument("--orders", required=True)
    sp.add_argument("--witnesses", default=None)

    sp = add("locus", cmd_locus, "exceptional points of P_K(a, 0)")
    sp.add_argument("--knot", required=True)

    sp = add("hat", cmd_hat, "bar, star or hat interpolation")
    sp.add_argument("--inv", required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--knot", required=True)
    sp.add_argument("--bar", default=None)
    sp.add_argument("--star", default=None)
    sp.add_argument("--patterns", default=None)

    sp = add("rank", cmd_rank, "rank of an invariant/knot evaluation matrix")
    sp.add_argument("--invs", required=True)
    sp.add_argument("--knots", required=True)

    sp = add("singular", cmd_singular, "evaluate a descriptor on a singular knot")
    sp.add_argument("--inv", required=True)
    sp.add_argument("--knot", required=True)
    sp.add_argument("--points", required=True)
    return p


def _emit_error(kind: str, message: str, as_json: bool, out, err) -> None:
    message = " ".join(str(message).split())
    print(f"error: {kind}: {message}", file=err)
    if as_json:
        print(json.dumps({"error": {"code": kind, "message": message}}), file=out)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
    except UsageError as exc:
        _emit_error("UsageError", str(exc), as_json, out, err)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        table = load_table(args.table)
        engine = SkeinEngine(max_crossings=args.max_crossings)
        text, payload = args.func(args, table, engine)
    except UsageError as exc:
        _emit_error("UsageError", str(exc), as_json, out, err)
        return 1
    except DomainError as exc:
        _emit_error(exc.code, str(exc), as_json, out, err)
        return 2
    except FileNotFoundError as exc:
        _emit_error("FileNotFound", str(exc), as_json, out, err)
        return 2
    if args.json:
        payload = dict(payload)
        payload["text"] = text
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(text, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
