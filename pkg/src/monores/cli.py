"""Command-line front end.

Exit status: 0 when every verdict holds, 1 when one fails, 2 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import monomial as mono
from .complexes import betti_numbers, reg_pd
from .exceptions import MonoresError
from .experiments import counterexample_check, run_scenario
from .field import DEFAULT_CHARACTERISTIC, FieldConfig
from .star import check_bounds, resolve_product
from .taylor import DEFAULT_MAX_GENS, resolve


def _global_options(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--char", type=int, default=default(DEFAULT_CHARACTERISTIC),
                        metavar="P", help="prime characteristic of the coefficient field")
    parser.add_argument("--field", choices=["prime", "rational"], default=default("prime"),
                        help="use 'rational' for the rationals")
    parser.add_argument("--max-gens", type=int, default=default(DEFAULT_MAX_GENS),
                        help="largest generator count for Taylor complexes")
    parser.add_argument("--format", choices=["table", "json"], default=default("table"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monores",
        description="Free resolutions, Betti numbers and regularity of monomial ideals.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _global_options(p, suppress=True)
        return p

    for name, help_ in (("reg", "regularity and projective dimension"),
                        ("betti", "multigraded Betti table")):
        p = add(name, help_)
        p.add_argument("ideal", help="e.g. 'x1^2*x2, x2*x3'")
        p.add_argument("--as", dest="as_", choices=["quotient", "ideal"], default="ideal")

    p = add("arith", "sum, product or intersection of two ideals")
    p.add_argument("op", choices=["sum", "product", "intersect"])
    p.add_argument("operands", nargs="+", help="'<idealA> ; <idealB>'")

    p = add("star", "star-product resolution of M/IM with certification")
    p.add_argument("--i", dest="ideal_i", required=True)
    p.add_argument("--m", dest="module", required=True,
                   help="quotient:<ideal> for S/J or ideal:<ideal> for J")

    p = add("verify", "run a randomized scenario")
    p.add_argument("scenario", choices=["disjoint", "overlap1", "overlap2"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    add("counterexample", "recompute the two-shared-variable counterexample")
    return parser


def _field(args) -> FieldConfig:
    if args.field == "rational":
        return FieldConfig.rationals()
    return FieldConfig.prime(args.char)


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _split_two(operands) -> tuple[str, str]:
    parts = " ".join(operands).split(";")
    if len(parts) != 2:
        raise MonoresError("expected two ideals separated by ';'")
    return parts[0], parts[1]


def _cmd_reg(args, f):
    I = mono.parse_ideal(args.ideal)
    table = betti_numbers(resolve(I, args.as_, f, args.max_gens), f, check=False)
    reg, pd = reg_pd(table)
    payload = {"ideal": mono.format_ideal(I), "as": args.as_, "field": f.name,
               "reg": reg, "pd": pd}
    _emit(args, payload, f"{payload['ideal']} as {args.as_} over {f.name}: reg {reg}, pd {pd}")
    return 0


def _cmd_betti(args, f):
    I = mono.parse_ideal(args.ideal)
    table = betti_numbers(resolve(I, args.as_, f, args.max_gens), f, check=False)
    payload = {"ideal": mono.format_ideal(I), "as": args.as_, **table.to_dict()}
    _emit(args, payload, table.format())
    return 0


def _cmd_arith(args, f):
    a, b = mono.parse_ideals(_split_two(args.operands))
    op = {"sum": mono.ideal_sum, "product": mono.ideal_product,
          "intersect": mono.ideal_intersection}[args.op]
    result = op(a, b)
    payload = {"op": args.op, "A": mono.format_ideal(a), "B": mono.format_ideal(b),
               "result": mono.format_ideal(result)}
    _emit(args, payload, payload["result"])
    return 0


def _cmd_star(args, f):
    kind, _, text = args.module.partition(":")
    if kind not in ("quotient", "ideal") or not text:
        raise MonoresError("--m must look like quotient:<ideal> or ideal:<ideal>")
    I, J = mono.parse_ideals([args.ideal_i, text])
    _, report = resolve_product(I, J, kind, f, args.max_gens)
    bounds = check_bounds(I, J, kind, f)
    payload = {"verification": report.to_dict(), "bounds": bounds.to_dict()}
    b = bounds.to_dict()
    text_out = "\n".join([
        f"I = ({report.I}), M = {report.M}, field {report.field}",
        f"star complex ranks {report.ranks} (length {report.length})",
        f"  validate {report.valid}, acyclic {report.acyclic}, "
        f"H0 Hilbert agreement {report.h0_agrees} on {report.degrees_checked} degrees",
        f"  pd(M/IM) = {b['pd']['M/IM']} <= pd(M) + pd(I) + 1 = "
        f"{bounds.pd_M + bounds.pd_I + 1}: {bounds.verdict_pd}",
        f"  reg(IM) = {bounds.reg_IM} <= reg(I) + reg(M) = "
        f"{bounds.reg_I + bounds.reg_M}: {bounds.verdict_reg}",
    ])
    _emit(args, payload, text_out)
    return 0 if report.ok and bounds.verdict_pd and bounds.verdict_reg else 1


def _cmd_verify(args, f):
    report = run_scenario(args.scenario, args.trials, args.seed, f, args.max_gens)
    _emit(args, report.to_dict(), report.summary())
    return 0 if report.all_pass else 1


def _cmd_counterexample(args, f):
    check = counterexample_check(f, args.max_gens)
    lines = [f"I = ({check['I']}), J = ({check['J']}), field {check['field']}",
             f"overlap of generator supports: {', '.join(check['overlap'])}"]
    for name in ("I", "J", "IJ"):
        table = check["tables"][name]
        rows = [" + ".join(f"{t['rank']}@{t['degree']}" for t in table if t["i"] == i)
                for i in range(max(t["i"] for t in table) + 1)]
        lines.append(f"  {name:<3} reg {check['reg'][name]}  resolution: " + " | ".join(rows))
    lines.append(f"reg(IJ) <= reg(I) + reg(J): {check['reg_bound_holds']}")
    lines.append(f"regularity triple reproduced: {check['reg_reproduced']}")
    for m in check["table_mismatches"]:
        lines.append(f"  MISMATCH {m['ideal']} i={m['i']} degree {m['degree']}: "
                     f"expected {m['expected']}, computed {m['got']}")
    lines.append(f"Betti tables reproduced: {check['tables_reproduced']}")
    _emit(args, check, "\n".join(lines))
    return 0 if check["reg_reproduced"] and check["tables_reproduced"] else 1


COMMANDS = {"reg": _cmd_reg, "betti": _cmd_betti, "arith": _cmd_arith, "star": _cmd_star,
            "verify": _cmd_verify, "counterexample": _cmd_counterexample}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        f = _field(args)
        return COMMANDS[args.command](args, f)
    except MonoresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
