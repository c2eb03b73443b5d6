"""Command-line front end.

Exit codes: 0 success, 1 strict-mode verification failure or I/O error,
2 argument or parse errors, 3 multi-component (non-knot) input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .braid import BraidParseError, BraidWord, FamilySpec, parse_braid
from .gauss import MultiComponentError, emit_gauss_code, gauss_from_closure
from .invariants import p_invariant, poly_to_string, u_invariant, vu_lower_bound
from .search import (default_table_pairs, scan_torus_virtualizations,
                     summarize_scan, table_to_csv, table_vt2)
from .unknotting import (NotAKnotError, unknotting_sequence, verify_row,
                         verify_theorem2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vknot",
        description="Invariants and unknotting sequences of virtual braid closures.")
    sub = parser.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants",
                         help="compute invariants of a braid closure")
    source = inv.add_mutually_exclusive_group(required=True)
    source.add_argument("--braid", help='braid word, e.g. "v1 v2 1 2"')
    source.add_argument("--family", help="family spec vt:P,Q,N or ijk:I,J,K")
    inv.add_argument("--strands", type=int,
                     help="strand count for --braid (default: inferred)")
    inv.add_argument("--p", action="store_true", help="print the P polynomial")
    inv.add_argument("--u", action="store_true", help="print the u polynomial")
    inv.add_argument("--bound", action="store_true",
                     help="print the crossing-change lower bound")
    inv.add_argument("--gauss-code", action="store_true",
                     help="print the Gauss code")
    inv.add_argument("--json", action="store_true")
    inv.set_defaults(func=cmd_invariants)

    seq = sub.add_parser("unknot-seq",
                         help="print an explicit unknotting sequence")
    seq.add_argument("i", type=int)
    seq.add_argument("j", type=int)
    seq.add_argument("k", type=int)
    seq.add_argument("--verify", action="store_true",
                     help="re-check bounds, components, and u per state")
    seq.add_argument("--json", action="store_true")
    seq.set_defaults(func=cmd_unknot_seq)

    table = sub.add_parser("table",
                           help="tabulate lower-bound half-sums as CSV")
    table.add_argument("target", choices=["vt2"])
    table.add_argument("--max-p", type=int, default=8)
    table.add_argument("--csv", metavar="PATH",
                       help="write to PATH instead of stdout")
    table.set_defaults(func=cmd_table)

    scan = sub.add_parser("scan",
                          help="scan virtualization subsets of a torus braid")
    scan.add_argument("--p", type=int, required=True)
    scan.add_argument("--q", type=int, required=True)
    scan.add_argument("--limit", type=int,
                      help="stop after this many subsets")
    scan.add_argument("--nonzero-u", action="store_true",
                      help="emit only knot records with nonzero u")
    scan.add_argument("--jsonl", metavar="PATH",
                      help="write records to PATH instead of stdout")
    scan.set_defaults(func=cmd_scan)

    verify = sub.add_parser("verify",
                            help="re-derive the unknotting-number equalities")
    verify.add_argument("target", choices=["theorem2"])
    verify.add_argument("--max-i", type=int, default=12)
    verify.add_argument("--workers", type=int)
    verify.add_argument("--strict", action="store_true",
                        help="exit 1 when any row fails")
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(func=cmd_verify)
    return parser


def _resolve_word(args: argparse.Namespace) -> BraidWord:
    if args.family is not None:
        if args.strands is not None:
            raise BraidParseError("--strands only applies to --braid")
        return FamilySpec.parse(args.family).build()
    return parse_braid(args.braid, args.strands)


def cmd_invariants(args: argparse.Namespace) -> int:
    word = _resolve_word(args)
    diagram = gauss_from_closure(word)
    selected = [name for name, wanted in (
        ("p", args.p), ("u", args.u), ("bound", args.bound),
        ("gauss_code", args.gauss_code)) if wanted]
    if not selected:
        selected = ["p", "u", "bound", "gauss_code"]
    values: dict = {}
    if "p" in selected:
        values["p"] = p_invariant(diagram)
    if "u" in selected:
        values["u"] = u_invariant(diagram)
    if "bound" in selected:
        values["bound"] = vu_lower_bound(diagram)
    if "gauss_code" in selected:
        values["gauss_code"] = emit_gauss_code(diagram)
    if args.json:
        payload = {name: (values[name].to_json_dict() if name in ("p", "u")
                          else values[name]) for name in selected}
        print(json.dumps(payload, sort_keys=True))
        return 0
    if selected == ["bound"]:
        print(values["bound"])
        return 0
    labels = {"p": "P", "u": "u", "bound": "bound", "gauss_code": "gauss"}
    for name in selected:
        value = values[name]
        if name in ("p", "u"):
            value = poly_to_string(value)
        print(f"{labels[name]} = {value}")
    return 0


def cmd_unknot_seq(args: argparse.Namespace) -> int:
    sequence = unknotting_sequence(args.i, args.j, args.k)
    check = verify_row(args.i, args.j, args.k) if args.verify else None
    if args.json:
        payload = sequence.to_json_dict()
        if check is not None:
            payload["verify"] = check.to_json_dict()
        print(json.dumps(payload, sort_keys=True))
        return 0
    for step in sequence.steps:
        print(f"{step.kind.value} {step.before} -> {step.after} "
              f"changes={step.changes}")
    print(f"total = {sequence.total_changes}")
    print(f"ops = {sequence.op_count}")
    if check is not None:
        print("verify: ok" if check.passed else f"verify: FAIL ({check.detail})")
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    rows = table_vt2(default_table_pairs(args.max_p))
    text = table_to_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    records = list(scan_torus_virtualizations(args.p, args.q, args.limit))
    summary = summarize_scan(records)
    lines = []
    for record in records:
        if args.nonzero_u and not record.has_nonzero_u:
            continue
        lines.append(json.dumps(record.to_json_dict(), sort_keys=True))
    lines.append(json.dumps({"summary": summary.to_json_dict()},
                            sort_keys=True))
    text = "\n".join(lines) + "\n"
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_theorem2(args.max_i, workers=args.workers)
    if args.json:
        print(json.dumps(report.to_json_rows(), sort_keys=True))
    else:
        sys.stdout.write(report.format_table())
    if args.strict and not report.all_passed:
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MultiComponentError, NotAKnotError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 3
    except (BraidParseError, ValueError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 2
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
