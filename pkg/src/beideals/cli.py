"""Command-line front end.

Exit codes: 0 pass, 1 violation or negative verdict, 2 input error,
3 two methods disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import BEAlgebra, InputError, NotABEAlgebra, PreconditionError
from .campaign import CampaignConfig, campaign_exit_code, run_campaign
from .ek import METHODS, decide
from .ideals import enumerate_ideals, is_ideal_def
from .io import algebra_doc, check_algebra_file, dump_algebra, load_algebra, load_function, parse_subset, subset_labels
from .nstructures import check_k, critical_thresholds, cut, fmt, is_n_ideal
from .search import EnumerationConfig, enumerate_tables

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2, 3


def _witness_text(A, witness) -> str:
    """Render a witness dict with element labels in place of indices."""
    parts = []
    for key, val in (witness or {}).items():
        if key in ("x", "y", "z", "s", "q") and isinstance(val, int):
            val = A.names[val]
        elif key in ("cut", "set") and isinstance(val, list):
            val = "{" + ",".join(A.names[i] for i in val) + "}"
        elif key == "t":
            val = fmt(val)
        elif isinstance(val, dict):
            val = "(" + _witness_text(A, val) + ")"
        parts.append(f"{key}={val}")
    return " ".join(parts)


def cmd_check_algebra(args) -> int:
    report = check_algebra_file(args.algebra)
    for axiom in ("V1", "V2", "V3", "V4"):
        w = report.labelled(axiom)
        print(f"{axiom}: pass" if w is None else f"{axiom}: FAIL witness={','.join(w)}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_check_ideal(args) -> int:
    A = load_algebra(args.algebra)
    I = parse_subset(A, args.subset)
    v = is_ideal_def(A, I)
    print("ideal" if v.ok else "not an ideal")
    if not v.ok:
        print(f"violation: {_witness_text(A, v.witness)}", file=sys.stderr)
    return EXIT_PASS if v.ok else EXIT_FAIL


def cmd_check_n_ideal(args) -> int:
    A = load_algebra(args.algebra)
    f = load_function(A, args.function)
    v = is_n_ideal(f)
    print("N-ideal" if v.ok else "not an N-ideal")
    if not v.ok:
        print(f"violation: {_witness_text(A, v.witness)}", file=sys.stderr)
    return EXIT_PASS if v.ok else EXIT_FAIL


def cmd_check_ek_ideal(args) -> int:
    A = load_algebra(args.algebra)
    f = load_function(A, args.function)
    k = check_k(args.k)
    methods = METHODS if args.method == "all" else (args.method,)
    verdicts = {}
    for m in methods:
        try:
            verdicts[m] = decide(f, k, m)
        except PreconditionError as e:
            if args.method != "all":
                raise
            print(f"{m}: skipped ({e})")
    for m, v in verdicts.items():
        line = f"{m}: {'true' if v.ok else 'false'}"
        if not v.ok:
            line += f"  [{_witness_text(A, v.witness)}]"
        print(line)
    outcomes = {v.ok for v in verdicts.values()}
    if len(outcomes) > 1:
        doc = {
            "algebra": algebra_doc(A),
            "function": f.as_mapping(),
            "k": fmt(k),
            "verdicts": {m: v.ok for m, v in verdicts.items()},
            "witnesses": {m: _witness_text(A, v.witness) for m, v in verdicts.items() if not v.ok},
        }
        path = Path(args.report)
        path.write_text(json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        print(f"methods disagree; counterexample written to {path}", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_PASS if outcomes == {True} else EXIT_FAIL


def cmd_ideals(args) -> int:
    A = load_algebra(args.algebra)
    for I in enumerate_ideals(A):
        print("{" + ",".join(subset_labels(A, I)) + "}")
    return EXIT_PASS


def cmd_cuts(args) -> int:
    A = load_algebra(args.algebra)
    f = load_function(A, args.function)
    grid = critical_thresholds(f)
    print("breakpoints: " + " ".join(fmt(b) for b in grid.breakpoints))
    for lo, hi, _ in grid.intervals():
        C = cut(f, lo)
        print(f"[{fmt(lo)}, {fmt(hi)}): {{{','.join(subset_labels(A, C))}}}")
    C = cut(f, 0)
    print(f"t = 0: {{{','.join(subset_labels(A, C))}}}")
    return EXIT_PASS


def cmd_enumerate(args) -> int:
    filt = "transitive" if args.transitive else "self-distributive" if args.self_distributive else "none"
    config = EnumerationConfig(
        size=args.size, filter=filt, up_to_iso=args.up_to_iso, count_only=args.count_only,
        out=args.out, size_cap=args.size_cap, workers=args.workers,
    )
    tables = enumerate_tables(config)
    if config.count_only:
        print(len(tables))
        return EXIT_PASS
    if config.out:
        out = Path(config.out)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(len(tables)))
        for i, t in enumerate(tables):
            dump_algebra(BEAlgebra.from_table(t), out / f"be{config.size}_{i:0{width}d}.json")
        print(f"{len(tables)} algebras written to {out}")
        return EXIT_PASS
    for t in tables:
        print(json.dumps(algebra_doc(BEAlgebra.from_table(t)), ensure_ascii=False))
    return EXIT_PASS


def cmd_verify(args) -> int:
    doc = {}
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read config {args.config}: {e}") from None
    if args.workers is not None:
        doc["workers"] = args.workers
    config = CampaignConfig.from_dict(doc)
    report = run_campaign(config)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for name, t in report.tallies.items():
        print(f"{name}: checked={t['checked']} passed={t['passed']} vacuous={t['vacuous']} violations={t['violations']}", file=sys.stderr)
    return campaign_exit_code(report)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beideals", description="Decide ideal notions on finite BE-algebras and verify theorems over small ones.")
    sub = p.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide one property")
    csub = check.add_subparsers(dest="what", required=True)
    c = csub.add_parser("algebra", help="check the BE-algebra axioms")
    c.add_argument("algebra")
    c.set_defaults(func=cmd_check_algebra)
    c = csub.add_parser("ideal", help="is a subset an ideal")
    c.add_argument("algebra")
    c.add_argument("--subset", required=True, help="comma-separated element labels")
    c.set_defaults(func=cmd_check_ideal)
    c = csub.add_parser("n-ideal", help="is an N-function an N-ideal")
    c.add_argument("algebra")
    c.add_argument("--function", required=True)
    c.set_defaults(func=cmd_check_n_ideal)
    c = csub.add_parser("ek-ideal", help="is an N-function an ([e],[e]v[c_k])-ideal")
    c.add_argument("algebra")
    c.add_argument("--function", required=True)
    c.add_argument("--k", required=True, help="k in (-1, 0], as a decimal or p/q")
    c.add_argument("--method", choices=METHODS + ("all",), default="all")
    c.add_argument("--report", default="ek_disagreement.json", help="where to write a counterexample if methods disagree")
    c.set_defaults(func=cmd_check_ek_ideal)

    c = sub.add_parser("ideals", help="list every ideal")
    c.add_argument("algebra")
    c.set_defaults(func=cmd_ideals)

    c = sub.add_parser("cuts", help="print the cut on each threshold interval")
    c.add_argument("algebra")
    c.add_argument("--function", required=True)
    c.set_defaults(func=cmd_cuts)

    c = sub.add_parser("enumerate", help="enumerate BE-algebras of one size")
    c.add_argument("--size", type=int, required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--transitive", action="store_true")
    g.add_argument("--self-distributive", action="store_true")
    c.add_argument("--up-to-iso", action="store_true")
    c.add_argument("--count-only", action="store_true")
    c.add_argument("--out")
    c.add_argument("--size-cap", type=int, default=6)
    c.add_argument("--workers", type=int, default=1)
    c.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("verify-theorems", help="run a verification campaign")
    c.add_argument("--config", help="JSON campaign settings")
    c.add_argument("--out", help="report path (default: stdout)")
    c.add_argument("--workers", type=int)
    c.set_defaults(func=cmd_verify)
    return p


def _join_negative_values(argv: list) -> list:
    # argparse takes "-1/2" for an option flag
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--k" and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"--k={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_PASS
    try:
        return args.func(args)
    except (InputError, NotABEAlgebra, PreconditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
