"""Command-line interface.

Exit codes: 0 when the commutative closure is regular (or the command
succeeded), 2 when the verdict is NOT_REGULAR (a successful decision, not a
failure), 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automata, pipeline, series


def _add_common(sub):
    sub.add_argument("regex", help="regular expression "
                     "(letters a-z, |, *, parentheses, _ empty word, "
                     "# empty set)")
    sub.add_argument("--alphabet", help="explicit alphabet letters, e.g. abc")
    sub.add_argument("--dump-semilinear", action="store_true",
                     help="include semilinear dumps in text output")
    sub.add_argument("--dump-resimple", action="store_true",
                     help="include the resimple system in text output")
    sub.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commclose",
        description="Decide whether the commutative closure of a regular "
                    "language is regular and build its DFA.")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("build", help="run the full pipeline, export the DFA")
    _add_common(b)
    b.add_argument("--min", action="store_true", dest="minimized",
                   help="export the minimized automaton")
    b.add_argument("--dot", metavar="PATH", help="write DOT export")
    b.add_argument("--json", metavar="PATH", dest="json_path",
                   help="write JSON export")

    s = subs.add_parser("series", help="print the characteristic series")
    _add_common(s)

    d = subs.add_parser("decide", help="print just the verdict")
    _add_common(d)

    o = subs.add_parser("oracle", help="brute-force closure enumeration")
    _add_common(o)
    o.add_argument("--max-len", type=int, default=6)

    v = subs.add_parser("verify", help="compare the DFA with the oracle")
    _add_common(v)
    v.add_argument("--max-len", type=int, default=8)

    r = subs.add_parser("report", help="write report files and figures")
    _add_common(r)
    r.add_argument("--out", required=True, metavar="DIR")
    r.add_argument("--radius", type=int, default=12,
                   help="box radius for the membership figure")

    return parser


def _verdict_exit(report) -> int:
    return 0 if report.verdict == pipeline.REGULAR else 2


def _emit_report(report, args) -> None:
    if args.format == "json":
        print(json.dumps(report.to_json_obj(), indent=1))
    else:
        print(report.to_text(dump_semilinear=args.dump_semilinear,
                             dump_resimple=args.dump_resimple))


def cmd_build(args) -> int:
    report = pipeline.run_pipeline(args.regex, args.alphabet)
    _emit_report(report, args)
    if report.verdict != pipeline.REGULAR:
        return 2
    dfa = report.dfa_min if args.minimized else report.dfa_raw
    if args.dot:
        Path(args.dot).write_text(automata.export_dot(dfa))
    if args.json_path:
        Path(args.json_path).write_text(automata.export_json(dfa))
    return 0


def cmd_series(args) -> int:
    report = pipeline.run_pipeline(args.regex, args.alphabet)
    if args.format == "json":
        print(json.dumps(report.to_json_obj(), indent=1))
        return _verdict_exit(report)
    print(series.format_fraction(report.raw_fraction.numerator,
                                 report.raw_fraction.denominator))
    if report.reduced is not None:
        print("reduced: %s" % series.format_fraction(
            report.reduced.numerator, report.reduced.denominator))
    else:
        names = series.variable_names(len(report.alphabet))
        print("not recognizable, witness factor %s"
              % series.format_factor(report.witness, names))
    return _verdict_exit(report)


def cmd_decide(args) -> int:
    report = pipeline.run_pipeline(args.regex, args.alphabet)
    if args.format == "json":
        obj = {"regex": report.regex, "verdict": report.verdict}
        if report.witness is not None:
            obj["witness_factor"] = list(report.witness)
        print(json.dumps(obj, indent=1))
    else:
        line = report.verdict
        if report.witness is not None:
            line += " witness exponents %s" % (list(report.witness),)
        print(line)
    return _verdict_exit(report)


def cmd_oracle(args) -> int:
    words = sorted(pipeline.brute_closure(args.regex, args.max_len,
                                          args.alphabet),
                   key=lambda w: (len(w), w))
    if args.format == "json":
        print(json.dumps({"regex": args.regex, "max_len": args.max_len,
                          "words": words}, indent=1))
    else:
        for w in words:
            print(w if w else "_")
    return 0


def cmd_verify(args) -> int:
    report = pipeline.run_pipeline(args.regex, args.alphabet)
    if report.verdict != pipeline.REGULAR:
        print("verify requires a REGULAR verdict; %s is %s"
              % (args.regex, report.verdict), file=sys.stderr)
        return 1
    result = pipeline.verify(args.regex, args.max_len, args.alphabet,
                             report=report)
    if args.format == "json":
        print(json.dumps({"regex": result.regex, "max_len": result.max_len,
                          "checked": result.checked, "ok": result.ok,
                          "counterexample": result.counterexample},
                         indent=1))
    else:
        print(result.to_text())
    return 0 if result.ok else 1


def cmd_report(args) -> int:
    from . import report as report_mod
    rep = pipeline.run_pipeline(args.regex, args.alphabet)
    written = report_mod.write_report(rep, args.out, radius=args.radius)
    _emit_report(rep, args)
    for path in written:
        print("wrote %s" % path)
    return _verdict_exit(rep)


COMMANDS = {
    "build": cmd_build,
    "series": cmd_series,
    "decide": cmd_decide,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except pipeline.StageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except (ValueError, RuntimeError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
