"""Command-line driver: ``modewise analyze FILE``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .abstraction import AnalysisError
from .analysis import AnalysisResult, analyze_source
from .builtins import BuiltinSpecError, default_table, load_table
from .frontend.reader import PrologSyntaxError, UnsupportedConstruct
from .interpreter.sampling import Oracle, sample_and_check
from .pos.domain import PosContext
from .pos.syntax import format_formula

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modewise", description="Groundness mode inference for Prolog programs.")
    sub = ap.add_subparsers(dest="command", required=True)
    an = sub.add_parser("analyze", help="infer call and success modes for every predicate")
    an.add_argument("file", type=Path)
    an.add_argument("--format", choices=("text", "json"), default="text")
    an.add_argument("--dump-lfp", action="store_true", help="print every success-pattern iterate")
    an.add_argument("--dump-gfp", action="store_true", help="print every call-pattern iterate")
    an.add_argument("--builtins", type=Path, metavar="FILE", help="extra builtin mode entries, overriding the defaults")
    an.add_argument("--check", type=int, default=0, metavar="N", help="run N random queries per predicate on the interpreter")
    an.add_argument("--seed", type=int, default=0)
    an.add_argument("--max-depth", type=int, default=128)
    an.add_argument("--timing", action="store_true", help="report per-phase times in milliseconds")
    an.add_argument("--allow-unknown", action="store_true", help="treat unmodelled builtins as never safe instead of failing")
    an.add_argument("--strategy", choices=("naive", "worklist"), default="naive")
    return ap


def _table(path: Path | None):
    table = default_table(PosContext())
    if path is not None:
        table.update(load_table(path.read_text(encoding="utf-8"), PosContext()))
    return table


def _check(res: AnalysisResult, n: int, seed: int, max_depth: int, err) -> int:
    # runtime errors follow the standard table even when --builtins relaxed it
    oracle = Oracle.from_analysis(res, seed, default_table(res.abstract.ctx))
    found = 0
    for p in res.user_predicates:
        mode = res.calls[p]
        if mode.is_false:
            print(f"check {report.pred_label(p)}: mode is false, skipped", file=err)
            continue
        rep = sample_and_check(oracle, p, mode, n=n, seed=seed, max_depth=max_depth)
        kinds = ", ".join(f"{k} {v}" for k, v in sorted(rep.outcomes.items()))
        print(f"check {report.pred_label(p)} [{format_formula(mode)}]: {kinds}", file=err)
        for q, e in rep.counterexamples:
            found += 1
            print(f"  counterexample: {q} reached {e.pred[0]}/{e.pred[1]} at {e.call}", file=err)
    return found


def cmd_analyze(args: argparse.Namespace, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        text = args.file.read_text(encoding="utf-8")
    except OSError as e:
        print(f"modewise: {e}", file=err)
        return EXIT_ERROR
    try:
        res = analyze_source(
            text, str(args.file), table=_table(args.builtins), allow_unknown=args.allow_unknown, strategy=args.strategy
        )
    except (PrologSyntaxError, UnsupportedConstruct) as e:
        print(f"modewise: {e}", file=err)
        return EXIT_ERROR
    except (AnalysisError, BuiltinSpecError) as e:
        print(f"modewise: {args.file}: {e}", file=err)
        return EXIT_ERROR
    for w in res.warnings:
        print(f"modewise: {args.file}: warning: {w}", file=err)

    if args.format == "json":
        out.write(report.to_json(res, timings=args.timing) + "\n")
    else:
        out.write(report.to_text(res, timing=args.timing, name=args.file.stem))
    preds = res.abstract.predicates
    if args.dump_lfp:
        out.write("\n".join(report.dump_trace(res.lfp_run.trace, preds, "F", 0)) + "\n")
    if args.dump_gfp:
        out.write("\n".join(report.dump_trace(res.gfp_run.trace, preds, "D", 0)) + "\n")

    if args.check > 0 and _check(res, args.check, args.seed, args.max_depth, err):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return cmd_analyze(args)
    return EXIT_ERROR  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
