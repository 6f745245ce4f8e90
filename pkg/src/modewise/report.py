"""Serialisation of analysis results as text tables and JSON."""

from __future__ import annotations

import json
from typing import Any, Iterable

from .analysis import AnalysisResult
from .pos.syntax import format_formula
from .tables import PatternTable, Pred

PHASES = ("abs", "lfp", "gfp", "sum")


def pred_label(p: Pred) -> str:
    return f"{p[0]}/{p[1]}"


def to_dict(res: AnalysisResult, timings: bool = True) -> dict[str, Any]:
    preds = [
        {
            "name": name,
            "arity": arity,
            "call_mode": format_formula(res.calls[(name, arity)]),
            "success_mode": format_formula(res.success[(name, arity)]),
        }
        for name, arity in res.user_predicates
    ]
    doc: dict[str, Any] = {
        "predicates": preds,
        "iterations": {"lfp": res.lfp_run.iterations, "gfp": res.gfp_run.iterations},
    }
    if timings:
        doc["timings_ms"] = {k: round(res.timings_ms.get(k, 0.0), 3) for k in PHASES}
    return doc


def to_json(res: AnalysisResult, timings: bool = True) -> str:
    return json.dumps(to_dict(res, timings), indent=2)


def mode_table(res: AnalysisResult) -> list[str]:
    rows = [(pred_label(p), format_formula(res.calls[p]), format_formula(res.success[p])) for p in res.user_predicates]
    header = ("predicate", "call mode", "success")
    w0 = max([len(header[0])] + [len(r[0]) for r in rows])
    w1 = max([len(header[1])] + [len(r[1]) for r in rows])
    lines = [f"{header[0]:<{w0}}  {header[1]:<{w1}}  {header[2]}"]
    lines += [f"{a:<{w0}}  {b:<{w1}}  {c}" for a, b, c in rows]
    return lines


def timing_header() -> str:
    return f"{'program':<16}" + "".join(f"{k:>10}" for k in PHASES)


def timing_row(name: str, timings_ms: dict[str, float]) -> str:
    """One row in the abs/lfp/gfp/sum layout, milliseconds."""
    return f"{name:<16}" + "".join(f"{timings_ms.get(k, 0.0):>10.1f}" for k in PHASES)


def dump_trace(trace: Iterable[PatternTable], preds: list[Pred], letter: str, start: int) -> list[str]:
    lines = []
    for j, table in enumerate(trace, start):
        lines.append(f"{letter}{j}:")
        lines += ["  " + line for line in table.format(preds)]
    return lines


def to_text(res: AnalysisResult, timing: bool = False, name: str = "") -> str:
    lines = mode_table(res)
    lines.append(f"iterations: lfp {res.lfp_run.iterations}, gfp {res.gfp_run.iterations}")
    if timing:
        lines += ["", timing_header(), timing_row(name or "program", res.timings_ms)]
    return "\n".join(lines) + "\n"
