"""Whole-program driver: parse, normalise, abstract, then both fixpoints."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

from .abstraction import AbstractProgram, abstract_source
from .builtins import BuiltinTable, default_table
from .frontend.reader import parse_program
from .frontend.terms import Program
from .gfp import gfp
from .lfp import FixpointResult, lfp
from .pos.domain import BoolFn, PosContext
from .tables import PatternTable, Pred


@dataclass
class AnalysisResult:
    program: Program
    abstract: AbstractProgram
    success: PatternTable
    calls: PatternTable
    lfp_run: FixpointResult
    gfp_run: FixpointResult
    table: BuiltinTable | None = None
    timings_ms: dict[str, float] = field(default_factory=dict)

    @property
    def user_predicates(self) -> list[Pred]:
        return self.abstract.user_predicates

    def call_mode(self, name: str, arity: int) -> BoolFn:
        return self.calls[(name, arity)]

    def success_mode(self, name: str, arity: int) -> BoolFn:
        return self.success[(name, arity)]

    @property
    def warnings(self) -> list[str]:
        return self.abstract.warnings


def analyze(
    abstract: AbstractProgram,
    program: Program | None = None,
    strategy: str = "naive",
    check: bool = True,
    table: BuiltinTable | None = None,
) -> AnalysisResult:
    t0 = time.perf_counter()
    fr = lfp(abstract, strategy, check)
    t1 = time.perf_counter()
    dr = gfp(abstract, fr.table, strategy, check)
    t2 = time.perf_counter()
    return AnalysisResult(
        program=program if program is not None else Program([], []),
        abstract=abstract,
        success=fr.table,
        calls=dr.table,
        lfp_run=fr,
        gfp_run=dr,
        table=table,
        timings_ms={"lfp": (t1 - t0) * 1e3, "gfp": (t2 - t1) * 1e3},
    )


def analyze_source(
    text: str,
    filename: str = "<string>",
    table: BuiltinTable | None = None,
    ctx: PosContext | None = None,
    allow_unknown: bool = False,
    strategy: str = "naive",
    check: bool = True,
) -> AnalysisResult:
    t0 = time.perf_counter()
    program = parse_program(text, filename)
    if table is None:
        table = default_table(ctx or PosContext())
    abstract = abstract_source(program, table, allow_unknown=allow_unknown)
    t1 = time.perf_counter()
    res = analyze(abstract, program, strategy, check, table)
    res.timings_ms = {"abs": (t1 - t0) * 1e3, **res.timings_ms}
    res.timings_ms["sum"] = sum(res.timings_ms.values())
    return res


def analyze_file(path: str | Path, **kw) -> AnalysisResult:
    p = Path(path)
    return analyze_source(p.read_text(encoding="utf-8"), str(p), **kw)
