"""Least fixpoint of success patterns.

Starting from the empty table, each iteration recomputes every predicate's
entry as the disjunction of its clauses' contributions under the previous
table.  A clause contributes its constraint conjoined with the success
patterns of its body atoms, existentially projected onto the head.
Assertions play no part here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abstraction import AbsCall, AbstractClause, AbstractProgram
from .pos.domain import BoolFn, entails, exists_set, rename
from .tables import PatternTable, Pred


def body_formula(lit: AbsCall, table: PatternTable) -> BoolFn:
    """The table entry for ``lit``'s predicate, renamed onto its arguments."""
    return rename(table[lit.pred], dict(enumerate(lit.args)))


def clause_success(cl: AbstractClause, table: PatternTable) -> BoolFn:
    g = cl.constraint
    for lit in cl.body:
        if isinstance(lit, AbsCall):
            s = table[lit.pred]
            if s.is_false:
                return s
            g = g & body_formula(lit, table)
        else:
            g = g & lit.fn
        if g.is_false:
            return g
    return exists_set(g, g.support() - set(cl.head))


@dataclass
class FixpointResult:
    table: PatternTable
    trace: list[PatternTable] = field(default_factory=list)
    iterations: int = 0


def chain_bound(prog: AbstractProgram) -> int:
    """Upper bound on iterations: each change adds a model to some entry."""
    return sum((1 << arity) + 1 for _, arity in prog.predicates) + 1


def lfp(prog: AbstractProgram, strategy: str = "naive", check: bool = True) -> FixpointResult:
    if strategy == "worklist":
        return _lfp_worklist(prog, check)
    if strategy != "naive":
        raise ValueError(f"unknown strategy {strategy!r}")
    ctx = prog.ctx
    by_pred: dict[Pred, list[AbstractClause]] = {}
    for c in prog.clauses:
        by_pred.setdefault(c.pred, []).append(c)

    current = PatternTable(ctx.false)
    trace = [current]
    bound = chain_bound(prog)
    while True:
        entries = {}
        for p, cls in by_pred.items():
            g = ctx.false
            for c in cls:
                g = g | clause_success(c, current)
            if not g.is_false:
                entries[p] = g
        nxt = PatternTable(ctx.false, entries)
        if check:
            for p in by_pred:
                if not entails(current[p], nxt[p]):
                    raise AssertionError(f"success pattern of {p[0]}/{p[1]} weakened non-monotonically")
        trace.append(nxt)
        if len(trace) - 1 > bound:
            raise AssertionError("lfp exceeded its termination bound")
        if nxt == current:
            return FixpointResult(nxt, trace, len(trace) - 1)
        current = nxt


def _lfp_worklist(prog: AbstractProgram, check: bool) -> FixpointResult:
    ctx = prog.ctx
    by_pred: dict[Pred, list[AbstractClause]] = {}
    for c in prog.clauses:
        by_pred.setdefault(c.pred, []).append(c)
    callers = prog.callers()
    entries: dict[Pred, BoolFn] = {}
    work = list(by_pred)
    queued = set(work)
    rounds = 0
    while work:
        p = work.pop(0)
        queued.discard(p)
        rounds += 1
        table = PatternTable(ctx.false, entries)
        g = ctx.false
        for c in by_pred[p]:
            g = g | clause_success(c, table)
        old = table[p]
        if g != old:
            if check and not entails(old, g):
                raise AssertionError(f"success pattern of {p[0]}/{p[1]} weakened non-monotonically")
            # join with the old entry keeps the sequence ascending under chaotic order
            entries[p] = old | g
            for q in callers.get(p, ()):
                if q in by_pred and q not in queued:
                    work.append(q)
                    queued.add(q)
    table = PatternTable(ctx.false, {p: f for p, f in entries.items() if not f.is_false})
    return FixpointResult(table, [table], rounds)
