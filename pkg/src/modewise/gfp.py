"""Greatest fixpoint of safe call patterns, propagated backwards through clauses.

Every predicate starts at ``true`` (no demand).  For a clause
``h :- d <> f, p1, ..., pn`` the demand is pushed right to left::

    e[n+1] = true
    e[i]   = d_i & (f_i => e[i+1])      d_i: call pattern, f_i: success pattern
    e[0]   = d & (f => e[1])

and the head mode is the universal projection of ``e[0]`` onto the head
variables.  Implication is the pseudo-complement in Pos, so each ``e[i]``
is the weakest mode that keeps the remaining goals safe.  An iteration
conjoins each predicate's old entry with all its clauses' modes.
"""

from __future__ import annotations

from .abstraction import AbsCall, AbstractClause, AbstractProgram
from .lfp import FixpointResult, body_formula, chain_bound
from .pos.domain import BoolFn, entails, forall_set, pseudo_complement
from .tables import PatternTable, Pred


def clause_demand(
    cl: AbstractClause,
    success: PatternTable,
    calls: PatternTable,
    check: bool = False,
) -> BoolFn:
    ctx = cl.assertion.ctx
    e = ctx.true
    for lit in reversed(cl.body):
        if isinstance(lit, AbsCall):
            d_i = body_formula(lit, calls)
            f_i = body_formula(lit, success)
            nxt = d_i & pseudo_complement(f_i, e)
            if check and nxt != d_i & pseudo_complement(d_i & f_i, e):
                raise AssertionError("simplified demand step disagrees with the unsimplified one")
            e = nxt
        else:
            e = pseudo_complement(lit.fn, e)
    e0 = cl.assertion & pseudo_complement(cl.constraint, e)
    return forall_set(e0, e0.support() - set(cl.head))


def gfp(
    prog: AbstractProgram,
    success: PatternTable,
    strategy: str = "naive",
    check: bool = True,
) -> FixpointResult:
    if strategy == "worklist":
        return _gfp_worklist(prog, success, check)
    if strategy != "naive":
        raise ValueError(f"unknown strategy {strategy!r}")
    ctx = prog.ctx
    by_pred: dict[Pred, list[AbstractClause]] = {}
    for c in prog.clauses:
        by_pred.setdefault(c.pred, []).append(c)

    current = PatternTable(ctx.true, {p: ctx.true for p in prog.predicates})
    trace = [current]
    bound = chain_bound(prog)
    while True:
        changes = {}
        for p, cls in by_pred.items():
            g = current[p]
            for c in cls:
                g = g & clause_demand(c, success, current, check)
            changes[p] = g
        nxt = current.updated(changes)
        if check:
            for p in by_pred:
                if not entails(nxt[p], current[p]):
                    raise AssertionError(f"call pattern of {p[0]}/{p[1]} weakened")
        trace.append(nxt)
        if len(trace) - 1 > bound:
            raise AssertionError("gfp exceeded its termination bound")
        if nxt == current:
            return FixpointResult(nxt, trace, len(trace) - 1)
        current = nxt


def _gfp_worklist(prog: AbstractProgram, success: PatternTable, check: bool) -> FixpointResult:
    ctx = prog.ctx
    by_pred: dict[Pred, list[AbstractClause]] = {}
    for c in prog.clauses:
        by_pred.setdefault(c.pred, []).append(c)
    callers = prog.callers()
    entries: dict[Pred, BoolFn] = {p: ctx.true for p in prog.predicates}
    work = list(by_pred)
    queued = set(work)
    rounds = 0
    while work:
        p = work.pop(0)
        queued.discard(p)
        rounds += 1
        table = PatternTable(ctx.true, entries)
        g = table[p]
        for c in by_pred[p]:
            g = g & clause_demand(c, success, table, check)
        if g != table[p]:
            entries[p] = g
            for q in callers.get(p, ()):
                if q in by_pred and q not in queued:
                    work.append(q)
                    queued.add(q)
    table = PatternTable(ctx.true, entries)
    return FixpointResult(table, [table], rounds)
