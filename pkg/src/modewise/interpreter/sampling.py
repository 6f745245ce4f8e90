"""Random testing of inferred modes against the oracle interpreter.

:func:`sample_and_check` draws queries whose groundness satisfies a call
mode and runs them looking for the error state.  :func:`check_success`
collects random successful derivations and checks each answer against
the success pattern.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from ..builtins import BuiltinTable
from ..frontend.terms import NIL, Atom, Int, Program, Struct, Term, Var, format_term, is_ground, make_list
from ..pos.domain import BoolFn, entails
from .engine import ErrorInfo, Interpreter, alpha, substitute

if TYPE_CHECKING:
    from ..analysis import AnalysisResult

Pred = tuple[str, int]


@dataclass(frozen=True)
class Signature:
    atoms: tuple[str, ...]
    functors: tuple[tuple[str, int], ...]


def program_signature(program: Program) -> Signature:
    """Atoms and functors that occur in argument positions of the program."""
    atoms: dict[str, None] = {}
    functors: dict[tuple[str, int], None] = {}

    def scan(t: Term) -> None:
        if isinstance(t, Atom) and t.name != "[]":
            atoms.setdefault(t.name)
        elif isinstance(t, Struct):
            if not (t.functor == "." and len(t.args) == 2):
                functors.setdefault((t.functor, len(t.args)))
            for a in t.args:
                scan(a)

    for c in program.clauses:
        goals = [c.head] + [g.term for g in c.body]
        for g in goals:
            if isinstance(g, Struct):
                for a in g.args:
                    scan(a)
    return Signature(tuple(atoms), tuple(functors))


class TermGenerator:
    """Random terms drawn from a program signature, biased towards lists."""

    def __init__(self, sig: Signature, rng: random.Random, depth: int = 2, pool: list[Term] | None = None) -> None:
        self.sig = sig
        self.rng = rng
        self.depth = depth
        self.pool = pool if pool is not None else []
        self.pool_bias = 0.25
        self._fresh = 0

    def fresh(self) -> Var:
        self._fresh += 1
        return Var(f"Q{self._fresh}")

    def atomic(self) -> Term:
        r = self.rng
        if self.sig.atoms and r.random() < 0.3:
            return Atom(r.choice(self.sig.atoms))
        return Int(r.randrange(10))

    def ground(self, depth: int = 2) -> Term:
        r = self.rng
        if self.pool and r.random() < self.pool_bias:
            return r.choice(self.pool)
        roll = r.random()
        if depth <= 0 or roll < 0.3:
            return self.atomic()
        if roll < 0.7 or not self.sig.functors:
            return make_list([self.ground(depth - 2) for _ in range(r.randrange(5))])
        name, arity = r.choice(self.sig.functors)
        return Struct(name, tuple(self.ground(depth - 1) for _ in range(arity)))

    def partial(self, depth: int = 2) -> Term:
        """A term with at least one unbound variable inside."""
        r = self.rng
        if r.random() < 0.6 or not self.sig.functors:
            items = [self.ground(0) if r.random() < 0.6 else self.fresh() for _ in range(r.randrange(4))]
            tail: Term = self.fresh() if r.random() < 0.5 or not items else NIL
            if tail == NIL:
                items[r.randrange(len(items))] = self.fresh()
            return make_list(items, tail)
        name, arity = r.choice(self.sig.functors)
        args = [self.ground(depth - 1) for _ in range(arity)]
        args[r.randrange(arity)] = self.fresh()
        return Struct(name, tuple(args))

    def query(self, pred: Pred) -> Term:
        name, arity = pred
        if arity == 0:
            return Atom(name)
        r = self.rng
        args: list[Term] = []
        pool: list[Var] = []
        for _ in range(arity):
            roll = r.random()
            if roll < 0.45:
                a = self.ground(r.randrange(self.depth + 1))
            elif roll < 0.75:
                a = self.fresh()
                pool.append(a)
            elif roll < 0.85 and pool:
                a = r.choice(pool)
            else:
                a = self.partial()
            args.append(a)
        return Struct(name, tuple(args))

    def ground_query(self, pred: Pred) -> Term:
        name, arity = pred
        if arity == 0:
            return Atom(name)
        return Struct(name, tuple(self.ground(self.depth) for _ in range(arity)))


def query_alpha(query: Term, mode: BoolFn) -> BoolFn:
    args = query.args if isinstance(query, Struct) else ()
    return alpha(args, {}, mode.ctx)


def satisfying_query(gen: TermGenerator, pred: Pred, mode: BoolFn, tries: int = 40) -> tuple[Term, bool]:
    """A random query for ``pred`` whose groundness entails ``mode``.

    Returns the query and whether the all-ground fallback was used.
    """
    if mode.is_false:
        raise ValueError(f"mode of {pred[0]}/{pred[1]} is false: no store satisfies it")
    for _ in range(tries):
        q = gen.query(pred)
        if entails(query_alpha(q, mode), mode):
            return q, False
    return gen.ground_query(pred), True


@dataclass
class Oracle:
    """Interpreter plus term generator for one analysed program."""

    interp: Interpreter
    signature: Signature
    pool: list[Term] = field(default_factory=list)

    def harvest(self, t: Term, limit: int = 500) -> None:
        """Keep ground subterms of an answer for later queries."""
        if len(self.pool) >= limit:
            return
        stack = [t]
        while stack:
            u = stack.pop()
            if is_ground(u) and u not in self.pool:
                self.pool.append(u)
            elif isinstance(u, Struct):
                stack.extend(u.args)

    @classmethod
    def from_analysis(cls, res: AnalysisResult, seed: int = 0, table: BuiltinTable | None = None) -> Oracle:
        """Oracle for ``res``'s program.

        Builtins take their required modes from ``table`` (default: the
        table the analysis used) and otherwise from the analysed program.
        """
        absprog = res.abstract
        extra = {}
        for key, prime in absprog.builtin_predicates.items():
            for c in absprog.clauses_for(prime):
                extra[key] = c.assertion
        if table is None:
            table = res.table if res.table is not None else BuiltinTable(absprog.ctx)
        interp = Interpreter(res.program, table, absprog.assertions, random.Random(seed), extra)
        return cls(interp, program_signature(res.program))


@dataclass
class CheckReport:
    pred: Pred
    mode: BoolFn
    samples: int = 0
    fallbacks: int = 0
    outcomes: Counter = field(default_factory=Counter)
    counterexamples: list[tuple[str, ErrorInfo]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def sample_and_check(
    oracle: Oracle,
    pred: Pred,
    mode: BoolFn,
    n: int = 100,
    seed: int = 0,
    max_depth: int = 128,
    budget: int = 2000,
) -> CheckReport:
    """Run ``n`` random queries satisfying ``mode`` and collect error outcomes."""
    rng = random.Random(f"{seed}:{pred[0]}/{pred[1]}")
    gen = TermGenerator(oracle.signature, rng, pool=oracle.pool)
    oracle.interp.rng = rng
    report = CheckReport(pred, mode)
    for _ in range(n):
        q, fell_back = satisfying_query(gen, pred, mode)
        report.fallbacks += fell_back
        out = oracle.interp.solve(q, max_depth=max_depth, max_solutions=1, budget=budget)
        report.samples += 1
        report.outcomes[out.kind] += 1
        if out.error is not None:
            report.counterexamples.append((format_term(q), out.error))
    return report


@dataclass
class SoundnessReport:
    pred: Pred
    success: BoolFn
    derivations: int = 0
    queries: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_success(
    oracle: Oracle,
    pred: Pred,
    success: BoolFn,
    call_mode: BoolFn,
    n: int = 50,
    seed: int = 0,
    max_depth: int = 32,
    budget: int = 300,
    max_queries: int | None = None,
) -> SoundnessReport:
    """Check ``n`` random successful derivations of ``pred`` against ``success``.

    Queries are drawn to satisfy ``call_mode`` so that the oracle runs
    without hitting the error state; clause order is shuffled per query so
    the first answers found are not always the same.
    """
    rng = random.Random(f"{seed}:{pred[0]}/{pred[1]}:success")
    # shallow arguments (constants, short lists) succeed far more often
    gens = [TermGenerator(oracle.signature, rng, pool=oracle.pool), TermGenerator(oracle.signature, rng, 1, oracle.pool)]
    gens[1].pool_bias = 0.5
    oracle.interp.rng = rng
    report = SoundnessReport(pred, success)
    limit = max_queries if max_queries is not None else 100 * n
    mode = call_mode if not call_mode.is_false else call_mode.ctx.true
    while report.derivations < n and report.queries < limit:
        q, _ = satisfying_query(gens[report.queries % 2], pred, mode)
        report.queries += 1
        out = oracle.interp.solve(q, max_depth=max_depth, max_solutions=3, budget=budget, exhaustive=False, shuffle=True)
        for ans in out.answers:
            inst = substitute(q, ans)
            args = inst.args if isinstance(inst, Struct) else ()
            a = alpha(args, {}, success.ctx)
            for arg in args:
                oracle.harvest(arg)
            report.derivations += 1
            if not entails(a, success):
                report.failures.append((format_term(q), format_term(inst)))
            if report.derivations >= n:
                break
    return report


__all__ = [
    "CheckReport",
    "Oracle",
    "Signature",
    "SoundnessReport",
    "TermGenerator",
    "check_success",
    "program_signature",
    "sample_and_check",
    "satisfying_query",
]
