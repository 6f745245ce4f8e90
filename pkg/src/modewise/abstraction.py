"""Abstraction of normalised clauses into Pos clauses ``h(x) :- d <> f, body``.

``d`` is the assertion (required mode) and ``f`` the groundness description
of the neck equations.  A Herbrand equation ``x = f(y1..yn)`` abstracts to
``x <=> y1 & ... & yn``.  Every builtin call is redirected to a fresh
one-clause predicate ``name'`` whose assertion and constraint are the
builtin's required and success modes.  An equation that follows a call
stays in the body as a constraint literal.

Clause variables are numbered in first-occurrence order with the head
arguments first, so head argument ``i`` is variable ``i`` and a clause's
projected formula is directly over the canonical positions ``x1..xN``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Union

from .builtins import KNOWN_UNMODELLED, BuiltinSpec, BuiltinTable, default_table
from .frontend.normalize import Equation, NormClause, normalize
from .frontend.terms import Atom, Directive, Program, Struct, Var, format_term, term_vars
from .pos.domain import BoolFn, PosContext
from .pos.syntax import FormulaSyntaxError, format_formula, parse_formula

log = logging.getLogger(__name__)

Pred = tuple[str, int]


class AnalysisError(Exception):
    """The program cannot be analysed as given (unknown builtin, bad directive)."""


@dataclass(frozen=True)
class AbsCall:
    pred: Pred
    args: tuple[int, ...]


@dataclass(frozen=True)
class Constraint:
    fn: BoolFn


BodyLit = Union[AbsCall, Constraint]


@dataclass(frozen=True)
class AbstractClause:
    pred: Pred
    head: tuple[int, ...]
    assertion: BoolFn
    constraint: BoolFn
    body: tuple[BodyLit, ...]
    names: tuple[str, ...] = ()
    line: int = 0

    def calls(self) -> list[AbsCall]:
        return [b for b in self.body if isinstance(b, AbsCall)]

    def namer(self, v: int) -> str:
        return self.names[v] if v < len(self.names) else f"_v{v}"

    def __str__(self) -> str:
        name, arity = self.pred
        nm = self.namer
        head = name if arity == 0 else f"{name}({', '.join(nm(v) for v in self.head)})"
        parts = [f"{format_formula(self.assertion, nm)} <> {format_formula(self.constraint, nm)}"]
        for lit in self.body:
            if isinstance(lit, AbsCall):
                n, k = lit.pred
                parts.append(n if k == 0 else f"{n}({', '.join(nm(v) for v in lit.args)})")
            else:
                parts.append(f"{{{format_formula(lit.fn, nm)}}}")
        return f"{head} :- {', '.join(parts)}."


@dataclass
class AbstractProgram:
    ctx: PosContext
    clauses: list[AbstractClause]
    predicates: list[Pred]
    user_predicates: list[Pred]
    builtin_predicates: dict[Pred, Pred] = field(default_factory=dict)
    undefined: list[Pred] = field(default_factory=list)
    assertions: dict[Pred, BoolFn] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def clauses_for(self, pred: Pred) -> list[AbstractClause]:
        return [c for c in self.clauses if c.pred == pred]

    def callers(self) -> dict[Pred, set[Pred]]:
        out: dict[Pred, set[Pred]] = {p: set() for p in self.predicates}
        for c in self.clauses:
            for call in c.calls():
                out.setdefault(call.pred, set()).add(c.pred)
        return out

    def is_builtin(self, pred: Pred) -> bool:
        return pred in self.builtin_predicates.values()


def builtin_predicate_name(key: Pred) -> Pred:
    return (key[0] + "'", key[1])


def abstract_equation(lhs: int, rhs_vars: Iterable[int], ctx: PosContext) -> BoolFn:
    """``lhs <=> (v1 & ... & vn)``; a constant right-hand side gives ``lhs``."""
    return ctx.iff_conj(lhs, rhs_vars)


def builtin_spec(key: Pred, table: BuiltinTable, allow_unknown: bool = False) -> BuiltinSpec:
    spec = table.get(key)
    if spec is not None:
        return spec
    if not allow_unknown:
        raise AnalysisError(f"unknown builtin {key[0]}/{key[1]}")
    ctx = table.ctx
    return BuiltinSpec(key[0], key[1], ctx.false, ctx.false)


def _equation_fn(eq: Equation, index: dict[str, int], ctx: PosContext) -> BoolFn:
    return abstract_equation(index[eq.lhs], (index[v] for v in term_vars(eq.rhs)), ctx)


def parse_assertion(directive: Directive, ctx: PosContext) -> tuple[Pred, BoolFn]:
    """Read ``assertion(p(X1..Xn), 'Formula')`` into a mode over positions."""
    t = directive.term
    if not (isinstance(t, Struct) and t.functor == "assertion" and t.arity == 2):
        raise AnalysisError(f"line {directive.line}: not an assertion directive")
    head, formula = t.args
    if isinstance(head, Atom):
        pred, args = (head.name, 0), ()
    elif isinstance(head, Struct):
        pred, args = (head.functor, head.arity), head.args
    else:
        raise AnalysisError(f"line {directive.line}: assertion head must be callable")
    names = []
    for a in args:
        if not isinstance(a, Var) or a.name in names:
            raise AnalysisError(f"line {directive.line}: assertion head arguments must be distinct variables")
        names.append(a.name)
    if isinstance(formula, Atom):
        text = formula.name
    else:
        raise AnalysisError(f"line {directive.line}: assertion formula must be a quoted atom")

    def resolve(name: str) -> int:
        if name in names:
            return names.index(name)
        if name.startswith("x") and name[1:].isdigit() and 1 <= int(name[1:]) <= len(names):
            return int(name[1:]) - 1
        raise FormulaSyntaxError(f"{name!r} is not an argument of {pred[0]}/{pred[1]}")

    try:
        fn = parse_formula(text, resolve, ctx)
    except FormulaSyntaxError as e:
        raise AnalysisError(f"line {directive.line}: {e}") from None
    return pred, fn


def abstract_clause(
    clause: NormClause,
    ctx: PosContext,
    redirect: dict[Pred, Pred],
    assertion: BoolFn | None = None,
) -> AbstractClause:
    names = clause.variables()
    index = {n: i for i, n in enumerate(names)}
    f = ctx.conj_all(_equation_fn(e, index, ctx) for e in clause.eqns)
    body: list[BodyLit] = []
    for item in clause.body:
        if isinstance(item, Equation):
            body.append(Constraint(_equation_fn(item, index, ctx)))
        else:
            body.append(AbsCall(redirect.get(item.pred, item.pred), tuple(index[a] for a in item.args)))
    return AbstractClause(
        pred=clause.pred,
        head=tuple(index[v] for v in clause.head),
        assertion=assertion if assertion is not None else ctx.true,
        constraint=f,
        body=tuple(body),
        names=tuple(names),
        line=clause.line,
    )


def abstract_program(
    norm: list[NormClause],
    table: BuiltinTable,
    directives: Iterable[Directive] = (),
    allow_unknown: bool = False,
) -> AbstractProgram:
    ctx = table.ctx
    defined: dict[Pred, None] = {}
    for c in norm:
        defined.setdefault(c.pred)
    order: dict[Pred, None] = dict(defined)
    warnings: list[str] = []

    assertions: dict[Pred, BoolFn] = {}
    for d in directives:
        if isinstance(d.term, Struct) and d.term.functor == "assertion" and d.term.arity == 2:
            pred, fn = parse_assertion(d, ctx)
            assertions[pred] = assertions[pred] & fn if pred in assertions else fn
        else:
            msg = f"line {d.line}: ignoring directive {format_term(d.term)}"
            warnings.append(msg)
            log.warning(msg)

    redirect: dict[Pred, Pred] = {}
    specs: dict[Pred, BuiltinSpec] = {}
    undefined: dict[Pred, None] = {}
    for c in norm:
        for call in c.calls():
            p = call.pred
            order.setdefault(p)
            if p in defined or p in redirect or p in undefined:
                continue
            if p in table or p in KNOWN_UNMODELLED:
                try:
                    specs[p] = builtin_spec(p, table, allow_unknown)
                except AnalysisError as e:
                    raise AnalysisError(f"line {c.line}: {e}") from None
                if p not in table:
                    msg = f"unknown builtin {p[0]}/{p[1]}: assuming required=false, success=false"
                    warnings.append(msg)
                    log.warning(msg)
                redirect[p] = builtin_predicate_name(p)
            else:
                undefined[p] = None
                msg = f"predicate {p[0]}/{p[1]} is called but never defined"
                warnings.append(msg)
                log.warning(msg)

    clauses = [abstract_clause(c, ctx, redirect, assertions.get(c.pred)) for c in norm]
    for key, prime in redirect.items():
        spec = specs[key]
        head = tuple(range(key[1]))
        clauses.append(
            AbstractClause(prime, head, spec.required, spec.success, (), tuple(f"a{i + 1}" for i in head))
        )

    for p in assertions:
        if p not in defined:
            warnings.append(f"assertion for undefined predicate {p[0]}/{p[1]}")

    predicates = [redirect.get(p, p) for p in order]
    return AbstractProgram(
        ctx=ctx,
        clauses=clauses,
        predicates=predicates,
        user_predicates=list(defined),
        builtin_predicates=redirect,
        undefined=list(undefined),
        assertions=assertions,
        warnings=warnings,
    )


def abstract_source(
    program: Program,
    table: BuiltinTable | None = None,
    ctx: PosContext | None = None,
    allow_unknown: bool = False,
) -> AbstractProgram:
    if table is None:
        table = default_table(ctx or PosContext())
    return abstract_program(normalize(program.clauses), table, program.directives, allow_unknown)
