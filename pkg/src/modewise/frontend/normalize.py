"""Normalisation: every head and body-atom argument becomes a distinct variable.

A non-variable argument, or a variable already used in the same atom, is
replaced by a fresh ``_T<k>`` plus an equation.  Equations produced from
arguments (head or body atom) are placed at the clause neck, in argument
order.  Equations the programmer wrote as ``=`` goals join the neck only
when no call precedes them; later ones stay at their body position, because
moving them earlier would let an equation ground a variable before a
builtin that reads it.  Compound terms are flattened one
functor at a time, so every equation has the shape ``X = f(Y1, ..., Yn)``
with variable arguments, ``X = c`` for a constant, or ``X = Y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .terms import Atom, Float, Goal, Int, SourceClause, Struct, Term, Var, indicator, term_args


@dataclass(frozen=True)
class Equation:
    lhs: str
    rhs: Term

    def __str__(self) -> str:
        from .terms import format_term

        return f"{self.lhs} = {format_term(self.rhs)}"


@dataclass(frozen=True)
class Call:
    pred: tuple[str, int]
    args: tuple[str, ...]

    def __str__(self) -> str:
        name, arity = self.pred
        if arity == 0:
            return name
        return f"{name}({', '.join(self.args)})"


BodyItem = Union[Call, Equation]


@dataclass(frozen=True)
class NormClause:
    pred: tuple[str, int]
    head: tuple[str, ...]
    eqns: tuple[Equation, ...]
    body: tuple[BodyItem, ...]
    line: int = 0

    def calls(self) -> list[Call]:
        return [b for b in self.body if isinstance(b, Call)]

    def variables(self) -> list[str]:
        """Clause variables in first-occurrence order, head arguments first."""
        seen: dict[str, None] = {}
        for v in self.head:
            seen.setdefault(v)
        for e in self.eqns:
            _note_eq(e, seen)
        for b in self.body:
            if isinstance(b, Call):
                for v in b.args:
                    seen.setdefault(v)
            else:
                _note_eq(b, seen)
        return list(seen)

    def __str__(self) -> str:
        name, arity = self.pred
        head = name if arity == 0 else f"{name}({', '.join(self.head)})"
        parts = [str(e) for e in self.eqns] + [str(b) for b in self.body]
        if not parts:
            return f"{head}."
        return f"{head} :- {', '.join(parts)}."


def _note_eq(e: Equation, seen: dict[str, None]) -> None:
    from .terms import term_vars

    seen.setdefault(e.lhs)
    for v in term_vars(e.rhs):
        seen.setdefault(v)


@dataclass
class _Fresh:
    taken: set[str]
    counter: int = 0

    def __call__(self) -> str:
        while True:
            self.counter += 1
            name = f"_T{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name


@dataclass
class _ClauseBuilder:
    fresh: _Fresh
    eqns: list[Equation] = field(default_factory=list)

    def flatten(self, lhs: str, rhs: Term, out: list[Equation]) -> None:
        """Emit ``lhs = rhs`` as equations whose compound arguments are variables."""
        if isinstance(rhs, Struct):
            args = []
            pending = []
            for a in rhs.args:
                if isinstance(a, Var):
                    args.append(a)
                else:
                    t = self.fresh()
                    args.append(Var(t))
                    pending.append((t, a))
            out.append(Equation(lhs, Struct(rhs.functor, tuple(args))))
            for t, a in pending:
                self.flatten(t, a, out)
        else:
            out.append(Equation(lhs, rhs))

    def distinct_args(self, args: Iterable[Term], out: list[Equation]) -> tuple[str, ...]:
        names: list[str] = []
        used: set[str] = set()
        for a in args:
            if isinstance(a, Var) and a.name not in used:
                names.append(a.name)
                used.add(a.name)
                continue
            t = self.fresh()
            names.append(t)
            used.add(t)
            self.flatten(t, a, out)
        return tuple(names)


def _all_var_names(clause: SourceClause) -> set[str]:
    from .terms import term_vars

    names = set(term_vars(clause.head))
    for g in clause.body:
        names.update(term_vars(g.term))
    return names


def normalize_clause(clause: SourceClause) -> NormClause:
    b = _ClauseBuilder(_Fresh(_all_var_names(clause)))
    neck: list[Equation] = []
    head = b.distinct_args(term_args(clause.head), neck)
    body: list[BodyItem] = []
    for goal in clause.body:
        t = goal.term
        if goal.is_equation:
            assert isinstance(t, Struct)
            lhs, rhs = t.args
            eqs: list[Equation] = []
            if isinstance(lhs, Var):
                b.flatten(lhs.name, rhs, eqs)
            elif isinstance(rhs, Var):
                b.flatten(rhs.name, lhs, eqs)
            else:
                tmp = b.fresh()
                b.flatten(tmp, lhs, eqs)
                b.flatten(tmp, rhs, eqs)
            if any(isinstance(item, Call) for item in body):
                body.extend(eqs)
            else:
                neck.extend(eqs)
            continue
        args = b.distinct_args(term_args(t), neck)
        body.append(Call(indicator(t), args))
    return NormClause(indicator(clause.head), head, tuple(neck), tuple(body), clause.line)


def normalize(clauses: Iterable[SourceClause]) -> list[NormClause]:
    return [normalize_clause(c) for c in clauses]


def to_source(clause: NormClause) -> SourceClause:
    """Read a normalised clause back as an ordinary source clause."""
    name, arity = clause.pred
    head: Term = Atom(name) if arity == 0 else Struct(name, tuple(Var(v) for v in clause.head))
    goals: list[Goal] = [Goal(Struct("=", (Var(e.lhs), e.rhs)), clause.line) for e in clause.eqns]
    for item in clause.body:
        if isinstance(item, Equation):
            goals.append(Goal(Struct("=", (Var(item.lhs), item.rhs)), clause.line))
        else:
            n, k = item.pred
            goals.append(Goal(Atom(n) if k == 0 else Struct(n, tuple(Var(v) for v in item.args)), clause.line))
    return SourceClause(head, tuple(goals), clause.line)


def is_normal(clause: NormClause) -> bool:
    """Distinctness and shape check used by tests and debug assertions."""
    atoms = [clause.head] + [c.args for c in clause.calls()]
    if any(len(set(a)) != len(a) for a in atoms):
        return False
    for e in list(clause.eqns) + [b for b in clause.body if isinstance(b, Equation)]:
        if isinstance(e.rhs, Struct) and not all(isinstance(a, Var) for a in e.rhs.args):
            return False
        if not isinstance(e.rhs, (Var, Atom, Int, Float, Struct)):
            return False
    return True
