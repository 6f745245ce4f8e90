"""Prolog terms and clause shapes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return _quote(self.name)


@dataclass(frozen=True, slots=True)
class Int:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class Float:
    value: float

    def __str__(self) -> str:
        return repr(self.value)


@dataclass(frozen=True, slots=True)
class Struct:
    functor: str
    args: tuple[Term, ...]

    def __post_init__(self) -> None:
        if not self.args:
            raise ValueError("compound terms need at least one argument")

    @property
    def arity(self) -> int:
        return len(self.args)

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Var, Atom, Int, Float, Struct]

NIL = Atom("[]")


def cons(head: Term, tail: Term) -> Struct:
    return Struct(".", (head, tail))


def make_list(items: list[Term], tail: Term = NIL) -> Term:
    out = tail
    for item in reversed(items):
        out = cons(item, out)
    return out


def is_callable(t: Term) -> bool:
    return isinstance(t, (Atom, Struct))


def indicator(t: Term) -> tuple[str, int]:
    if isinstance(t, Atom):
        return (t.name, 0)
    if isinstance(t, Struct):
        return (t.functor, len(t.args))
    raise TypeError(f"not callable: {t}")


def term_args(t: Term) -> tuple[Term, ...]:
    return t.args if isinstance(t, Struct) else ()


def term_vars(t: Term) -> Iterator[str]:
    """Variable names of ``t`` in depth-first left-to-right order, repeats included."""
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            yield s.name
        elif isinstance(s, Struct):
            stack.extend(reversed(s.args))


def is_ground(t: Term) -> bool:
    return next(term_vars(t), None) is None


@dataclass(frozen=True)
class Goal:
    """A body goal: a predicate call, or an explicit ``=`` equation."""

    term: Term
    line: int = 0

    @property
    def is_equation(self) -> bool:
        return isinstance(self.term, Struct) and self.term.functor == "=" and self.term.arity == 2


@dataclass(frozen=True)
class SourceClause:
    head: Term
    body: tuple[Goal, ...] = ()
    line: int = 0

    @property
    def predicate(self) -> tuple[str, int]:
        return indicator(self.head)

    def __str__(self) -> str:
        if not self.body:
            return f"{format_term(self.head)}."
        goals = ", ".join(format_term(g.term) for g in self.body)
        return f"{format_term(self.head)} :- {goals}."


@dataclass(frozen=True)
class Directive:
    term: Term
    line: int = 0


@dataclass
class Program:
    clauses: list[SourceClause] = field(default_factory=list)
    directives: list[Directive] = field(default_factory=list)

    def predicates(self) -> list[tuple[str, int]]:
        seen: dict[tuple[str, int], None] = {}
        for c in self.clauses:
            seen.setdefault(c.predicate)
        return list(seen)

    def clauses_for(self, pred: tuple[str, int]) -> list[SourceClause]:
        return [c for c in self.clauses if c.predicate == pred]


_SOLO = {"[]", "!", ";", "{}", ","}
_SYMBOL_CHARS = set("+-*/\\^<>=~:.?@#&$")


def _quote(name: str) -> str:
    if name in _SOLO:
        return name if name != "," else "','"
    if name and name[0].islower() and all(c.isalnum() or c == "_" for c in name):
        return name
    if name and all(c in _SYMBOL_CHARS for c in name):
        return name
    return "'" + name.replace("'", "''") + "'"


_INFIX = {
    "=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is", "=:=", "=\\=",
    "<", ">", "=<", ">=", "+", "-", "*", "/", "//", "mod", "rem", "/\\", "\\/",
    "<<", ">>", "**", "^", ":-",
}


def format_term(t: Term) -> str:
    if isinstance(t, Struct):
        if t.functor == "." and t.arity == 2:
            items = []
            cur: Term = t
            while isinstance(cur, Struct) and cur.functor == "." and cur.arity == 2:
                items.append(format_term(cur.args[0]))
                cur = cur.args[1]
            inner = ", ".join(items)
            if cur == NIL:
                return f"[{inner}]"
            return f"[{inner}|{format_term(cur)}]"
        if t.arity == 2 and t.functor in _INFIX:
            return f"({format_term(t.args[0])} {t.functor} {format_term(t.args[1])})"
        if t.arity == 1 and t.functor == "-" and not isinstance(t.args[0], Int):
            return f"-({format_term(t.args[0])})"
        return f"{_quote(t.functor)}({', '.join(format_term(a) for a in t.args)})"
    return str(t)
