"""Textual syntax for Boolean formulas.

Grammar, loosest binding first::

    formula := imp ('<=>' imp)*
    imp     := or ('=>' imp)?          right associative
    or      := and ('|' and)*
    and     := unary ('&' unary)*
    unary   := '~' unary | atom
    atom    := 'true' | 'false' | NAME | '(' formula ')'

Printing produces the disjunction of all prime implicants (the Blake
canonical form), cubes ordered by size then variable index, so equal
functions always print identically.
"""

from __future__ import annotations

import re
from typing import Callable

from .domain import BoolFn, PosContext, default_context

_TOKEN = re.compile(r"\s*(?:(<=>|=>|[&|~()])|([A-Za-z_][A-Za-z0-9_]*))")


class FormulaSyntaxError(ValueError):
    pass


def positional_names(prefix: str = "x") -> tuple[Callable[[str], int], Callable[[int], str]]:
    """Resolver/namer pair mapping ``x1..xN`` to variables ``0..N-1``."""
    pat = re.compile(rf"{re.escape(prefix)}([1-9][0-9]*)$")

    def resolve(name: str) -> int:
        m = pat.match(name)
        if not m:
            raise FormulaSyntaxError(f"expected a variable {prefix}1, {prefix}2, ...; got {name!r}")
        return int(m.group(1)) - 1

    def namer(v: int) -> str:
        return f"{prefix}{v + 1}"

    return resolve, namer


class NameTable:
    """Interns arbitrary names as variables in first-seen order."""

    def __init__(self, names: list[str] | None = None) -> None:
        self.names: list[str] = []
        self.index: dict[str, int] = {}
        for n in names or []:
            self.resolve(n)

    def resolve(self, name: str) -> int:
        v = self.index.get(name)
        if v is None:
            v = len(self.names)
            self.names.append(name)
            self.index[name] = v
        return v

    def namer(self, v: int) -> str:
        return self.names[v] if v < len(self.names) else f"_v{v}"


def _tokenize(text: str) -> list[str]:
    out: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(1) or m.group(2))
        pos = m.end()
    return out


def parse_formula(
    text: str,
    resolve: Callable[[str], int] | None = None,
    ctx: PosContext | None = None,
) -> BoolFn:
    ctx = ctx or default_context()
    if resolve is None:
        resolve = positional_names()[0]
    toks = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return toks[pos] if pos < len(toks) else None

    def take(expected: str | None = None) -> str:
        nonlocal pos
        if pos >= len(toks):
            raise FormulaSyntaxError(f"unexpected end of formula in {text!r}")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r} in {text!r}")
        pos += 1
        return tok

    def formula() -> BoolFn:
        f = imp()
        while peek() == "<=>":
            take()
            f = f.iff(imp())
        return f

    def imp() -> BoolFn:
        f = disj()
        if peek() == "=>":
            take()
            return f.implies(imp())
        return f

    def disj() -> BoolFn:
        f = conj()
        while peek() == "|":
            take()
            f = f | conj()
        return f

    def conj() -> BoolFn:
        f = unary()
        while peek() == "&":
            take()
            f = f & unary()
        return f

    def unary() -> BoolFn:
        if peek() == "~":
            take()
            return unary().negate()
        tok = take()
        if tok == "(":
            f = formula()
            take(")")
            return f
        if tok == "true":
            return ctx.true
        if tok == "false":
            return ctx.false
        if tok in ("<=>", "=>", "&", "|", ")"):
            raise FormulaSyntaxError(f"unexpected {tok!r} in {text!r}")
        return ctx.var(resolve(tok))

    if not toks:
        raise FormulaSyntaxError("empty formula")
    f = formula()
    if pos != len(toks):
        raise FormulaSyntaxError(f"trailing input {toks[pos]!r} in {text!r}")
    return f


def format_formula(f: BoolFn, namer: Callable[[int], str] | None = None) -> str:
    if namer is None:
        namer = positional_names()[1]
    if f.is_true:
        return "true"
    if f.is_false:
        return "false"
    cubes = f.ctx.mgr.primes(f.node)
    ordered = sorted(
        (sorted(c) for c in cubes),
        key=lambda c: (len(c), [(v, not pol) for v, pol in c]),
    )
    terms = []
    for cube in ordered:
        terms.append(" & ".join(namer(v) if pol else "~" + namer(v) for v, pol in cube))
    return " | ".join(terms)
