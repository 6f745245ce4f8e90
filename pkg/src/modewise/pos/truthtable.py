"""Explicit truth tables: the reference implementation for differential tests.

A table over ``n`` variables is an ``int`` with ``2**n`` meaningful bits;
bit ``a`` is the value at the assignment where variable ``i`` is bit ``i``
of ``a``.  Nothing here touches decision diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

MAX_VARS = 5


@dataclass(frozen=True)
class Table:
    nvars: int
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.nvars <= MAX_VARS:
            raise ValueError(f"truth tables support at most {MAX_VARS} variables")
        object.__setattr__(self, "bits", self.bits & _full(self.nvars))


def _full(n: int) -> int:
    return (1 << (1 << n)) - 1


def _same(f: Table, g: Table) -> int:
    if f.nvars != g.nvars:
        raise ValueError("tables over different variable counts")
    return f.nvars


def true(n: int) -> Table:
    return Table(n, _full(n))


def false(n: int) -> Table:
    return Table(n, 0)


def var(n: int, v: int) -> Table:
    if not 0 <= v < n:
        raise ValueError(f"variable {v} outside 0..{n - 1}")
    bits = 0
    for a in range(1 << n):
        if (a >> v) & 1:
            bits |= 1 << a
    return Table(n, bits)


def evaluate(f: Table, assignment: Sequence[bool] | Mapping[int, bool]) -> bool:
    a = 0
    for v in range(f.nvars):
        try:
            bit = assignment[v]
        except (IndexError, KeyError):
            raise ValueError(f"assignment does not cover variable {v}") from None
        if bit:
            a |= 1 << v
    return bool((f.bits >> a) & 1)


def conj(f: Table, g: Table) -> Table:
    return Table(_same(f, g), f.bits & g.bits)


def disj(f: Table, g: Table) -> Table:
    return Table(_same(f, g), f.bits | g.bits)


def neg(f: Table) -> Table:
    return Table(f.nvars, ~f.bits)


def implies(f: Table, g: Table) -> Table:
    return Table(_same(f, g), ~f.bits | g.bits)


def pseudo_complement(f: Table, g: Table) -> Table:
    """Weakest positive ``h`` with ``f & h |= g``, found by search over Pos."""
    n = _same(f, g)
    best = 0
    for h in _positive_bits(n):
        if f.bits & h & ~g.bits == 0:
            best |= h
    return Table(n, best)


def restrict(f: Table, v: int, value: bool) -> Table:
    bits = 0
    for a in range(1 << f.nvars):
        src = (a | (1 << v)) if value else (a & ~(1 << v))
        if (f.bits >> src) & 1:
            bits |= 1 << a
    return Table(f.nvars, bits)


def is_positive(f: Table) -> bool:
    return f.bits == 0 or bool((f.bits >> ((1 << f.nvars) - 1)) & 1)


def exists(f: Table, v: int) -> Table:
    return disj(restrict(f, v, False), restrict(f, v, True))


def forall(f: Table, v: int) -> Table:
    g = conj(restrict(f, v, False), restrict(f, v, True))
    return g if is_positive(g) else false(f.nvars)


def forall_adjoint(f: Table, v: int) -> Table:
    """Largest positive ``c`` with ``exists(c, v) |= f``, found by search."""
    n = f.nvars
    best = 0
    for c in _positive_bits(n):
        if entails(exists(Table(n, c), v), f):
            best |= c
    return Table(n, best)


def rename(f: Table, mapping: Mapping[int, int]) -> Table:
    """Permute variables; ``mapping`` must be a bijection on ``range(nvars)``."""
    n = f.nvars
    full = [mapping.get(v, v) for v in range(n)]
    if sorted(full) != list(range(n)):
        raise ValueError("table renaming must be a permutation")
    bits = 0
    for a in range(1 << n):
        if (f.bits >> a) & 1:
            b = 0
            for v in range(n):
                if (a >> v) & 1:
                    b |= 1 << full[v]
            bits |= 1 << b
    return Table(n, bits)


def entails(f: Table, g: Table) -> bool:
    _same(f, g)
    return f.bits & ~g.bits == 0


def support(f: Table) -> set[int]:
    return {v for v in range(f.nvars) if restrict(f, v, False) != restrict(f, v, True)}


@lru_cache(maxsize=None)
def _positive_bits(n: int) -> tuple[int, ...]:
    return tuple(t.bits for t in positive_functions(n))


def positive_functions(n: int) -> Iterator[Table]:
    """Every element of Pos over ``n`` variables, bottom included."""
    yield false(n)
    top = (1 << n) - 1
    rest = [a for a in range(1 << n) if a != top]
    for mask in range(1 << len(rest)):
        bits = 1 << top
        for i, a in enumerate(rest):
            if (mask >> i) & 1:
                bits |= 1 << a
        yield Table(n, bits)
