"""Builtin modes: what a builtin requires of its arguments and what it guarantees.

Each entry pairs a *required* mode (a lower approximation: if the store
satisfies it, the builtin cannot raise an instantiation error) with a
*success* mode (an upper approximation of the store after the builtin
succeeds).  Both are formulas over argument positions ``a1..aN``.

The file format is one entry per line::

    builtin('=<'/2, a1 & a2, a1 & a2).

``%`` starts a comment.  :func:`format_table` emits canonical text, so
``format_table(load_table(s))`` is stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterator

from .pos.domain import BoolFn, PosContext
from .pos.syntax import FormulaSyntaxError, format_formula, parse_formula, positional_names

_ARG_RESOLVE, _ARG_NAME = positional_names("a")

_ENTRY = re.compile(
    r"""^builtin\(\s*
        (?:'(?P<q>(?:[^']|'')*)'|(?P<n>[a-z][A-Za-z0-9_]*|[^\s'/(),]+))
        \s*/\s*(?P<arity>\d+)\s*,
        (?P<req>[^,]*),
        (?P<succ>[^,]*)\)\.\s*$""",
    re.VERBOSE,
)


class BuiltinSpecError(ValueError):
    pass


@dataclass(frozen=True)
class BuiltinSpec:
    name: str
    arity: int
    required: BoolFn
    success: BoolFn

    @property
    def key(self) -> tuple[str, int]:
        return (self.name, self.arity)


class BuiltinTable:
    def __init__(self, ctx: PosContext, specs: dict[tuple[str, int], BuiltinSpec] | None = None) -> None:
        self.ctx = ctx
        self._specs: dict[tuple[str, int], BuiltinSpec] = dict(specs or {})

    def __contains__(self, key: tuple[str, int]) -> bool:
        return key in self._specs

    def __iter__(self) -> Iterator[BuiltinSpec]:
        return iter(self._specs.values())

    def __len__(self) -> int:
        return len(self._specs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BuiltinTable):
            return NotImplemented
        return self._specs == other._specs

    def get(self, key: tuple[str, int]) -> BuiltinSpec | None:
        return self._specs.get(key)

    def add(self, spec: BuiltinSpec) -> None:
        self._specs[spec.key] = spec

    def update(self, other: BuiltinTable) -> None:
        for spec in other:
            self.add(BuiltinSpec(spec.name, spec.arity, _move(spec.required, self.ctx), _move(spec.success, self.ctx)))


def _move(f: BoolFn, ctx: PosContext) -> BoolFn:
    if f.ctx is ctx:
        return f
    return parse_formula(format_formula(f, _ARG_NAME), _ARG_RESOLVE, ctx)


def _parse_mode(text: str, arity: int, ctx: PosContext, lineno: int) -> BoolFn:
    try:
        f = parse_formula(text.strip(), _ARG_RESOLVE, ctx)
    except FormulaSyntaxError as e:
        raise BuiltinSpecError(f"line {lineno}: {e}") from None
    bad = [v for v in f.support() if v >= arity]
    if bad:
        raise BuiltinSpecError(f"line {lineno}: formula mentions a{bad[0] + 1} beyond arity {arity}")
    return f


def _strip_comment(line: str) -> str:
    quoted = False
    for i, c in enumerate(line):
        if c == "'":
            quoted = not quoted
        elif c == "%" and not quoted:
            return line[:i]
    return line


def load_table(text: str, ctx: PosContext) -> BuiltinTable:
    table = BuiltinTable(ctx)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        m = _ENTRY.match(line)
        if not m:
            raise BuiltinSpecError(f"line {lineno}: malformed entry: {raw.strip()!r}")
        name = m.group("q").replace("''", "'") if m.group("q") is not None else m.group("n")
        arity = int(m.group("arity"))
        req = _parse_mode(m.group("req"), arity, ctx, lineno)
        succ = _parse_mode(m.group("succ"), arity, ctx, lineno)
        table.add(BuiltinSpec(name, arity, req, succ))
    return table


def format_entry(spec: BuiltinSpec) -> str:
    name = spec.name.replace("'", "''")
    req = format_formula(spec.required, _ARG_NAME)
    succ = format_formula(spec.success, _ARG_NAME)
    return f"builtin('{name}'/{spec.arity}, {req}, {succ})."


def format_table(table: BuiltinTable) -> str:
    return "".join(format_entry(s) + "\n" for s in table)


def default_table_text() -> str:
    return resources.files("modewise.data").joinpath("default.builtins").read_text(encoding="utf-8")


def default_table(ctx: PosContext) -> BuiltinTable:
    return load_table(default_table_text(), ctx)


# Builtins that exist in common Prolog systems but have no mode entry.  A call
# to one of these is an unknown-builtin error rather than an undefined
# user predicate.
KNOWN_UNMODELLED = {
    ("atom_codes", 2), ("atom_chars", 2), ("atom_length", 2), ("atom_concat", 3),
    ("sub_atom", 5), ("char_code", 2), ("number_codes", 2), ("number_chars", 2),
    ("atom_number", 2), ("copy_term", 2), ("msort", 2), ("predsort", 3),
    ("between", 3), ("succ", 2), ("plus", 3), ("format", 1), ("format", 2),
    ("format", 3), ("assert", 1), ("asserta", 1), ("assertz", 1), ("retract", 1),
    ("retractall", 1), ("abolish", 1), ("nb_getval", 2), ("nb_setval", 2),
    ("b_getval", 2), ("b_setval", 2), ("halt", 0), ("halt", 1), ("tab", 2),
    ("write", 2), ("writeq", 2), ("print", 2), ("nl", 1), ("read", 2),
    ("write_canonical", 1), ("write_term", 2), ("write_term", 3), ("get_char", 1),
    ("put_char", 1), ("get0", 1), ("get", 1), ("skip", 1), ("see", 1), ("seen", 0),
    ("tell", 1), ("told", 0), ("open", 3), ("open", 4), ("close", 1), ("atom_to_term", 3),
    ("term_to_atom", 2), ("number_vars", 3), ("numbervars", 3), ("setarg", 3),
    ("nb_setarg", 3), ("term_variables", 2), ("callable", 1), ("is_list", 1),
    ("last", 2), ("nth0", 3), ("nth1", 3), ("sum_list", 2), ("max_list", 2),
    ("min_list", 2), ("list_to_set", 2), ("sumlist", 2), ("reverse", 2),
    ("flatten", 2), ("exclude", 3), ("include", 3), ("maplist", 2), ("maplist", 3),
    ("maplist", 4), ("foldl", 4), ("garbage_collect", 0), ("ttyflush", 0),
    ("consult", 1), ("ensure_loaded", 1), ("op", 3), ("dynamic", 1),
}
