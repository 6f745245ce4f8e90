"""Native execution of the builtins in the mode table.

Each native takes the interpreter, the call's arguments, the binding store
and its trail.  It yields once per solution after extending the store in
place; the engine undoes the trail before asking for the next one.
Required modes are checked by the engine before a native runs, so natives
only need to fail (not raise) on arguments of the wrong type.
"""

from __future__ import annotations

import math
from functools import cmp_to_key
from typing import Callable, Iterator

from ..frontend.terms import NIL, Atom, Float, Int, Struct, Term, Var, make_list
from .engine import Subst, ground_under, resolve, undo, unify_in, walk

Native = Callable[..., Iterator[None]]
NATIVES: dict[tuple[str, int], Native] = {}


class EvalError(Exception):
    """Arithmetic on a non-number, or an undefined operation such as 1/0."""


def native(name: str, arity: int) -> Callable[[Native], Native]:
    def deco(fn: Native) -> Native:
        NATIVES[(name, arity)] = fn
        return fn

    return deco


def _bind(a: Term, b: Term, s: dict, trail: list) -> Iterator[None]:
    if unify_in(a, b, s, trail):
        yield None


def _test(ok: bool) -> Iterator[None]:
    if ok:
        yield None


# -- arithmetic ---------------------------------------------------------------

_BINARY: dict[str, Callable] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a // b if isinstance(a, int) and isinstance(b, int) and a % b == 0 else a / b,
    "//": lambda a, b: int(a / b) if isinstance(a, int) and isinstance(b, int) else _int_only(),
    "mod": lambda a, b: a % b if isinstance(a, int) and isinstance(b, int) else _int_only(),
    "rem": lambda a, b: a - b * int(a / b) if isinstance(a, int) and isinstance(b, int) else _int_only(),
    "min": min,
    "max": max,
    ">>": lambda a, b: a >> b,
    "<<": lambda a, b: a << b,
    "/\\": lambda a, b: a & b,
    "\\/": lambda a, b: a | b,
    "xor": lambda a, b: a ^ b,
    "**": lambda a, b: a**b,
    "^": lambda a, b: a**b,
}
_UNARY: dict[str, Callable] = {
    "-": lambda a: -a,
    "+": lambda a: a,
    "abs": abs,
    "sign": lambda a: (a > 0) - (a < 0),
    "\\": lambda a: ~a,
    "float": float,
    "integer": lambda a: int(round(a)),
    "truncate": math.trunc,
    "sqrt": math.sqrt,
}


def _int_only():
    raise EvalError("integer operation on a float")


def evaluate(t: Term, s: Subst) -> int | float:
    t = walk(t, s)
    if isinstance(t, Int):
        return t.value
    if isinstance(t, Float):
        return t.value
    if isinstance(t, Struct):
        try:
            if len(t.args) == 2 and t.functor in _BINARY:
                return _BINARY[t.functor](evaluate(t.args[0], s), evaluate(t.args[1], s))
            if len(t.args) == 1 and t.functor in _UNARY:
                return _UNARY[t.functor](evaluate(t.args[0], s))
        except (ZeroDivisionError, ValueError, TypeError, OverflowError) as e:
            raise EvalError(str(e)) from None
        raise EvalError(f"unknown evaluable {t.functor}/{len(t.args)}")
    if isinstance(t, Atom) and t.name == "[]":
        raise EvalError("[] is not a number")
    raise EvalError(f"not a number: {t}")


def _number(v: int | float) -> Term:
    return Int(v) if isinstance(v, int) else Float(v)


def _arith(args, s) -> tuple | None:
    try:
        return evaluate(args[0], s), evaluate(args[1], s)
    except EvalError:
        return None


@native("is", 2)
def _is(_, args, s, trail):
    try:
        v = evaluate(args[1], s)
    except EvalError:
        return
    yield from _bind(args[0], _number(v), s, trail)


def _compare_native(op: Callable[[float, float], bool]) -> Native:
    def run(_, args, s, trail):
        pair = _arith(args, s)
        if pair is not None and op(*pair):
            yield None

    return run


for _name, _op in {
    "=:=": lambda a, b: a == b,
    "=\\=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "=<": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
}.items():
    NATIVES[(_name, 2)] = _compare_native(_op)


# -- standard order -------------------------------------------------------------


def _rank(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    if isinstance(t, (Int, Float)):
        return 1
    if isinstance(t, Atom):
        return 3
    return 4


def compare_terms(a: Term, b: Term) -> int:
    ra, rb = _rank(a), _rank(b)
    if ra != rb:
        return -1 if ra < rb else 1
    if isinstance(a, Var):
        return (a.name > b.name) - (a.name < b.name)
    if isinstance(a, (Int, Float)):
        if a.value != b.value:
            return -1 if a.value < b.value else 1
        # equal value: float before int
        return (isinstance(b, Float) - isinstance(a, Float)) if type(a) is not type(b) else 0
    if isinstance(a, Atom):
        return (a.name > b.name) - (a.name < b.name)
    if len(a.args) != len(b.args):
        return -1 if len(a.args) < len(b.args) else 1
    if a.functor != b.functor:
        return -1 if a.functor < b.functor else 1
    for x, y in zip(a.args, b.args):
        c = compare_terms(x, y)
        if c:
            return c
    return 0


def _order_native(pred: Callable[[int], bool]) -> Native:
    def run(_, args, s, trail):
        yield from _test(pred(compare_terms(resolve(args[0], s), resolve(args[1], s))))

    return run


for _name, _p in {
    "==": lambda c: c == 0,
    "\\==": lambda c: c != 0,
    "@<": lambda c: c < 0,
    "@>": lambda c: c > 0,
    "@=<": lambda c: c <= 0,
    "@>=": lambda c: c >= 0,
}.items():
    NATIVES[(_name, 2)] = _order_native(_p)


@native("compare", 3)
def _compare(_, args, s, trail):
    c = compare_terms(resolve(args[1], s), resolve(args[2], s))
    yield from _bind(args[0], Atom("<" if c < 0 else ">" if c > 0 else "="), s, trail)


@native("\\=", 2)
def _not_unifiable(_, args, s, trail):
    mark = len(trail)
    ok = not unify_in(args[0], args[1], s, trail)
    undo(s, trail, mark)
    yield from _test(ok)


# -- type tests ---------------------------------------------------------------------


def _type_native(pred: Callable[[Term], bool]) -> Native:
    def run(_, args, s, trail):
        yield from _test(pred(walk(args[0], s)))

    return run


for _name, _p in {
    "var": lambda t: isinstance(t, Var),
    "nonvar": lambda t: not isinstance(t, Var),
    "atom": lambda t: isinstance(t, Atom),
    "number": lambda t: isinstance(t, (Int, Float)),
    "integer": lambda t: isinstance(t, Int),
    "float": lambda t: isinstance(t, Float),
    "atomic": lambda t: isinstance(t, (Atom, Int, Float)),
    "compound": lambda t: isinstance(t, Struct),
}.items():
    NATIVES[(_name, 1)] = _type_native(_p)


@native("ground", 1)
def _ground(_, args, s, trail):
    yield from _test(ground_under(args[0], s))


# -- control and side effects ------------------------------------------------------


def _succeed(_, args, s, trail):
    yield None


def _fail(_, args, s, trail):
    return iter(())


for _key in [("!", 0), ("true", 0), ("nl", 0), ("listing", 0), ("repeat", 0), ("listing", 1),
             ("write", 1), ("writeq", 1), ("print", 1), ("display", 1), ("portray_clause", 1),
             ("tab", 1), ("put", 1)]:
    NATIVES[_key] = _succeed
for _key in [("fail", 0), ("false", 0), ("abort", 0)]:
    NATIVES[_key] = _fail


@native("read", 1)
def _read(interp, args, s, trail):
    yield from _bind(args[0], Int(interp.rng.randrange(100)), s, trail)


@native("statistics", 2)
def _statistics(interp, args, s, trail):
    if unify_in(args[0], Int(interp.rng.randrange(1000)), s, trail):
        yield from _bind(args[1], Int(interp.rng.randrange(1000)), s, trail)


# -- lists and term construction ----------------------------------------------------


def proper_list(t: Term, s: Subst) -> list[Term] | None:
    items = []
    t = walk(t, s)
    while isinstance(t, Struct) and t.functor == "." and len(t.args) == 2:
        items.append(t.args[0])
        t = walk(t.args[1], s)
    return items if t == NIL else None


LENGTH_LIMIT = 8


@native("length", 2)
def _length(interp, args, s, trail):
    items = proper_list(args[0], s)
    if items is not None:
        yield from _bind(args[1], Int(len(items)), s, trail)
        return
    n = walk(args[1], s)
    if isinstance(n, Int):
        if n.value >= 0:
            k = next(interp._fresh)
            fresh = [Var(f"_L{i}#{k}") for i in range(n.value)]
            yield from _bind(args[0], make_list(fresh), s, trail)
        return
    if isinstance(n, Var):
        # enumerate a bounded prefix of the infinitely many answers
        mark = len(trail)
        for k in range(LENGTH_LIMIT):
            undo(s, trail, mark)
            tag = next(interp._fresh)
            fresh = [Var(f"_L{i}#{tag}") for i in range(k)]
            if unify_in(args[0], make_list(fresh), s, trail):
                yield from _bind(args[1], Int(k), s, trail)


def _sorted(items: list[Term], key: Callable[[Term], Term], dedupe: bool) -> list[Term]:
    out = sorted(items, key=cmp_to_key(lambda a, b: compare_terms(key(a), key(b))))
    if dedupe:
        uniq: list[Term] = []
        for t in out:
            if not uniq or compare_terms(uniq[-1], t) != 0:
                uniq.append(t)
        out = uniq
    return out


@native("sort", 2)
def _sort(_, args, s, trail):
    items = proper_list(args[0], s)
    if items is not None:
        yield from _bind(args[1], make_list(_sorted([resolve(i, s) for i in items], lambda t: t, True)), s, trail)


@native("keysort", 2)
def _keysort(_, args, s, trail):
    items = proper_list(args[0], s)
    if items is None:
        return
    items = [resolve(i, s) for i in items]
    if not all(isinstance(i, Struct) and i.functor == "-" and len(i.args) == 2 for i in items):
        return
    yield from _bind(args[1], make_list(_sorted(items, lambda t: t.args[0], False)), s, trail)


@native("arg", 3)
def _arg(_, args, s, trail):
    n, t = walk(args[0], s), walk(args[1], s)
    if isinstance(n, Int) and isinstance(t, Struct) and 1 <= n.value <= len(t.args):
        yield from _bind(args[2], t.args[n.value - 1], s, trail)


@native("functor", 3)
def _functor(interp, args, s, trail):
    t = walk(args[0], s)
    if isinstance(t, Struct):
        if unify_in(args[1], Atom(t.functor), s, trail):
            yield from _bind(args[2], Int(len(t.args)), s, trail)
        return
    if not isinstance(t, Var):
        if unify_in(args[1], t, s, trail):
            yield from _bind(args[2], Int(0), s, trail)
        return
    name, n = walk(args[1], s), walk(args[2], s)
    if not isinstance(n, Int) or n.value < 0:
        return
    if n.value == 0:
        yield from _bind(t, name, s, trail)
    elif isinstance(name, Atom):
        k = next(interp._fresh)
        fresh = tuple(Var(f"_F{i}#{k}") for i in range(n.value))
        yield from _bind(t, Struct(name.name, fresh), s, trail)


@native("=..", 2)
def _univ(_, args, s, trail):
    t = walk(args[0], s)
    if isinstance(t, Struct):
        yield from _bind(args[1], make_list([Atom(t.functor), *t.args]), s, trail)
        return
    if not isinstance(t, Var):
        yield from _bind(args[1], make_list([t]), s, trail)
        return
    items = proper_list(args[1], s)
    if not items:
        return
    head = walk(items[0], s)
    if len(items) == 1:
        yield from _bind(t, head, s, trail)
    elif isinstance(head, Atom):
        yield from _bind(t, Struct(head.name, tuple(items[1:])), s, trail)


def _text(t: Term) -> str | None:
    if isinstance(t, Atom):
        return t.name
    if isinstance(t, (Int, Float)):
        return str(t.value)
    return None


@native("name", 2)
def _name(_, args, s, trail):
    t = walk(args[0], s)
    text = _text(t)
    if text is not None:
        yield from _bind(args[1], make_list([Int(ord(c)) for c in text]), s, trail)
        return
    codes = proper_list(args[1], s)
    if codes is None:
        return
    codes = [walk(c, s) for c in codes]
    if not all(isinstance(c, Int) and 0 <= c.value < 0x110000 for c in codes):
        return
    text = "".join(chr(c.value) for c in codes)
    try:
        value: Term = Int(int(text))
    except ValueError:
        value = Atom(text)
    yield from _bind(t, value, s, trail)
