"""Positive Boolean functions (Pos) as groundness descriptions.

A :class:`BoolFn` is an immutable handle on a canonical decision diagram.
Two handles from the same :class:`PosContext` are equal exactly when they
denote the same function, so ``==`` is semantic equality.

Pos is closed under conjunction, disjunction, implication and existential
projection.  Cofactoring and classical universal projection are not closed,
which is why :func:`forall` falls back to bottom.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Mapping, Sequence

from .bdd import FALSE, TRUE, Manager


class PosContext:
    """Owns the node store that every function in one analysis shares."""

    def __init__(self) -> None:
        self.mgr = Manager()
        self.true = BoolFn(self, TRUE)
        self.false = BoolFn(self, FALSE)

    def var(self, v: int) -> BoolFn:
        return BoolFn(self, self.mgr.var(v))

    def conj_all(self, fs: Iterable[BoolFn]) -> BoolFn:
        return reduce(conj, fs, self.true)

    def disj_all(self, fs: Iterable[BoolFn]) -> BoolFn:
        return reduce(disj, fs, self.false)

    def iff_conj(self, x: int, ys: Iterable[int]) -> BoolFn:
        """``x <=> (y1 & ... & yn)``; with no ``ys`` this is just ``x``."""
        body = self.conj_all(self.var(y) for y in ys)
        return self.var(x).iff(body)


_default: PosContext | None = None


def default_context() -> PosContext:
    global _default
    if _default is None:
        _default = PosContext()
    return _default


class BoolFn:
    __slots__ = ("ctx", "node")

    def __init__(self, ctx: PosContext, node: int) -> None:
        self.ctx = ctx
        self.node = node

    def _wrap(self, node: int) -> BoolFn:
        return BoolFn(self.ctx, node)

    def _check(self, other: BoolFn) -> None:
        if other.ctx is not self.ctx:
            raise ValueError("functions belong to different contexts")

    def __and__(self, other: BoolFn) -> BoolFn:
        self._check(other)
        return self._wrap(self.ctx.mgr.conj(self.node, other.node))

    def __or__(self, other: BoolFn) -> BoolFn:
        self._check(other)
        return self._wrap(self.ctx.mgr.disj(self.node, other.node))

    def implies(self, other: BoolFn) -> BoolFn:
        self._check(other)
        return self._wrap(self.ctx.mgr.implies(self.node, other.node))

    def iff(self, other: BoolFn) -> BoolFn:
        self._check(other)
        return self._wrap(self.ctx.mgr.iff(self.node, other.node))

    def negate(self) -> BoolFn:
        # general Boolean negation; the result is never in Pos unless it is 0
        return self._wrap(self.ctx.mgr.neg(self.node))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolFn):
            return NotImplemented
        return self.ctx is other.ctx and self.node == other.node

    def __hash__(self) -> int:
        return hash((id(self.ctx), self.node))

    def __repr__(self) -> str:
        from .syntax import format_formula

        return f"BoolFn({format_formula(self)!r})"

    def __str__(self) -> str:
        from .syntax import format_formula

        return format_formula(self)

    @property
    def is_true(self) -> bool:
        return self.node == TRUE

    @property
    def is_false(self) -> bool:
        return self.node == FALSE

    def support(self) -> set[int]:
        return self.ctx.mgr.support(self.node)

    def evaluate(self, assignment: Mapping[int, bool] | Sequence[bool]) -> bool:
        return self.ctx.mgr.evaluate(self.node, assignment)


def mk_true(ctx: PosContext | None = None) -> BoolFn:
    return (ctx or default_context()).true


def mk_false(ctx: PosContext | None = None) -> BoolFn:
    return (ctx or default_context()).false


def mk_var(v: int, ctx: PosContext | None = None) -> BoolFn:
    return (ctx or default_context()).var(v)


def conj(f: BoolFn, g: BoolFn) -> BoolFn:
    return f & g


def disj(f: BoolFn, g: BoolFn) -> BoolFn:
    return f | g


def pseudo_complement(f: BoolFn, g: BoolFn) -> BoolFn:
    """Weakest positive ``h`` with ``f & h |= g``.

    For ``g`` other than 0 this is classical implication: ``~f | g`` is
    then true at the all-ones point, and ``f & h |= g`` iff ``h |= ~f | g``.
    With ``g = 0`` only ``h = 0`` qualifies, unless ``f`` is 0 too.
    """
    h = f.implies(g)
    return h if is_positive(h) else f.ctx.false


def is_positive(f: BoolFn) -> bool:
    """True for 0 and for every function true at the all-ones assignment."""
    return f.is_false or f.ctx.mgr.holds_at_all_ones(f.node)


def restrict(f: BoolFn, v: int, value: bool) -> BoolFn:
    return f._wrap(f.ctx.mgr.restrict(f.node, v, value))


def exists(f: BoolFn, v: int) -> BoolFn:
    return f._wrap(f.ctx.mgr.exists(f.node, v))


def forall(f: BoolFn, v: int) -> BoolFn:
    """Strengthening projection: ``f[v:=0] & f[v:=1]`` if positive, else 0."""
    g = f._wrap(f.ctx.mgr.forall_classic(f.node, v))
    return g if is_positive(g) else f.ctx.false


def exists_set(f: BoolFn, vs: Iterable[int]) -> BoolFn:
    for v in sorted(vs, reverse=True):
        f = exists(f, v)
    return f


def forall_set(f: BoolFn, vs: Iterable[int]) -> BoolFn:
    for v in sorted(vs, reverse=True):
        f = forall(f, v)
        if f.is_false:
            break
    return f


def project_onto(f: BoolFn, keep: Iterable[int], mode: str = "exists") -> BoolFn:
    drop = f.support() - set(keep)
    if mode == "exists":
        return exists_set(f, drop)
    if mode == "forall":
        return forall_set(f, drop)
    raise ValueError(f"unknown projection mode: {mode!r}")


def rename(f: BoolFn, mapping: Mapping[int, int]) -> BoolFn:
    """Simultaneous substitution of variables.

    The renaming extended with the identity on the rest of ``f``'s support
    must be injective, otherwise two distinct variables would be merged.
    """
    support = f.support()
    full = {v: mapping.get(v, v) for v in support}
    if len(set(full.values())) != len(full):
        raise ValueError(f"renaming is not injective on the support: {dict(mapping)}")
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise ValueError(f"renaming is not injective: {dict(mapping)}")
    active = {v: w for v, w in mapping.items() if v in support and v != w}
    return f._wrap(f.ctx.mgr.rename(f.node, active))


def entails(f: BoolFn, g: BoolFn) -> bool:
    return (f & g) == f


def equiv(f: BoolFn, g: BoolFn) -> bool:
    return f == g


def reference_eval(f: BoolFn, assignment: Mapping[int, bool] | Sequence[bool]) -> bool:
    return f.evaluate(assignment)


def cubes_to_fn(
    ctx: PosContext, cubes: Iterable[Iterable[tuple[int, bool]]]
) -> BoolFn:
    out = ctx.false
    for cube in cubes:
        term = ctx.true
        for v, pol in cube:
            lit = ctx.var(v)
            term = term & (lit if pol else lit.negate())
        out = out | term
    return out


def from_truth_table(ctx: PosContext, nvars: int, bits: int) -> BoolFn:
    """Function whose value at assignment ``a`` (var i = bit i of a) is bit ``a`` of ``bits``."""
    mgr = ctx.mgr

    def build(level: int, offset: int) -> int:
        if level == nvars:
            return TRUE if (bits >> offset) & 1 else FALSE
        lo = build(level + 1, offset)
        hi = build(level + 1, offset | (1 << level))
        return mgr.mk(level, lo, hi)

    return BoolFn(ctx, build(0, 0))


def to_truth_table(f: BoolFn, nvars: int) -> int:
    bits = 0
    for a in range(1 << nvars):
        if f.evaluate([(a >> i) & 1 == 1 for i in range(nvars)]):
            bits |= 1 << a
    return bits

