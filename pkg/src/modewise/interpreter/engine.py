"""SLD interpreter with assertion checking and an error state.

The oracle resolves the leftmost goal depth-first.  Before a call to ``p``
is resolved, the groundness abstraction of the current store on the call's
arguments must entail the required mode of every clause of ``p`` (and, for
builtins, the required mode from the builtin table).  If it does not, the
run stops in the error state.

Bindings are kept in triangular form for cheap branching; :func:`resolve`
and :func:`idempotent` give the fully applied view.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from ..builtins import BuiltinTable
from ..frontend.terms import Atom, Program, SourceClause, Struct, Term, Var, format_term, indicator, term_vars
from ..pos.domain import BoolFn, PosContext, entails, exists_set

_DONE = object()

Pred = tuple[str, int]
Subst = Mapping[str, Term]


# -- unification -------------------------------------------------------------


def walk(t: Term, s: Subst) -> Term:
    while isinstance(t, Var):
        b = s.get(t.name)
        if b is None or b == t:
            # answer maps list unbound query variables as themselves
            return t
        t = b
    return t


def _rebuild(t: Term, leaf) -> Term:
    # explicit stack: answers can be lists thousands of cells long
    done: list[Term] = []
    todo: list = [t]
    while todo:
        item = todo.pop()
        if isinstance(item, tuple):
            functor, n = item
            args = done[len(done) - n:]
            del done[len(done) - n:]
            done.append(Struct(functor, tuple(args)))
            continue
        u = leaf(item)
        if isinstance(u, Struct):
            todo.append((u.functor, len(u.args)))
            todo.extend(reversed(u.args))
        else:
            done.append(u)
    return done[0]


def resolve(t: Term, s: Subst) -> Term:
    """Apply ``s`` to ``t`` all the way down."""
    return _rebuild(t, lambda u: walk(u, s))


def substitute(t: Term, m: Subst) -> Term:
    """Replace variables of ``t`` by their images under ``m`` in one pass."""
    return _rebuild(t, lambda u: m.get(u.name, u) if isinstance(u, Var) else u)


def idempotent(s: Subst) -> dict[str, Term]:
    """The idempotent substitution denoted by triangular bindings ``s``."""
    return {k: resolve(Var(k), s) for k in s}


def _occurs(name: str, t: Term, s: Subst) -> bool:
    # bound variables are expanded once: answer terms share structure heavily
    seen: set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        while isinstance(u, Var):
            if u.name == name:
                return True
            if u.name in seen:
                break
            seen.add(u.name)
            b = s.get(u.name)
            if b is None:
                break
            u = b
        if isinstance(u, Struct):
            stack.extend(u.args)
    return False


def unify_in(
    a: Term, b: Term, s: dict[str, Term], trail: list[str], fresh: frozenset[str] | set[str] | None = None
) -> bool:
    """Extend ``s`` in place with an mgu of ``a`` and ``b`` (occurs check on).

    Every new binding is pushed on ``trail``.  On failure some bindings may
    already have been made; the caller undoes them with :func:`undo`.

    ``fresh`` names the variables of a just-renamed clause head.  Such a
    variable can only occur inside the other side's terms once a binding
    made here has exposed it, so binding an unexposed fresh variable, or
    binding to a term made only of unbound unexposed fresh variables,
    cannot create a cycle and skips the occurs check.
    """
    exposed: set[str] = set()

    def hidden(name: str) -> bool:
        return fresh is not None and name in fresh and name not in exposed

    def bind(v: str, t: Term) -> bool:
        if hidden(v):
            s[v] = t
            trail.append(v)
            return True
        names = list(term_vars(t)) if fresh is not None else None
        if not (names is not None and all(hidden(w) and w not in s for w in names)) and _occurs(v, t, s):
            return False
        s[v] = t
        trail.append(v)
        if names:
            exposed.update(w for w in names if w in fresh)
        return True

    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x = walk(x, s)
        y = walk(y, s)
        if x is y or x == y:
            continue
        if isinstance(x, Var) and isinstance(y, Var) and hidden(y.name) and not hidden(x.name):
            # keep the caller's variable as the representative
            bind(y.name, x)
        elif isinstance(x, Var):
            if not bind(x.name, y):
                return False
        elif isinstance(y, Var):
            if not bind(y.name, x):
                return False
        elif isinstance(x, Struct) and isinstance(y, Struct):
            if x.functor != y.functor or len(x.args) != len(y.args):
                return False
            stack.extend(zip(x.args, y.args))
        else:
            return False
    return True


def undo(s: dict[str, Term], trail: list[str], mark: int) -> None:
    while len(trail) > mark:
        del s[trail.pop()]


def unify(a: Term, b: Term, s: Subst) -> Optional[dict[str, Term]]:
    """Most general unifier extending ``s`` (occurs check on), or None."""
    out = dict(s)
    return out if unify_in(a, b, out, []) else None


def vars_of(t: Term, s: Subst) -> list[str]:
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        u = walk(stack.pop(), s)
        if isinstance(u, Var):
            seen.setdefault(u.name)
        elif isinstance(u, Struct):
            stack.extend(reversed(u.args))
    return list(seen)


def ground_under(t: Term, s: Subst) -> bool:
    return not vars_of(t, s)


# -- groundness abstraction ---------------------------------------------------


def alpha(args: tuple[Term, ...], s: Subst, ctx: PosContext) -> BoolFn:
    """Pos description of the store ``s`` projected onto argument positions.

    Position ``i`` is ground exactly when every variable of ``args[i]`` is;
    the term variables are then projected away.
    """
    n = len(args)
    index: dict[str, int] = {}
    f = ctx.true
    for i, a in enumerate(args):
        vs = [index.setdefault(v, n + len(index)) for v in vars_of(a, s)]
        f = f & ctx.iff_conj(i, vs)
    return exists_set(f, range(n, n + len(index)))


def satisfies(args: tuple[Term, ...], s: Subst, mode: BoolFn) -> bool:
    if mode.is_true:
        return True
    if all(ground_under(a, s) for a in args):
        return not mode.is_false
    return entails(alpha(args, s, mode.ctx), mode)


# -- states and outcomes --------------------------------------------------------


@dataclass(frozen=True)
class Frame:
    """One pending goal with its depth annotation; frames form a linked stack."""

    goal: Term
    depth: int
    rest: Optional[Frame] = None


def conjuncts(t: Term) -> list[Term]:
    out = []
    while isinstance(t, Struct) and t.functor == "," and len(t.args) == 2:
        out.extend(conjuncts(t.args[0]))
        t = t.args[1]
    if t != Atom("true"):
        out.append(t)
    return out


def frames(goals: list[Term], depth: int, rest: Optional[Frame] = None) -> Optional[Frame]:
    for g in reversed(goals):
        rest = Frame(g, depth, rest)
    return rest


@dataclass(frozen=True)
class ConcreteState:
    goals: Optional[Frame]
    subst: Mapping[str, Term]
    path: Optional[tuple] = None  # (selected goal, parent path) links

    def trace(self) -> tuple[str, ...]:
        """Selected goals from the query down to this state, with current bindings."""
        out, p = [], self.path
        while p is not None:
            out.append(format_term(resolve(p[0], self.subst)))
            p = p[1]
        return tuple(reversed(out))

    def goal_list(self) -> list[Term]:
        out, f = [], self.goals
        while f is not None:
            out.append(f.goal)
            f = f.rest
        return out

    def depths(self) -> list[int]:
        out, f = [], self.goals
        while f is not None:
            out.append(f.depth)
            f = f.rest
        return out


@dataclass(frozen=True)
class ErrorInfo:
    pred: Pred
    call: Term
    required: BoolFn
    depth: int
    trace: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{format_term(self.call)} violates required mode {self.required} at depth {self.depth}"


@dataclass
class Outcome:
    kind: str  # success | failure | error | depth_exceeded
    answers: list[dict[str, Term]] = field(default_factory=list)
    error: Optional[ErrorInfo] = None
    steps: int = 0
    pruned: bool = False

    @property
    def is_error(self) -> bool:
        return self.kind == "error"


class Interpreter:
    """Oracle semantics for one program.

    ``assertions`` maps predicates to a required mode over ``x1..xN`` that
    every clause of the predicate carries; builtins take theirs from
    ``table`` or, failing that, ``extra_required``.  Calls to predicates
    that are neither defined nor builtins simply fail.
    """

    def __init__(
        self,
        program: Program,
        table: BuiltinTable,
        assertions: Mapping[Pred, BoolFn] | None = None,
        rng: random.Random | None = None,
        extra_required: Mapping[Pred, BoolFn] | None = None,
    ) -> None:
        from .natives import NATIVES

        self.program = program
        self.table = table
        self.ctx = table.ctx
        self.assertions = dict(assertions or {})
        self.extra_required = dict(extra_required or {})
        self.rng = rng or random.Random(0)
        self.natives = NATIVES
        self.clauses: dict[Pred, list[SourceClause]] = {}
        for c in program.clauses:
            self.clauses.setdefault(c.predicate, []).append(c)
        self._fresh = itertools.count(1)

    def rename(self, clause: SourceClause) -> tuple[Term, list[Term], set[str]]:
        """A fresh copy of ``clause`` plus the names of its head variables."""
        k = next(self._fresh)
        names: dict[str, Var] = {}

        def go(t: Term) -> Term:
            if isinstance(t, Var):
                v = names.get(t.name)
                if v is None:
                    v = names[t.name] = Var(f"{t.name}#{k}")
                return v
            if isinstance(t, Struct):
                return Struct(t.functor, tuple(go(a) for a in t.args))
            return t

        head = go(clause.head)
        head_vars = {v.name for v in names.values()}
        return head, [go(g.term) for g in clause.body], head_vars

    def required_mode(self, pred: Pred) -> Optional[BoolFn]:
        if pred in self.clauses:
            return self.assertions.get(pred)
        spec = self.table.get(pred)
        if spec is not None:
            return spec.required
        return self.extra_required.get(pred)

    def select(self, fr: Frame, s: Subst, max_depth: int) -> tuple[Term, Pred, tuple[Term, ...]] | ErrorInfo | None:
        """Check the leftmost goal: None if it is beyond the depth bound, an
        :class:`ErrorInfo` if the store violates a required mode."""
        g = walk(fr.goal, s)
        if not isinstance(g, (Atom, Struct)):
            raise TypeError(f"goal is not callable: {format_term(resolve(g, s))}")
        if fr.depth >= max_depth:
            return None
        pred = indicator(g)
        args = g.args if isinstance(g, Struct) else ()
        required = self.required_mode(pred)
        if required is not None and not satisfies(args, s, required):
            return ErrorInfo(pred, resolve(g, s), required, fr.depth)
        return g, pred, args

    def alternatives(
        self, fr: Frame, g: Term, pred: Pred, args: tuple[Term, ...], s: dict[str, Term], trail: list[str], shuffle: bool
    ) -> Iterator[Optional[Frame]]:
        """Resolve ``g`` against ``s`` in place, yielding the goal list of each
        successor.  The consumer undoes the trail between successors."""
        rest = fr.rest
        if pred == ("=", 2):
            if unify_in(args[0], args[1], s, trail):
                yield rest
            return
        cls = self.clauses.get(pred)
        if cls is not None:
            if shuffle:
                cls = list(cls)
                self.rng.shuffle(cls)
            mark = len(trail)
            for c in cls:
                head, body, fresh = self.rename(c)
                if unify_in(g, head, s, trail, fresh):
                    yield frames(body, fr.depth + 1, rest)
                undo(s, trail, mark)
            return
        native = self.natives.get(pred)
        if native is not None:
            for _ in native(self, args, s, trail):
                yield rest

    def step(self, st: ConcreteState, max_depth: int, shuffle: bool = False) -> list[ConcreteState] | ErrorInfo | None:
        """Successors of ``st``; an :class:`ErrorInfo` for the error state; None if pruned by depth."""
        fr = st.goals
        assert fr is not None
        s = dict(st.subst)
        sel = self.select(fr, s, max_depth)
        if sel is None:
            return None
        if isinstance(sel, ErrorInfo):
            return ErrorInfo(sel.pred, sel.call, sel.required, sel.depth, st.trace())
        g, pred, args = sel
        path = (g, st.path)
        out = []
        trail: list[str] = []
        for goals in self.alternatives(fr, g, pred, args, s, trail, shuffle):
            out.append(ConcreteState(goals, dict(s), path))
            undo(s, trail, 0)
        return out

    def solve(
        self,
        query: Term,
        max_depth: int = 128,
        max_solutions: int | None = None,
        budget: int = 20000,
        exhaustive: bool = True,
        shuffle: bool = False,
        subst: Subst | None = None,
    ) -> Outcome:
        """Depth-first search for answers to ``query``.

        With ``exhaustive`` set the search continues past ``max_solutions``
        so that an error anywhere in the explored tree is still reported.
        """
        qvars = vars_of(query, {})
        s: dict[str, Term] = dict(subst or {})
        trail: list[str] = []
        # choice points: (successor generator, trail mark, selected-goal path)
        choices: list[tuple[Iterator[Optional[Frame]], int, Optional[tuple]]] = []
        out = Outcome("failure")
        goals: Optional[Frame] = frames(conjuncts(query), 0)
        path: Optional[tuple] = None
        live = True
        while True:
            if live:
                if goals is None:
                    if max_solutions is None or len(out.answers) < max_solutions:
                        out.answers.append({v: resolve(Var(v), s) for v in qvars})
                    if not exhaustive and max_solutions is not None and len(out.answers) >= max_solutions:
                        break
                elif out.steps >= budget:
                    out.pruned = True
                    break
                else:
                    out.steps += 1
                    sel = self.select(goals, s, max_depth)
                    if sel is None:
                        out.pruned = True
                    elif isinstance(sel, ErrorInfo):
                        trace = ConcreteState(goals, s, path).trace()
                        out.kind = "error"
                        out.error = ErrorInfo(sel.pred, sel.call, sel.required, sel.depth, trace)
                        return out
                    else:
                        g, pred, args = sel
                        path = (g, path)
                        choices.append((self.alternatives(goals, g, pred, args, s, trail, shuffle), len(trail), path))
            # take the next successor of the most recent choice point
            live = False
            while choices:
                gen, mark, p = choices[-1]
                undo(s, trail, mark)
                nxt = next(gen, _DONE)
                if nxt is _DONE:
                    choices.pop()
                    continue
                goals, path, live = nxt, p, True
                break
            if not live:
                break
        if out.answers:
            out.kind = "success"
        elif out.pruned:
            out.kind = "depth_exceeded"
        return out

def run(
    query: Term,
    program: Program,
    table: BuiltinTable,
    max_depth: int = 128,
    max_solutions: int | None = None,
    assertions: Mapping[Pred, BoolFn] | None = None,
    budget: int = 20000,
) -> Outcome:
    return Interpreter(program, table, assertions).solve(query, max_depth, max_solutions, budget)
