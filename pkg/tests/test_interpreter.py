import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modewise import corpus
from modewise.builtins import default_table
from modewise.frontend.reader import parse_program, parse_term
from modewise.frontend.terms import Atom, Int, Struct, Var, format_term, make_list
from modewise.interpreter.engine import (
    ConcreteState,
    ErrorInfo,
    Interpreter,
    alpha,
    frames,
    idempotent,
    resolve,
    run,
    satisfies,
    unify,
)
from modewise.interpreter.natives import compare_terms
from modewise.pos.domain import PosContext, entails

CTX = PosContext()
TABLE = default_table(CTX)
T = parse_term


def interp(src, **kw):
    return Interpreter(parse_program(src), TABLE, **kw)


def qs_interp():
    return Interpreter(parse_program(corpus.source("qs_difflist")), TABLE)


# -- unification ----------------------------------------------------------------


def test_unify_examples():
    s = unify(T("f(X, a)"), T("f(b, Y)"), {})
    assert idempotent(s) == {"X": Atom("b"), "Y": Atom("a")}
    assert unify(T("a"), T("b"), {}) is None
    assert unify(T("X"), T("f(X)"), {}) is None
    assert unify(T("f(X, Y)"), T("f(Y, g(X))"), {}) is None
    assert unify(T("[1, 2|T]"), T("[A|B]"), {}) is not None
    assert unify(T("1"), T("1.0"), {}) is None


def test_unify_is_functional():
    s0 = {"X": Atom("a")}
    s1 = unify(T("Y"), T("X"), s0)
    assert s0 == {"X": Atom("a")}
    assert resolve(Var("Y"), s1) == Atom("a")


terms = st.recursive(
    st.one_of(st.sampled_from([Var("X"), Var("Y"), Var("Z")]), st.sampled_from([Atom("a"), Int(1)])),
    lambda inner: st.builds(lambda f, xs: Struct(f, tuple(xs)), st.sampled_from(["f", "g"]), st.lists(inner, min_size=1, max_size=2)),
    max_leaves=6,
)


@settings(max_examples=300, deadline=None)
@given(terms, terms)
def test_unifier_makes_terms_equal_and_is_idempotent(a, b):
    s = unify(a, b, {})
    if s is None:
        return
    m = idempotent(s)
    assert resolve(a, m) == resolve(b, m)
    bound = set(m)
    for t in m.values():
        assert not bound & {v for v in _vars(t)}


def _vars(t):
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Struct):
        for a in t.args:
            yield from _vars(a)


def test_standard_order():
    order = [T("X"), T("1"), T("2"), T("a"), T("b"), T("f(a)"), T("g(a)"), T("f(a, b)")]
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            assert compare_terms(a, b) < 0 < compare_terms(b, a)


# -- groundness abstraction --------------------------------------------------------


def test_alpha_of_partially_bound_arguments():
    s = {"X": T("f(Y)")}
    f = alpha((Var("X"), Var("Y"), Atom("a")), s, CTX)
    x1, x2, x3 = CTX.var(0), CTX.var(1), CTX.var(2)
    assert f == x1.iff(x2) & x3
    assert satisfies((Var("X"), Atom("a")), {"X": Int(1)}, x1 & x2)
    assert not satisfies((Var("X"), Atom("a")), {}, x1)


def test_groundness_never_decreases_along_a_derivation():
    it = qs_interp()
    query = T("qs([3,1,2], S, [])")
    st_ = ConcreteState(frames([query], 0), {}, None)
    prev = alpha(query.args, {}, CTX)
    seen = 0
    stack = [st_]
    while stack and seen < 400:
        cur = stack.pop()
        if cur.goals is None:
            continue
        nxt = it.step(cur, 64)
        assert not isinstance(nxt, ErrorInfo)
        for child in nxt or []:
            seen += 1
            a = alpha(query.args, child.subst, CTX)
            assert entails(a, alpha(query.args, cur.subst, CTX))
            stack.append(child)
    assert entails(alpha(query.args, cur.subst, CTX), prev)


# -- steps and runs ----------------------------------------------------------------


def test_step_depth_annotations():
    it = qs_interp()
    st_ = ConcreteState(frames([T("qs([2,1], S, T)")], 0), {}, None)
    (child,) = it.step(st_, 64)  # only the second qs clause matches
    assert child.depths() == [1, 1, 1]
    assert [format_term(g).split("(")[0] for g in child.goal_list()] == ["pt", "qs", "qs"]
    assert child.trace() == ("qs([2, 1], S, T)",)
    grand = it.step(child, 64)
    assert all(d == 2 for g in grand for d in g.depths()[:2])


def test_step_on_depth_bound_prunes():
    it = qs_interp()
    st_ = ConcreteState(frames([T("qs([2,1], S, T)")], 5), {}, None)
    assert it.step(st_, 5) is None


def test_step_into_error():
    it = qs_interp()
    st_ = ConcreteState(frames([T("M =< 1")], 0), {}, None)
    err = it.step(st_, 64)
    assert isinstance(err, ErrorInfo) and err.pred == ("=<", 2)


def test_partition_probe_errors():
    out = qs_interp().solve(T("pt([1], M, L, H)"))
    assert out.is_error
    assert out.error.pred == ("=<", 2)
    assert out.error.trace[0] == "pt([1], M, [1|L#2], H)"
    assert out.error.trace[-1] == "pt([1], M, [1|L#2], H)"
    assert format_term(out.error.call) == "(M =< 1)"


def test_quicksort_runs():
    out = qs_interp().solve(T("qs([], S, T)"), max_solutions=1)
    assert out.kind == "success"
    assert resolve(Var("S"), out.answers[0]) == resolve(Var("T"), out.answers[0])
    # this partition puts the larger elements first, so the order is descending
    out = qs_interp().solve(T("qs([2,1,3], S, [])"), max_solutions=1)
    assert out.answers[0]["S"] == make_list([Int(3), Int(2), Int(1)])
    out = qs_interp().solve(T("qs(L, S, [1])"), max_depth=64)
    assert out.is_error


def test_errors_are_not_masked_by_earlier_answers():
    prog = "p(1).\np(X) :- X > 0."
    out = interp(prog).solve(T("p(Y)"), max_solutions=1)
    assert out.is_error and out.answers
    out = interp(prog).solve(T("p(Y)"), max_solutions=1, exhaustive=False)
    assert out.kind == "success"


def test_depth_exceeded_and_failure():
    assert run(T("p"), parse_program("p :- p."), TABLE, max_depth=10).kind == "depth_exceeded"
    assert run(T("p(b)"), parse_program("p(a)."), TABLE).kind == "failure"
    assert run(T("nosuch(1)"), parse_program("p(a)."), TABLE).kind == "failure"


def test_user_assertions_checked_before_resolution():
    it = interp("p(X) :- true.", assertions={("p", 1): CTX.var(0)})
    assert it.solve(T("p(A)")).is_error
    assert it.solve(T("p(a)")).kind == "success"


def test_conjunctive_query():
    out = interp("p(1).\np(2).").solve(T("p(X), p(Y), X < Y"))
    assert len(out.answers) == 1


# -- natives -------------------------------------------------------------------------


@pytest.mark.parametrize(
    "query,kind",
    [
        ("X is 2 + 3 * 4, X =:= 14", "success"),
        ("X is 7 // 2, X == 3", "success"),
        ("X is 1 / 0", "failure"),
        ("X is Y + 1", "error"),
        ("1 < 2, 2 >= 2, 3 =\\= 4", "success"),
        ("atom(a), atomic(1), integer(3), number(2), compound(f(x)), var(_), nonvar(a)", "success"),
        ("functor(f(a, b), N, A), N == f, A == 2", "success"),
        ("functor(T, g, 2), T = g(_, _)", "success"),
        ("arg(2, f(a, b), X), X == b", "success"),
        ("T =.. [h, 1, 2], T == h(1, 2)", "success"),
        ("f(a) =.. L, L == [f, a]", "success"),
        ("length([a, b], N), N == 2", "success"),
        ("length(L, 2), L = [_, _]", "success"),
        ("sort([b, a, b], L), L == [a, b]", "success"),
        ("keysort([b-1, a-2], L), L == [a-2, b-1]", "success"),
        ("compare(O, 1, 2), O == <", "success"),
        ("a @< b, f(a) @> a, a \\== b", "success"),
        ("name(abc, L), name(X, L), X == abc", "success"),
        ("ground(f(a)), \\=(a, b)", "success"),
        ("fail", "failure"),
        ("!, true, nl, write(x)", "success"),
    ],
)
def test_natives(query, kind):
    out = interp("dummy.").solve(T(query), max_solutions=1, max_depth=16)
    assert out.kind == kind, query


def test_read_binds_a_ground_term():
    out = interp("dummy.", rng=random.Random(3)).solve(T("read(X), integer(X)"))
    assert out.kind == "success"
