import pytest

from modewise import corpus
from modewise.builtins import default_table
from modewise.frontend.normalize import Call, Equation, is_normal, normalize, normalize_clause, to_source
from modewise.frontend.reader import PrologSyntaxError, UnsupportedConstruct, parse_program, parse_term
from modewise.frontend.terms import NIL, Atom, Int, Program, Struct, Var, format_term, make_list
from modewise.interpreter.engine import Interpreter
from modewise.pos.domain import PosContext

# -- reader -------------------------------------------------------------------


def test_terms_and_operators():
    assert parse_term("f(X, a, 3)") == Struct("f", (Var("X"), Atom("a"), Int(3)))
    assert parse_term("[1, 2|T]") == make_list([Int(1), Int(2)], Var("T"))
    assert parse_term("[]") == NIL
    assert parse_term("X is Y + 1 * 2") == parse_term("is(X, +(Y, *(1, 2)))")
    assert parse_term("a - b - c") == parse_term("-(-(a, b), c)")
    assert parse_term("'hello world'") == Atom("hello world")
    assert parse_term("- 1") == parse_term("-(1)")


def test_anonymous_variables_are_distinct():
    t = parse_term("f(_, _)")
    assert t.args[0] != t.args[1]


def test_program_clauses_and_directives():
    prog = parse_program(
        """
        % comment
        :- assertion(p(X), 'x1').
        p(X) :- q(X), /* inline */ true.
        q(a).
        """
    )
    assert len(prog.directives) == 1
    assert [c.predicate for c in prog.clauses] == [("p", 1), ("q", 1)]
    # `true` goals are dropped
    assert len(prog.clauses[0].body) == 1


@pytest.mark.parametrize(
    "src",
    [
        "p :- (q ; r).",
        "p :- (q -> r ; s).",
        "p :- \\+ q.",
        "p :- findall(X, q(X), L).",
        "p :- X, q.",
        "p --> q.",
        "p :- call(q).",
    ],
)
def test_unsupported_constructs(src):
    with pytest.raises(UnsupportedConstruct):
        parse_program(src)


@pytest.mark.parametrize("src", ["p(X :- q.", "p(X) :- q(X)", "3 :- q."])
def test_syntax_errors_carry_position(src):
    with pytest.raises(PrologSyntaxError) as exc:
        parse_program(src, "bad.pl")
    assert exc.value.line == 1
    assert "bad.pl:1" in str(exc.value)


def test_format_term_round_trip():
    for text in ["f(X, [a, b|T], 'A b')", "(X is (Y + 1))", "g(-(a), -3)", "[]"]:
        t = parse_term(text)
        assert parse_term(format_term(t)) == t


# -- normalisation --------------------------------------------------------------


def norm(src):
    return normalize_clause(parse_program(src).clauses[0])


def test_head_arguments_become_distinct_variables():
    c = norm("app([X|Xs], Ys, [X|Zs]) :- app(Xs, Ys, Zs).")
    assert c.head == ("_T1", "Ys", "_T2")
    assert c.eqns == (Equation("_T1", parse_term("[X|Xs]")), Equation("_T2", parse_term("[X|Zs]")))
    assert c.body == (Call(("app", 3), ("Xs", "Ys", "Zs")),)
    assert is_normal(c)


def test_repeated_variables_and_nested_terms():
    c = norm("p(X, X, f(g(Y))) :- q(Y, Y, a).")
    assert len(set(c.head)) == 3
    assert is_normal(c)
    # the nested g(Y) gets its own equation
    assert any(e.rhs == Struct("g", (Var("Y"),)) for e in c.eqns)
    # body-atom equations sit at the neck too
    call = c.calls()[0]
    assert len(set(call.args)) == 3


def test_fresh_names_avoid_program_variables():
    c = norm("p(_T1, a) :- q(_T1).")
    assert "_T1" == c.head[0]
    assert c.head[1] != "_T1"


def test_equation_goal_position():
    # before any call: joins the neck; after a call: stays in place
    c = norm("p(X, Y) :- X = f(Z), q(Z), Y = g(Z).")
    assert Equation("X", parse_term("f(Z)")) in c.eqns
    assert isinstance(c.body[-1], Equation) and c.body[-1] == Equation("Y", parse_term("g(Z)"))


def test_equation_between_non_variables():
    c = norm("p :- f(A) = f(b).")
    lhs = {e.lhs for e in c.eqns}
    assert len(lhs) >= 1 and is_normal(c)


@pytest.mark.parametrize("name", corpus.names())
def test_normalisation_is_idempotent(name):
    prog = parse_program(corpus.source(name))
    for c in normalize(prog.clauses):
        assert is_normal(c)
        assert normalize_clause(to_source(c)) == c


def _answers(program, query, n=20):
    interp = Interpreter(program, default_table(PosContext()))
    out = interp.solve(parse_term(query), max_depth=64, max_solutions=n, exhaustive=False)
    return sorted(format_term(Struct("ans", tuple(a[v] for v in sorted(a)))) if a else "yes" for a in out.answers)


@pytest.mark.parametrize(
    "name,query",
    [
        ("quicksort", "qsort([3,1,2], S)"),
        ("quicksort", "partition([3,1,5], 2, L, H)"),
        ("quicksort", "append(X, Y, [1,2,3])"),
        ("treesort", "treesort([2,3,1], S)"),
        ("heapify", "heapify(tree(tree(void,3,void),1,tree(void,2,void)), H)"),
        ("permsort", "sort([2,1,3], S)"),
        ("queens", "queens([1,2,3,4], Qs)"),
        ("dnf", "dnf(or(and(p, or(q, r)), and(s, t)), F)"),
    ],
)
def test_normalisation_preserves_answers(name, query):
    prog = parse_program(corpus.source(name))
    normal = Program([to_source(c) for c in normalize(prog.clauses)], prog.directives)
    before = _answers(prog, query)
    assert before
    assert _answers(normal, query) == before
