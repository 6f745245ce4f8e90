import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modewise.pos.domain import PosContext, from_truth_table
from modewise.pos.syntax import FormulaSyntaxError, NameTable, format_formula, parse_formula, positional_names

from conftest import RESOLVE, formula

CTX = PosContext()


@pytest.mark.parametrize(
    "text,printed",
    [
        ("x1 & x2", "x1 & x2"),
        ("x2 & (x1 | x3 & x4)", "x1 & x2 | x2 & x3 & x4"),
        ("x2 <=> x1 & x3", "~x1 & ~x2 | ~x2 & ~x3 | x1 & x2 & x3"),
        ("x1 => x2", "~x1 | x2"),
        ("true", "true"),
        ("x1 & ~x1", "false"),
    ],
)
def test_canonical_printing(text, printed):
    assert format_formula(formula(text, CTX)) == printed


def test_precedence():
    # & binds tighter than |, which binds tighter than =>, then <=>
    assert formula("x1 | x2 & x3", CTX) == formula("x1 | (x2 & x3)", CTX)
    assert formula("x1 => x2 => x3", CTX) == formula("x1 => (x2 => x3)", CTX)
    assert formula("x1 <=> x2 => x3", CTX) == formula("x1 <=> (x2 => x3)", CTX)
    assert formula("~x1 & x2", CTX) == formula("(~x1) & x2", CTX)


@pytest.mark.parametrize("bad", ["", "x1 &", "(x1", "x1 x2", "y1", "x0", "x1 $ x2"])
def test_syntax_errors(bad):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(bad, RESOLVE, CTX)


def test_name_table_interns_in_order():
    names = NameTable()
    f = parse_formula("m & (t1 | t2)", names.resolve, CTX)
    assert names.names == ["m", "t1", "t2"]
    assert format_formula(f, names.namer) == "m & t1 | m & t2"


def test_prefixed_names():
    resolve, name = positional_names("a")
    assert resolve("a3") == 2 and name(0) == "a1"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, (1 << 16) - 1))
def test_print_parse_round_trip(bits):
    f = from_truth_table(CTX, 4, bits)
    assert formula(format_formula(f), CTX) == f
