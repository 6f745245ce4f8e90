"""Pos operations checked against explicit truth tables.

Exhaustive over every positive function on up to three variables; the
four-variable cases are drawn at random with hypothesis.
"""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modewise.pos import truthtable as tt
from modewise.pos.domain import (
    PosContext,
    entails,
    exists,
    exists_set,
    forall,
    forall_set,
    from_truth_table,
    is_positive,
    project_onto,
    pseudo_complement,
    rename,
    restrict,
    to_truth_table,
)

CTX = PosContext()
POS = {n: list(tt.positive_functions(n)) for n in range(4)}


def fn(t):
    return from_truth_table(CTX, t.nvars, t.bits)


def table(f, n):
    return tt.Table(n, to_truth_table(f, n))


@pytest.mark.parametrize("n,expected", [(0, 2), (1, 3), (2, 9), (3, 129)])
def test_pos_sizes(n, expected):
    # 2^(2^n - 1) functions true at the top assignment, plus bottom
    assert len(POS[n]) == expected


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trip_and_canonicity(n):
    seen = {}
    for t in POS[n]:
        f = fn(t)
        assert table(f, n) == t
        assert is_positive(f)
        assert f.node not in seen
        seen[f.node] = t


@pytest.mark.parametrize("n", [1, 2, 3])
def test_binary_operators_exhaustive(n):
    for a, b in itertools.product(POS[n], repeat=2):
        f, g = fn(a), fn(b)
        assert table(f & g, n) == tt.conj(a, b)
        assert table(f | g, n) == tt.disj(a, b)
        assert table(pseudo_complement(f, g), n) == tt.pseudo_complement(a, b)
        assert entails(f, g) == tt.entails(a, b)
        for h in (f & g, f | g, pseudo_complement(f, g)):
            assert is_positive(h)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projections_exhaustive(n):
    for a in POS[n]:
        f = fn(a)
        for v in range(n):
            assert table(exists(f, v), n) == tt.exists(a, v)
            assert table(forall(f, v), n) == tt.forall(a, v)
            assert is_positive(exists(f, v)) and is_positive(forall(f, v))
            for val in (False, True):
                assert table(restrict(f, v, val), n) == tt.restrict(a, v, val)


def test_heyting_adjunction_exhaustive():
    """f & h |= g exactly when h |= (f => g), over all triples on three variables."""
    n = 3
    pcs = {(a.bits, b.bits): tt.pseudo_complement(a, b).bits for a in POS[n] for b in POS[n]}
    # the implication computed by diagrams agrees with the reference on every pair
    for a, b in itertools.product(POS[n], repeat=2):
        assert to_truth_table(pseudo_complement(fn(a), fn(b)), n) == pcs[(a.bits, b.bits)]
    full = (1 << (1 << n)) - 1
    bits = [t.bits for t in POS[n]]
    for f in bits:
        for g in bits:
            imp = pcs[(f, g)]
            for h in bits:
                lhs = (f & h) & ~g & full == 0
                rhs = h & ~imp & full == 0
                assert lhs == rhs


def test_pseudo_complement_is_weakest():
    n = 3
    bits = [t.bits for t in POS[n]]
    for a, b in itertools.product(POS[n], repeat=2):
        best = pseudo_complement(fn(a), fn(b))
        assert entails(fn(a) & best, fn(b))
        w = to_truth_table(best, n)
        for h in bits:
            if a.bits & h & ~b.bits == 0:
                assert h & ~w == 0


def test_forall_is_right_adjoint_of_exists():
    """exists_v(c) |= f  iff  c |= forall_v(f), for positive c and f."""
    n = 3
    for a in POS[n]:
        f = fn(a)
        for v in range(n):
            fa = forall(f, v)
            assert table(fa, n) == tt.forall_adjoint(a, v)
            for c in POS[n]:
                g = fn(c)
                assert entails(exists(g, v), f) == entails(g, fa)


def test_projection_duality():
    n = 3
    for a in POS[n]:
        f = fn(a)
        for v in range(n):
            assert entails(forall(f, v), f)
            assert entails(f, exists(f, v))
            assert entails(exists(forall(f, v), v), f)
            assert entails(f, forall(exists(f, v), v))
            assert v not in exists(f, v).support()
            assert v not in forall(f, v).support()


def test_forall_falls_to_bottom_when_cofactor_meet_is_not_positive():
    x, y = CTX.var(0), CTX.var(1)
    # x <=> y: both cofactors meet in ~y & y... classically ~y & y is 0 anyway
    assert forall(x.iff(y), 0).is_false
    # x | y: meet of cofactors is y, positive
    assert forall(x | y, 0) == y
    # x: f[x:=0] & f[x:=1] = 0
    assert forall(x, 0).is_false


def test_set_projections_and_project_onto():
    x = [CTX.var(i) for i in range(4)]
    f = x[0].iff(x[1] & x[2]) & (x[3] | x[0])
    assert exists_set(f, {1, 2, 3}) == CTX.true
    assert project_onto(f, {0}, "exists") == CTX.true
    assert forall_set(x[0] | x[1], {1}) == x[0]
    assert project_onto(x[0] & x[1], {0}, "forall").is_false
    with pytest.raises(ValueError):
        project_onto(f, {0}, "sideways")


def test_rename_rejects_merging():
    f = CTX.var(0) & CTX.var(1)
    assert rename(f, {0: 1, 1: 0}) == f
    assert rename(CTX.var(0), {0: 5}) == CTX.var(5)
    with pytest.raises(ValueError):
        rename(f, {0: 1})


def test_contexts_do_not_mix():
    other = PosContext()
    with pytest.raises(ValueError):
        CTX.var(0) & other.var(0)


# -- four variables, randomised ------------------------------------------------

TOP4 = 1 << 15
FULL4 = (1 << 16) - 1


def random_pos4(rng):
    return 0 if rng.random() < 0.03 else rng.getrandbits(16) | TOP4


def random_four_variable_cases(n, seed=20240917):
    """``n`` seeded random cases; the acceptance suite runs 10^5 of them."""
    rng = random.Random(seed)
    for _ in range(n):
        check_four(random_pos4(rng), random_pos4(rng), random_pos4(rng), rng.randrange(4))


def check_four(a, b, h, v):
    A, B = tt.Table(4, a), tt.Table(4, b)
    f, g = fn(A), fn(B)
    assert to_truth_table(f & g, 4) == a & b
    assert to_truth_table(f | g, 4) == a | b
    assert to_truth_table(exists(f, v), 4) == tt.exists(A, v).bits
    assert to_truth_table(forall(f, v), 4) == tt.forall(A, v).bits
    assert entails(f, g) == (a & ~b & FULL4 == 0)
    # adjunction instead of the exhaustive search, which is 2^15 wide here
    pc = to_truth_table(pseudo_complement(f, g), 4)
    assert tt.is_positive(tt.Table(4, pc))
    assert a & pc & ~b & FULL4 == 0
    assert (a & h & ~b & FULL4 == 0) == (h & ~pc & FULL4 == 0)


@st.composite
def pos4(draw):
    if draw(st.integers(0, 31)) == 0:
        return 0
    return draw(st.integers(0, FULL4)) | TOP4


def test_random_four_variable_cases():
    random_four_variable_cases(5_000)


@settings(max_examples=500, deadline=None)
@given(pos4(), pos4(), pos4(), st.integers(0, 3))
def test_four_variable_properties(a, b, h, v):
    check_four(a, b, h, v)


@settings(max_examples=300, deadline=None)
@given(pos4(), st.permutations(range(4)))
def test_random_renaming(a, perm):
    mapping = dict(enumerate(perm))
    assert to_truth_table(rename(fn(tt.Table(4, a)), mapping), 4) == tt.rename(tt.Table(4, a), mapping).bits
