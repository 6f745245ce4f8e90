import random

import pytest

from modewise import corpus
from modewise.frontend.reader import parse_program
from modewise.frontend.terms import is_ground
from modewise.interpreter.sampling import (
    Oracle,
    TermGenerator,
    check_success,
    program_signature,
    query_alpha,
    sample_and_check,
    satisfying_query,
)
from modewise.pos.domain import entails

from conftest import corpus_result, formula


def test_signature():
    sig = program_signature(parse_program(corpus.source("heapify")))
    assert sig.atoms == ("void",)
    assert sig.functors == (("tree", 3),)


def test_generated_queries_satisfy_the_mode():
    res = corpus_result("qs_difflist")
    ctx = res.abstract.ctx
    gen = TermGenerator(program_signature(res.program), random.Random(1))
    mode = formula("x2 & (x1 | x3 & x4)", ctx)
    for _ in range(200):
        q, fell_back = satisfying_query(gen, ("pt", 4), mode)
        assert entails(query_alpha(q, mode), mode)
        if fell_back:
            assert all(is_ground(a) for a in q.args)


def test_false_mode_is_rejected():
    res = corpus_result("qs_difflist")
    gen = TermGenerator(program_signature(res.program), random.Random(1))
    with pytest.raises(ValueError, match="false"):
        satisfying_query(gen, ("qs", 3), res.abstract.ctx.false)


def test_partial_terms_contain_a_variable():
    gen = TermGenerator(program_signature(parse_program(corpus.source("heapify"))), random.Random(5))
    for _ in range(100):
        assert not is_ground(gen.partial())


def test_inferred_modes_are_safe_on_a_small_sample():
    res = corpus_result("qs_difflist")
    oracle = Oracle.from_analysis(res)
    for p in res.user_predicates:
        rep = sample_and_check(oracle, p, res.calls[p], n=30, seed=7)
        assert rep.ok, rep.counterexamples[:1]
        assert rep.samples == 30


def test_a_weaker_mode_is_caught():
    res = corpus_result("qs_difflist")
    oracle = Oracle.from_analysis(res)
    rep = sample_and_check(oracle, ("qs", 3), res.abstract.ctx.true, n=60, seed=7)
    assert not rep.ok
    q, err = rep.counterexamples[0]
    assert err.pred in {("=<", 2), (">", 2)}


def test_success_patterns_hold_on_sampled_answers():
    res = corpus_result("quicksort")
    oracle = Oracle.from_analysis(res)
    for p in res.user_predicates:
        rep = check_success(oracle, p, res.success[p], res.calls[p], n=20, seed=3)
        assert rep.ok and rep.derivations == 20


def test_a_too_strong_success_pattern_is_caught():
    res = corpus_result("quicksort")
    oracle = Oracle.from_analysis(res)
    ctx = res.abstract.ctx
    # append(X, Y, Z) can succeed with Y unbound
    rep = check_success(oracle, ("append", 3), ctx.var(1), ctx.true, n=30, seed=3)
    assert not rep.ok
