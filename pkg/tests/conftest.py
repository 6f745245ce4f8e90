import functools

import pytest

from modewise import corpus
from modewise.pos.domain import PosContext
from modewise.pos.syntax import parse_formula, positional_names

RESOLVE, NAME = positional_names()


@pytest.fixture
def ctx():
    return PosContext()


def formula(text, ctx):
    return parse_formula(text, RESOLVE, ctx)


@functools.lru_cache(maxsize=None)
def corpus_result(name):
    return corpus.load(name)


@pytest.fixture
def analysed():
    return corpus_result
