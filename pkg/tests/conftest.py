import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fuzzy_skorokhod.core import StepFuzzySet, canonicalize
from fuzzy_skorokhod.counterexample import build_instance

import generators


@pytest.fixture(scope="session")
def ce3():
    return build_instance(3)


@pytest.fixture
def rng():
    return random.Random(20181)


dyadic = st.integers(min_value=0, max_value=32).map(lambda k: Fraction(k, 32))


@st.composite
def interval_unions(draw, max_parts=4):
    pairs = draw(st.lists(st.tuples(dyadic, dyadic), min_size=1, max_size=max_parts))
    return canonicalize([(min(a, b), max(a, b)) for a, b in pairs])


@st.composite
def fuzzy_sets(draw, max_levels=5):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return generators.random_fuzzy_set(random.Random(seed), max_levels=max_levels)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
