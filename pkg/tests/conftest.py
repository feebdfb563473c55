import random

import pytest
from hypothesis import strategies as st

from qmaster.algebra import Biword, Element
from qmaster.quantum import EchelonStore


def biwords(r, max_len=3):
    letters = st.integers(1, r)
    return st.integers(0, max_len).flatmap(
        lambda n: st.tuples(st.tuples(*[letters] * n), st.tuples(*[letters] * n))
    ).map(lambda tb: Biword(*tb))


def elements(r, max_len=3, max_terms=5):
    coef = st.integers(-5, 5)
    return st.lists(st.tuples(biwords(r, max_len), coef), max_size=max_terms).map(
        lambda ts: Element(r, ts))


def random_element(rng: random.Random, r, max_len=3, nterms=5):
    terms = []
    for _ in range(nterms):
        n = rng.randint(0, max_len)
        terms.append((Biword(tuple(rng.randint(1, r) for _ in range(n)),
                             tuple(rng.randint(1, r) for _ in range(n))),
                      rng.randint(-4, 4)))
    return Element(r, terms)


@pytest.fixture
def store(tmp_path):
    return EchelonStore(tmp_path / "cache")


@pytest.fixture
def rng():
    return random.Random(42)


# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
