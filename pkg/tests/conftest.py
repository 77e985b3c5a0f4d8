import random

import pytest
from hypothesis import strategies as st

from nilrank.core import GroupElement, num_pairs


def elements(n, lo=-5, hi=5):
    return st.builds(
        GroupElement,
        st.just(n),
        st.tuples(*[st.integers(lo, hi)] * n),
        st.tuples(*[st.integers(lo, hi)] * num_pairs(n)),
    )


def element_triples(max_n=5):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n)))


nonzero = st.integers(-50, 50).filter(bool)


@pytest.fixture
def rng():
    return random.Random(20240607)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
