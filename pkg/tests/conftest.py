from functools import lru_cache

import pytest
from hypothesis import strategies as st

from diricci.curvature import Geometry
from diricci.generators import from_name
from diricci.graph import build_graph


@lru_cache(maxsize=None)
def geometry(name: str) -> Geometry:
    """Shared, memoised geometry for a generator name such as ``kn:5``."""
    return Geometry(from_name(name))


@pytest.fixture
def tri():
    return geometry("triforce")


@pytest.fixture
def k3():
    return geometry("kn:3")


@st.composite
def weighted_graphs(draw, min_n=3, max_n=6, max_weight=3):
    """Strongly connected graphs: a shuffled Hamiltonian cycle plus random extra edges, random integer weights."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    edges = {(order[k], order[(k + 1) % n]) for k in range(n)}
    extra = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=n * n))
    edges |= {(a, b) for a, b in extra if a != b}
    weights = draw(st.lists(st.integers(1, max_weight), min_size=len(edges), max_size=len(edges)))
    return build_graph((f"v{a}", f"v{b}", w) for (a, b), w in zip(sorted(edges), weights))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
