import hypothesis
import pytest
from hypothesis import strategies as st

from canonical_ramsey.core import EdgeColoring, from_edge_list, num_edges
from canonical_ramsey.search import compute_number, er_query

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@st.composite
def colorings(draw, min_n=2, max_n=7, max_colors=4):
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(1, max_colors))
    raw = draw(st.lists(st.integers(0, k - 1), min_size=num_edges(n), max_size=num_edges(n)))
    return EdgeColoring.from_flat(n, raw)


@st.composite
def colorings_with_subset(draw, min_size=2, **kw):
    chi = draw(colorings(min_n=max(2, min_size), **kw))
    S = draw(st.lists(st.sampled_from(list(chi.vertices)), min_size=min_size, unique=True))
    return chi, tuple(sorted(S))


@pytest.fixture
def claim1_k4():
    """v=1, u=2, w1=3, w2=4 with vu, vw1, vw2 in color 0, uw1, uw2 in 1, w1w2 in 2."""
    return from_edge_list(4, [(1, 2, 0), (1, 3, 0), (1, 4, 0), (2, 3, 1), (2, 4, 1), (3, 4, 2)])


@pytest.fixture(scope="session")
def er334():
    return compute_number(er_query(3, 3, 4), n_cap=9)


@pytest.fixture(scope="session")
def w3(er334):
    return er334.extremal_witness


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
