import pytest

from brandtlpa.algebra import Context
from brandtlpa.coeff import RingSpec
from brandtlpa.graph import Graph, line_graph, random_acyclic, rose
from brandtlpa.weight import coarsest_weight_map, finest_weight_map

Q = RingSpec.Q()
GF2 = RingSpec.GF(2)
GF5 = RingSpec.GF(5)

ACCEPTANCE_LINES = []


def graph_family():
    """A_2..A_5, R_1, the 2-petal rose and three random DAGs on 6 vertices."""
    return ([line_graph(n) for n in (2, 3, 4, 5)] + [rose(1), rose(2)]
            + [random_acyclic(6, s) for s in (1, 2, 3)])


def converge() -> Graph:
    """v1 -> v2 <- v3."""
    return Graph(("v1", "v2", "v3"), (("a", "v1", "v2"), ("b", "v3", "v2")), "V")


def contexts(rings=(Q, GF2, GF5)):
    for g in graph_family():
        for R in rings:
            for w in (finest_weight_map(g), coarsest_weight_map(g)):
                yield Context(g, R, weights=w)


@pytest.fixture
def A2():
    return Context(line_graph(2), Q)


@pytest.fixture
def A3():
    return Context(line_graph(3), Q)


@pytest.fixture
def cohn_A2():
    return Context(line_graph(2), Q, X=())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
