import json

import pytest
from hypothesis import given, strategies as st

from brandtlpa.graph import (Graph, GraphError, GraphSyntaxError, builtin_graph, classify,
                             enumerate_paths, graph_of_X, line_graph, load_graph, parse_graph,
                             random_acyclic, rose)

A2_TEXT = """
# two vertices
graph A2 {
  vertices v1 v2;
  edges a1: v1 -> v2;
}
"""


def test_parse_dsl():
    g = parse_graph(A2_TEXT)
    assert g.vertices == ("v1", "v2")
    assert g.edges[0] == ("a1", "v1", "v2")
    assert g.name == "A2"
    assert parse_graph(g.to_dsl()) == g


def test_multiple_statements_and_empty_edges():
    g = parse_graph("graph G { vertices a; vertices b; edges; edges e: a -> b; f: b -> a; }")
    assert g.vertices == ("a", "b") and len(g.edges) == 2


@pytest.mark.parametrize("text,msg,line,col", [
    ("graph G {\n vertices v v;\n}", "duplicate identifier", 2, 13),
    ("graph G {\n vertices v;\n edges a: v -> w;\n}", "dangling endpoint 'w'", 3, 16),
    ("graph G {\n vertices v;\n edges a v -> v;\n}", "expected ':'", 3, 10),
    ("graph G { vertices v; edges v: v -> v; }", "duplicate identifier 'v'", 1, 29),
    ("graph G { vertices v$; }", "unexpected character", 1, 21),
])
def test_syntax_errors_carry_position(text, msg, line, col):
    with pytest.raises(GraphSyntaxError) as ei:
        parse_graph(text)
    assert msg in str(ei.value)
    assert (ei.value.line, ei.value.col) == (line, col)


def test_constructor_validation():
    with pytest.raises(GraphError):
        Graph(("v", "v"), ())
    with pytest.raises(GraphError):
        Graph(("v",), (("a", "v", "w"),))


def test_json_round_trip(tmp_path):
    g = random_acyclic(5, 4)
    p = tmp_path / "g.json"
    p.write_text(json.dumps(g.to_json()))
    assert load_graph(str(p)) == g
    q = tmp_path / "g.g"
    q.write_text(g.to_dsl())
    assert load_graph(str(q)) == g


def test_builtins():
    assert builtin_graph("A:3") == line_graph(3)
    assert builtin_graph("R1") == rose(1)
    assert builtin_graph("rose:2") == rose(2)
    with pytest.raises(GraphError):
        builtin_graph("nope")


def test_classify():
    sinks, sources, reg = classify(line_graph(3))
    assert sinks == {"v3"} and sources == {"v1"} and reg == {"v1", "v2"}
    sinks, sources, reg = classify(rose(1))
    assert sinks == set() and sources == set() and reg == {"v"}


def test_path_enumeration_counts():
    # A_n has n - k paths of length k; the k-rose has k^l paths of length l
    ps = enumerate_paths(line_graph(4), 5)
    assert len(ps) == 4 + 3 + 2 + 1
    ps = enumerate_paths(rose(2), 3)
    assert len(ps) == 1 + 2 + 4 + 8
    lengths = [len(p) for p in ps]
    assert lengths == sorted(lengths)


def test_declaration_order_not_string_order():
    es = tuple((f"a{i}", "v", "v") for i in (1, 2, 10))
    g = Graph(("v",), es)
    ps = enumerate_paths(g, 1)
    assert [p.edges for p in ps[1:]] == [("a1",), ("a2",), ("a10",)]


def test_graph_of_X():
    g = line_graph(3)
    assert graph_of_X(g, {"v1", "v2"}) is g
    gx = graph_of_X(g, set())
    assert gx.vertices == ("v1", "v2", "v3", "v1'", "v2'")
    assert ("a1'", "v1", "v2'") in gx.edges
    # v3 is a sink, so a2 gets no primed copy
    assert [e.id for e in gx.edges] == ["a1", "a2", "a1'"]
    # primes are sinks, so Reg(E(X)) = Reg(E)
    assert classify(gx)[2] == classify(g)[2]
    with pytest.raises(GraphError):
        graph_of_X(g, {"v3"})


def test_graph_of_X_loop():
    gx = graph_of_X(rose(1), set())
    assert gx.vertices == ("v", "v'")
    assert set(gx.edges) == {("a", "v", "v"), ("a'", "v", "v'")}


@given(st.integers(1, 7), st.integers(0, 10_000))
def test_random_dags_are_acyclic(n, seed):
    g = random_acyclic(n, seed)
    assert g.is_acyclic()
    assert len(enumerate_paths(g, n)) == len(enumerate_paths(g, n + 3))


def test_cycles_detected():
    assert not rose(1).is_acyclic()
    assert not Graph(("a", "b"), (("x", "a", "b"), ("y", "b", "a"))).is_acyclic()
