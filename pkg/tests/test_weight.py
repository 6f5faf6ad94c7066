import json

import pytest
from hypothesis import given, settings, strategies as st

from brandtlpa.brandt import Brandt
from brandtlpa.graph import Graph, Path, line_graph, random_acyclic, rose
from brandtlpa.weight import (WeightError, WeightMap, assignment_violation, build_weight_map,
                              coarsest_weight_map, finest_assignment, finest_weight_map,
                              load_weight_map)


def test_line_graph_finest_is_distinct():
    w = finest_weight_map(line_graph(3))
    assert w.assignment() == {"v1": 1, "v2": 2, "v3": 3}
    assert w.edge("a1") == Brandt(1, 1, 2)
    assert w.ghost("a1") == Brandt(2, -1, 1)
    assert w.path_weight(Path("v1", ("a1", "a2"), "v3")) == Brandt(1, 2, 3)


def test_coarsest():
    w = coarsest_weight_map(line_graph(3))
    assert w.index_set == [1]
    assert w.path_weight(Path("v1", ("a1", "a2"), "v3")) == Brandt(1, 2, 1)


def test_forcing_merges():
    # a: v1 -> v3 and c: v2 -> v3 share a range, so v1 ~ v2
    g = Graph(("v1", "v2", "v3"), (("a", "v1", "v3"), ("c", "v2", "v3")))
    assert finest_assignment(g) == {"v1": 1, "v2": 1, "v3": 2}
    # two edges out of v1 force their ranges together
    g = Graph(("v1", "v2", "v3"), (("a", "v1", "v2"), ("b", "v1", "v3")))
    assert finest_assignment(g) == {"v1": 1, "v2": 2, "v3": 2}


def test_rose_single_index():
    assert finest_weight_map(rose(2)).index_set == [1]


def test_two_cycle_keeps_two_indices():
    g = Graph(("v1", "v2"), (("a", "v1", "v2"), ("b", "v2", "v1")))
    assert finest_assignment(g) == {"v1": 1, "v2": 2}


def test_broken_grading_rejected():
    g = line_graph(2)
    w = finest_weight_map(g)
    ew = dict(w.edge_weights)
    ew["a1"] = Brandt(2, 1, 2)
    with pytest.raises(WeightError, match="w1"):
        WeightMap(g, w.vertex_weights, ew)


def test_w3_violation_reported():
    g = Graph(("v1", "v2", "v3"), (("a", "v1", "v2"), ("b", "v1", "v3")))
    assert assignment_violation(g, {"v1": 1, "v2": 2, "v3": 3}) == ("a", "b")
    with pytest.raises(WeightError):
        build_weight_map(g, {"v1": 1, "v2": 2, "v3": 3})


def test_json_round_trip(tmp_path):
    g = random_acyclic(6, 2)
    w = finest_weight_map(g)
    p = tmp_path / "w.json"
    p.write_text(w.dumps())
    assert load_weight_map(g, str(p)) == w
    q = tmp_path / "a.json"
    q.write_text(json.dumps({v: 1 for v in g.vertices}))
    assert load_weight_map(g, str(q)) == coarsest_weight_map(g)


@given(st.integers(1, 7), st.integers(0, 500))
def test_finest_satisfies_rules(n, seed):
    g = random_acyclic(n, seed)
    a = finest_assignment(g)
    assert assignment_violation(g, a) is None
    w = build_weight_map(g, a)
    assert not w.violations()
    # labels are canonical: 1..k in first-occurrence order
    seen = []
    for v in g.vertices:
        if a[v] not in seen:
            seen.append(a[v])
    assert seen == list(range(1, len(seen) + 1))


def _partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]
        yield [[head]] + part


@settings(max_examples=40)
@given(st.integers(2, 5), st.integers(0, 500))
def test_finest_refines_every_valid_assignment(n, seed):
    # brute force over all set partitions of the vertices
    g = random_acyclic(n, seed)
    a = finest_assignment(g)
    for part in _partitions(list(g.vertices)):
        b = {v: k for k, block in enumerate(part) for v in block}
        if assignment_violation(g, b) is None:
            for u in g.vertices:
                for v in g.vertices:
                    if a[u] == a[v]:
                        assert b[u] == b[v]


def test_path_weight_is_length_graded():
    g = rose(2)
    w = finest_weight_map(g)
    p = Path("v", ("a1", "a2", "a1"), "v")
    assert w.path_weight(p) == Brandt(1, 3, 1)
    assert w.monomial_weight(p, Path("v", ("a2",), "v")) == Brandt(1, 2, 1)
