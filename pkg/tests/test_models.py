import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brandtlpa.algebra import Context
from brandtlpa.brandt import ZERO, Brandt
from brandtlpa.coeff import RingSpec
from brandtlpa.graph import graph_of_X, line_graph, prime, random_acyclic, regular_vertices
from brandtlpa.models import (GradedMatrixRing, S_e, check_label_semigroup, cohn_leavitt_iso,
                              ds_audit, ds_audit_all, extended_weight_map, line_graph_iso, matmul,
                              matrix_unit, matrix_vn_inverse, path_weight_order, zeros)
from brandtlpa.regularity import random_element
from brandtlpa.weight import coarsest_weight_map, finest_weight_map

from conftest import GF2, GF5, Q, converge


def F(rows):
    return [[Fraction(v) for v in r] for r in rows]


@pytest.mark.parametrize("A", [F([[1, 1], [0, 0]]), F([[0, 1], [0, 0]]), F([[0, 0], [0, 0]]),
                               F([[1, 2, 3], [2, 4, 6], [0, 0, 1]])])
def test_matrix_vn_inverse_examples(A):
    B = matrix_vn_inverse(A, Q)
    assert matmul(matmul(A, B, Q), A, Q) == A


def test_matrix_unit_inverse_is_transpose():
    assert matrix_vn_inverse(matrix_unit(3, 1, 2, Q), Q) == matrix_unit(3, 2, 1, Q)
    assert matrix_vn_inverse(zeros(2, 2, Q), Q) == zeros(2, 2, Q)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([Q, GF2, GF5, RingSpec.GF(7)]), st.integers(1, 4), st.integers(1, 4),
       st.integers(0, 2**32 - 1))
def test_matrix_vn_inverse_property(ring, m, n, seed):
    rng = random.Random(seed)
    A = [[ring.coerce(rng.randint(-2, 2)) if rng.random() < 0.5 else ring.zero
          for _ in range(n)] for _ in range(m)]
    B = matrix_vn_inverse(A, ring)
    assert len(B) == n and len(B[0]) == m
    assert matmul(matmul(A, B, ring), A, ring) == A


def test_matrix_vn_inverse_needs_field():
    with pytest.raises(ValueError):
        matrix_vn_inverse([[2]], RingSpec.Z())


@pytest.mark.parametrize("labels", ["brandt", "pairs"])
def test_matrix_grading(labels):
    M = GradedMatrixRing(3, Q, labels)
    assert M.check_grading().verdict
    assert M.check_nearly_eps_strong(50).verdict
    assert M.degree(M.unit(1, 3)) == M.label(1, 3)
    assert M.degree(zeros(3, 3, Q)) is ZERO
    assert M.degree(matmul(M.unit(1, 1), zeros(3, 3, Q), Q)) is ZERO


def test_pair_labels_form_brandt_table():
    ax = check_label_semigroup(GradedMatrixRing(2, Q, "pairs"))
    assert all(v for k, v in ax.verdicts.items() if k != "is_group")
    assert GradedMatrixRing(2, Q).label(1, 2) == Brandt(1, 1, 2)
    with pytest.raises(ValueError):
        GradedMatrixRing(2, Q).label_table()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_line_graph_iso(n):
    iso = line_graph_iso(n, Q)
    rep = iso.verify(samples=30, seed=n)
    assert rep.verdict, rep.witnesses
    assert rep.stats["basis"] == n * n


def test_line_graph_iso_images():
    iso = line_graph_iso(3, GF5)
    ctx = iso.ctx
    assert iso.forward(ctx.parse("a1 a2")) == matrix_unit(3, 1, 3, GF5)
    assert iso.forward(ctx.parse("a2~ a1~")) == matrix_unit(3, 3, 1, GF5)
    assert iso.backward(matrix_unit(3, 2, 1, GF5)) == ctx.parse("a1~")
    assert iso.verify(samples=20).verdict
    with pytest.raises(ValueError):
        line_graph_iso(0, Q)


def test_ds_examples():
    A3 = Context(line_graph(3), Q)
    a = ds_audit(A3, Brandt(1, 0, 1), Brandt(1, 2, 3))
    assert a["predicted"] == a["enumerated"] == 1
    A2 = Context(line_graph(2), Q)
    a = ds_audit(A2, Brandt(1, 0, 1), Brandt(1, 1, 2))
    assert a["predicted"] == a["enumerated"] == 1


def test_ds_at_idempotent_counts_vertices():
    # D_e for e = (i,0,i) under the coarsest map: one 1x1 block per vertex
    for g in (line_graph(3), converge()):
        ctx = Context(g, Q, weights=coarsest_weight_map(g))
        a = ds_audit(ctx, Brandt(1, 0, 1), Brandt(1, 0, 1))
        assert a["predicted"] == a["enumerated"] == len(g.vertices)


def test_path_weight_order():
    ctx = Context(line_graph(3), Q)
    assert path_weight_order(ctx, Brandt(1, 1, 2), Brandt(1, 2, 3))
    assert path_weight_order(ctx, Brandt(1, 0, 1), Brandt(1, 2, 3))
    assert not path_weight_order(ctx, Brandt(2, 1, 3), Brandt(1, 2, 3))
    assert S_e(ctx, Brandt(1, 0, 1), 2) == [Brandt(1, 0, 1), Brandt(1, 1, 2), Brandt(1, 2, 3)]


@pytest.mark.parametrize("seed", range(6))
def test_ds_audit_random_dags(seed):
    g = random_acyclic(5, seed, 0.4)
    for w in (finest_weight_map(g), coarsest_weight_map(g)):
        rep = ds_audit_all(Context(g, GF5, weights=w), 4)
        assert rep.verdict, rep.witnesses


def test_ds_audit_rejects_cohn():
    with pytest.raises(ValueError):
        ds_audit(Context(line_graph(2), Q, X=()), Brandt(1, 0, 1), Brandt(1, 0, 1))


def test_cohn_map_images():
    g = line_graph(3)
    phi = cohn_leavitt_iso(g, (), Q)
    T = phi.target
    assert phi.Y == ["v1", "v2"]
    assert phi.vertex_image["v1"] == T.parse("v1 + v1'")
    assert phi.edge_image["a1"] == T.parse("a1 + a1'")
    assert phi.edge_image["a2"] == T.parse("a2")
    assert phi.verify(samples=30).verdict


def test_cohn_map_is_identity_when_X_is_reg():
    g = line_graph(3)
    phi = cohn_leavitt_iso(g, None, Q)
    assert phi.Y == [] and phi.target.graph.vertices == g.vertices
    x = phi.source.parse("a1 a2 + 3 a2~")
    assert str(phi(x)) == str(x)


def test_cohn_dimensions_match():
    # C^X(E) and L(E(X)) have the same dimension on acyclic graphs
    for g in (line_graph(2), line_graph(3), converge()):
        for X in ((), None):
            phi = cohn_leavitt_iso(g, X, Q)
            assert len(phi.source.basis()) == len(phi.target.basis())
    assert len(Context(line_graph(2), Q, X=()).basis()) == 5


def test_extended_weights():
    g = line_graph(2)
    gx = graph_of_X(g, frozenset())
    w = extended_weight_map(finest_weight_map(g), gx)
    assert w.vertex(prime("v1")) == w.vertex("v1")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([Q, GF2]))
def test_cohn_map_multiplicative(seed, ring):
    rng = random.Random(seed)
    g = random_acyclic(4, seed, 0.5)
    reg = list(regular_vertices(g))
    X = frozenset(v for v in reg if rng.random() < 0.5)
    phi = cohn_leavitt_iso(g, X, ring)
    x, y = random_element(phi.source, rng), random_element(phi.source, rng)
    assert phi(x * y) == phi(x) * phi(y)
    assert phi(x.star()) == phi(x).star()
