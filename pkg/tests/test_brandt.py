import pytest
from hypothesis import given, strategies as st

from brandtlpa.brandt import (OUT, ZERO, Brandt, PartialGroupoidTable, brandt_window,
                              check_axioms, lri_data, matrix_unit_table, null_groupoid,
                              parse_brandt)

elems = st.builds(Brandt, st.integers(1, 3), st.integers(-5, 5), st.integers(1, 3))


def test_product():
    assert Brandt(1, 2, 2) * Brandt(2, -1, 3) == Brandt(1, 1, 3)
    assert Brandt(1, 2, 2) * Brandt(1, 0, 1) is ZERO
    assert ZERO * Brandt(1, 0, 1) is ZERO


def test_lri_data():
    inv, e, f = lri_data(Brandt(1, 1, 2))
    assert inv == Brandt(2, -1, 1) and e == Brandt(1, 0, 1) and f == Brandt(2, 0, 2)
    with pytest.raises(ValueError):
        lri_data(ZERO)


def test_parse():
    assert parse_brandt("(1,-2,3)") == Brandt(1, -2, 3)
    assert parse_brandt("0") is ZERO


@given(elems, elems, elems)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elems)
def test_lri_identities(s):
    inv, e, f = lri_data(s)
    assert e * s == s == s * f and s * inv == e and inv * s == f


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_window_axioms_and_exclusions(k):
    rep = check_axioms(brandt_window(range(1, k + 1)))
    for name in ("B1", "B2i", "B2ii", "B2iii", "B3", "B4", "cancellative", "LRI",
                 "idempotents_orthogonal"):
        assert rep[name], name
    assert not rep["is_group"]
    # (i,g,j)(j,h,l) leaves [-3,3] for exactly 12 pairs (g, h), for each i, j, l
    assert rep.excluded == 12 * k ** 3


def test_matrix_unit_table():
    rep = check_axioms(matrix_unit_table(2))
    assert all(v for k, v in rep.verdicts.items() if k != "is_group")
    assert not rep["is_group"]


def test_null_groupoid_is_not_brandt():
    rep = check_axioms(null_groupoid(3))
    assert not rep["B3"] and not rep["LRI"]
    assert rep.witnesses["B3"]


def test_group_detected():
    # Z/2 as a "groupoid" with a formal zero: a group, and B4 holds trivially
    carrier = ["z", "e", "g"]

    def op(a, b):
        return "e" if a == b else "g"

    t = PartialGroupoidTable.from_operation(carrier, "z", op)
    rep = check_axioms(t)
    assert rep["is_group"] and rep["LRI"] and rep["B1"]


def test_non_cancellative_witness():
    carrier = [0, "a", "b", "c"]
    table = {(x, y): 0 for x in carrier[1:] for y in carrier[1:]}
    table[("a", "c")] = "c"
    table[("b", "c")] = "c"
    rep = check_axioms(PartialGroupoidTable(carrier, 0, table))
    assert not rep["cancellative"]
    assert len(rep.witnesses["cancellative"]) == 4


def test_out_marks_excluded():
    t = brandt_window([1], range(-1, 2))
    assert t.table[(Brandt(1, 1, 1), Brandt(1, 1, 1))] is OUT
