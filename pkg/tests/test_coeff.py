from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brandtlpa.coeff import (Coefficient, MixedRingError, RingSpec, is_vn_regular_ring,
                             vn_inverse)


@pytest.mark.parametrize("text,ring", [
    ("Q", RingSpec.Q()), ("Z", RingSpec.Z()), ("Fp:5", RingSpec.GF(5)), ("GF5", RingSpec.GF(5)),
    ("F2", RingSpec.GF(2)), ("Zn:4", RingSpec.Zn(4)), ("Z4", RingSpec.Zn(4)), ("Z/6", RingSpec.Zn(6)),
])
def test_parse_ring(text, ring):
    assert RingSpec.parse(text) == ring
    assert RingSpec.parse(ring.label) == ring


@pytest.mark.parametrize("bad", ["Fp:4", "GF1", "Zn:1", "R", ""])
def test_bad_rings(bad):
    with pytest.raises(ValueError):
        RingSpec.parse(bad)


def test_coefficient_parsing():
    assert Coefficient.parse("3/4").value == Fraction(3, 4)
    c = Coefficient.parse("2 mod 5")
    assert c.ring == RingSpec.GF(5) and str(c) == "2 mod 5"
    assert Coefficient.parse("2 mod 4").ring == RingSpec.Zn(4)
    assert Coefficient.parse("-7").ring == RingSpec.Z()
    assert str(Coefficient(7, RingSpec.GF(5))) == "2 mod 5"


def test_mixed_rings_rejected():
    with pytest.raises(MixedRingError):
        Coefficient(1, RingSpec.GF(5)) + Coefficient(1, RingSpec.GF(7))
    with pytest.raises(MixedRingError):
        RingSpec.GF(5).parse_value("1 mod 7")


def test_vn_inverse_examples():
    assert vn_inverse(Coefficient(2, RingSpec.Zn(4))) is None
    y = vn_inverse(Coefficient(2, RingSpec.Zn(6)))
    assert y is not None and (2 * y.value * 2) % 6 == 2
    assert vn_inverse(Coefficient(3, RingSpec.Z())) is None
    assert vn_inverse(Coefficient(-1, RingSpec.Z())).value == -1
    assert vn_inverse(Coefficient(Fraction(2, 3), RingSpec.Q())).value == Fraction(3, 2)


def _squarefree(n):
    return all(n % (p * p) for p in range(2, n + 1))


@pytest.mark.parametrize("n", range(2, 31))
def test_zn_regular_iff_squarefree(n):
    # Z/n is von Neumann regular exactly when n is squarefree
    assert is_vn_regular_ring(RingSpec.Zn(n)) == _squarefree(n)


def test_inverse_raises_on_non_units():
    with pytest.raises(ZeroDivisionError):
        RingSpec.Zn(6).inv(2)
    with pytest.raises(ZeroDivisionError):
        RingSpec.Q().inv(0)


rings = st.sampled_from([RingSpec.GF(2), RingSpec.GF(5), RingSpec.GF(7), RingSpec.Zn(4),
                         RingSpec.Zn(12), RingSpec.Z(), RingSpec.Q()])


@given(rings, st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_ring_axioms(R, a, b, c):
    a, b, c = R.coerce(a), R.coerce(b), R.coerce(c)
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(a, R.neg(a)) == R.zero


@given(st.sampled_from([2, 3, 4, 6, 8, 9, 10, 12]), st.integers(0, 100))
def test_vn_inverse_certified(n, a):
    R = RingSpec.Zn(n)
    y = vn_inverse(Coefficient(a, R))
    brute = [t for t in range(n) if (a * t * a - a) % n == 0]
    assert (y is None) == (not brute)
    if y is not None:
        assert (a * y.value * a - a) % n == 0
