"""Exact coefficient rings: Q, GF(p), Z/n and Z.

A :class:`RingSpec` does the arithmetic on raw values (``Fraction`` for Q,
``int`` otherwise).  The algebra layer stores raw values for speed;
:class:`Coefficient` is the user-facing value type that carries its ring.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

RATIONALS = "rationals"
PRIME_FIELD = "prime-field"
INTEGERS_MOD = "integers-mod"
INTEGERS = "integers"


class MixedRingError(TypeError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    kind: str
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind == PRIME_FIELD:
            if self.modulus is None or not _is_prime(self.modulus):
                raise ValueError(f"prime-field needs a prime modulus, got {self.modulus}")
        elif self.kind == INTEGERS_MOD:
            if self.modulus is None or self.modulus < 2:
                raise ValueError(f"integers-mod needs n >= 2, got {self.modulus}")
        elif self.kind in (RATIONALS, INTEGERS):
            if self.modulus is not None:
                raise ValueError(f"{self.kind} takes no modulus")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # constructors

    @classmethod
    def Q(cls) -> "RingSpec":
        return cls(RATIONALS)

    @classmethod
    def GF(cls, p: int) -> "RingSpec":
        return cls(PRIME_FIELD, p)

    @classmethod
    def Zn(cls, n: int) -> "RingSpec":
        return cls(INTEGERS_MOD, n)

    @classmethod
    def Z(cls) -> "RingSpec":
        return cls(INTEGERS)

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse ``Q``, ``Fp:5``/``GF5``/``F5``, ``Zn:4``/``Z4``, ``Z``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls.Q()
        if t in ("Z", "ZZ"):
            return cls.Z()
        m = re.fullmatch(r"(?:Fp:|Fp|GF\(?|F)(\d+)\)?", t)
        if m:
            return cls.GF(int(m.group(1)))
        m = re.fullmatch(r"(?:Zn:|Z/|Z)(\d+)", t)
        if m:
            return cls.Zn(int(m.group(1)))
        raise ValueError(f"unrecognised ring {text!r}")

    # properties

    @property
    def is_field(self) -> bool:
        return self.kind in (RATIONALS, PRIME_FIELD)

    @property
    def is_finite(self) -> bool:
        return self.kind in (PRIME_FIELD, INTEGERS_MOD)

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_finite else 0

    def __str__(self) -> str:
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == PRIME_FIELD:
            return f"GF({self.modulus})"
        return f"Z/{self.modulus}"

    @property
    def label(self) -> str:
        """CLI spelling, round-trips through :meth:`parse`."""
        if self.kind == PRIME_FIELD:
            return f"Fp:{self.modulus}"
        if self.kind == INTEGERS_MOD:
            return f"Zn:{self.modulus}"
        return str(self)

    # raw arithmetic

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONALS else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONALS else 1

    def coerce(self, v):
        if self.kind == RATIONALS:
            return Fraction(v)
        if isinstance(v, Fraction):
            if v.denominator != 1:
                if not self.is_finite:
                    raise ValueError(f"{v} is not an integer")
                return (v.numerator * pow(v.denominator, -1, self.modulus)) % self.modulus
            v = v.numerator
        if not isinstance(v, int):
            raise TypeError(f"cannot coerce {v!r} into {self}")
        return v % self.modulus if self.is_finite else v

    def add(self, a, b):
        r = a + b
        return r % self.modulus if self.is_finite else r

    def sub(self, a, b):
        r = a - b
        return r % self.modulus if self.is_finite else r

    def mul(self, a, b):
        r = a * b
        return r % self.modulus if self.is_finite else r

    def neg(self, a):
        return (-a) % self.modulus if self.is_finite else -a

    def inv(self, a):
        """Multiplicative inverse; ZeroDivisionError if ``a`` is not a unit."""
        if self.kind == RATIONALS:
            if a == 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 / Fraction(a)
        if self.kind == INTEGERS:
            if a in (1, -1):
                return a
            raise ZeroDivisionError(f"{a} is not a unit in Z")
        if math.gcd(a, self.modulus) != 1:
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        return pow(a, -1, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_unit(self, a) -> bool:
        try:
            self.inv(a)
        except ZeroDivisionError:
            return False
        return True

    def elements(self) -> Iterator:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return iter(range(self.modulus))

    def random_nonzero(self, rng):
        if self.kind == RATIONALS:
            num = rng.choice([-3, -2, -1, 1, 2, 3])
            return Fraction(num, rng.choice([1, 1, 2, 3]))
        if self.kind == INTEGERS:
            return rng.choice([-3, -2, -1, 1, 2, 3])
        return rng.randrange(1, self.modulus)

    # text

    def format(self, a) -> str:
        if self.is_finite:
            return f"{a} mod {self.modulus}"
        return str(a)

    def format_short(self, a) -> str:
        return str(a)

    def parse_value(self, text: str):
        t = text.strip()
        m = re.fullmatch(r"(-?\d+)\s*mod\s*(\d+)", t)
        if m:
            if not self.is_finite or int(m.group(2)) != self.modulus:
                raise MixedRingError(f"{text!r} does not belong to {self}")
            return self.coerce(int(m.group(1)))
        if not re.fullmatch(r"-?\d+(/\d+)?", t):
            raise ValueError(f"bad coefficient {text!r}")
        return self.coerce(Fraction(t))


@dataclass(frozen=True)
class Coefficient:
    value: object
    ring: RingSpec

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.coerce(self.value))

    @classmethod
    def parse(cls, text: str, ring: Optional[RingSpec] = None) -> "Coefficient":
        """Parse ``"3/4"``, ``"2 mod 5"`` or ``"-7"``.

        Without an explicit ring, ``a mod n`` lands in Z/n (GF(n) when n is
        prime), fractions in Q and plain integers in Z.
        """
        t = text.strip()
        if ring is None:
            m = re.fullmatch(r"(-?\d+)\s*mod\s*(\d+)", t)
            if m:
                n = int(m.group(2))
                ring = RingSpec.GF(n) if _is_prime(n) else RingSpec.Zn(n)
            elif "/" in t:
                ring = RingSpec.Q()
            else:
                ring = RingSpec.Z()
        return cls(ring.parse_value(t), ring)

    def _check(self, other) -> "Coefficient":
        if not isinstance(other, Coefficient):
            return Coefficient(other, self.ring)
        if other.ring != self.ring:
            raise MixedRingError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        o = self._check(other)
        return Coefficient(self.ring.add(self.value, o.value), self.ring)

    def __sub__(self, other):
        o = self._check(other)
        return Coefficient(self.ring.sub(self.value, o.value), self.ring)

    def __mul__(self, other):
        o = self._check(other)
        return Coefficient(self.ring.mul(self.value, o.value), self.ring)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Coefficient(self.ring.neg(self.value), self.ring)

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ring.format(self.value)


def vn_inverse(x: Coefficient) -> Optional[Coefficient]:
    """Some ``y`` with ``x*y*x == x``, or None if ``x`` is not regular."""
    ring = x.ring
    if x.value == 0:
        return Coefficient(ring.zero, ring)
    if ring.is_field:
        return Coefficient(ring.inv(x.value), ring)
    if ring.kind == INTEGERS:
        if x.value in (1, -1):
            return Coefficient(x.value, ring)
        return None
    for y in ring.elements():
        if ring.mul(ring.mul(x.value, y), x.value) == x.value:
            return Coefficient(y, ring)
    return None


def is_vn_regular_ring(ring: RingSpec) -> bool:
    """Decided exhaustively for Z/n; fields are regular and Z is not."""
    if ring.is_field:
        return True
    if ring.kind == INTEGERS:
        return False
    return all(vn_inverse(Coefficient(a, ring)) is not None for a in ring.elements())
