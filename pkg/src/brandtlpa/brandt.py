"""Brandt semigroup M(Z, I) with a zero, and a checker for finite partial groupoids."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Hashable


class _Zero:
    __slots__ = ()

    def __repr__(self):
        return "ZERO"

    def __str__(self):
        return "0"

    def __mul__(self, other):
        return ZERO

    def __rmul__(self, other):
        return ZERO

    def __bool__(self):
        return False

    def __reduce__(self):
        return "ZERO"

    def is_idempotent(self) -> bool:
        return True


ZERO = _Zero()


@dataclass(frozen=True, order=True)
class Brandt:
    """A nonzero element (i, g, j) of M(Z, I)."""

    i: Hashable
    g: int
    j: Hashable

    def __mul__(self, other):
        return brandt_mul(self, other)

    def __str__(self):
        return f"({self.i},{self.g},{self.j})"

    def to_json(self) -> list:
        return [self.i, self.g, self.j]

    def is_idempotent(self) -> bool:
        return self.g == 0 and self.i == self.j

    @property
    def inverse(self) -> "Brandt":
        return Brandt(self.j, -self.g, self.i)

    @property
    def left(self) -> "Brandt":
        """The idempotent e with e s = s."""
        return Brandt(self.i, 0, self.i)

    @property
    def right(self) -> "Brandt":
        """The idempotent f with s f = s."""
        return Brandt(self.j, 0, self.j)


def brandt_mul(a, b):
    if a is ZERO or b is ZERO:
        return ZERO
    if a.j != b.i:
        return ZERO
    return Brandt(a.i, a.g + b.g, b.j)


def lri_data(s):
    """``(inverse, e, f)`` for a nonzero s: es = sf = s, ss^-1 = e, s^-1 s = f."""
    if s is ZERO:
        raise ValueError("0 has no (LRI) data")
    return s.inverse, s.left, s.right


def parse_brandt(text: str):
    t = text.strip()
    if t == "0":
        return ZERO
    m = re.fullmatch(r"\(\s*(-?\w+)\s*,\s*(-?\d+)\s*,\s*(-?\w+)\s*\)", t)
    if not m:
        raise ValueError(f"bad Brandt element {text!r}")

    def idx(x):
        return int(x) if re.fullmatch(r"-?\d+", x) else x

    return Brandt(idx(m.group(1)), int(m.group(2)), idx(m.group(3)))


def from_json(data):
    if data == 0 or data is None:
        return ZERO
    i, g, j = data
    return Brandt(i, int(g), j)


# finite tables

OUT = "out-of-carrier"


@dataclass
class PartialGroupoidTable:
    """Finite carrier with a distinguished zero and a total product table.

    Undefined products are stored as ``zero``.  A product recorded as
    :data:`OUT` left the carrier (a truncation artefact); triples touching it
    are excluded from every verdict and counted separately.
    """

    carrier: list
    zero: Hashable
    table: dict
    label: str = ""

    def mul(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        return self.table[(a, b)]

    @property
    def nonzero(self) -> list:
        return [x for x in self.carrier if x != self.zero]

    @classmethod
    def from_operation(cls, carrier, zero, op, label=""):
        members = set(carrier)
        table = {}
        for a in carrier:
            for b in carrier:
                if a == zero or b == zero:
                    continue
                c = op(a, b)
                table[(a, b)] = c if c in members else OUT
        # the zero of S absorbs; make sure it is typed consistently
        return cls(list(carrier), zero, table, label)


def brandt_window(I, g_range=range(-3, 4)) -> PartialGroupoidTable:
    """M(Z ∩ window, I) ∪ {0}; products whose group part leaves the window are OUT."""
    carrier = [ZERO] + [Brandt(i, g, j) for i in I for g in g_range for j in I]
    return PartialGroupoidTable.from_operation(
        carrier, ZERO, brandt_mul, f"M(Z∩[{min(g_range)},{max(g_range)}], {list(I)})")


def matrix_unit_table(n: int) -> PartialGroupoidTable:
    """S^x = {(i, j)} with (i, j)(k, l) = δ_jk (i, l), plus a zero."""
    carrier = [0] + [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def op(a, b):
        return (a[0], b[1]) if a[1] == b[0] else 0

    return PartialGroupoidTable.from_operation(carrier, 0, op, f"matrix units {n}x{n}")


def null_groupoid(k: int) -> PartialGroupoidTable:
    carrier = [0] + list(range(1, k))
    return PartialGroupoidTable.from_operation(carrier, 0, lambda a, b: 0, f"null {k}")


@dataclass
class AxiomReport:
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    excluded: int = 0

    def __getitem__(self, key) -> bool:
        return self.verdicts[key]

    def to_json(self) -> dict:
        return {
            "verdicts": self.verdicts,
            "witnesses": {k: [str(x) for x in v] for k, v in self.witnesses.items()},
            "excluded_out_of_carrier": self.excluded,
        }


def check_axioms(t: PartialGroupoidTable) -> AxiomReport:
    """Exhaustive B1-B4, cancellativity, (LRI), idempotent orthogonality.

    A product is *defined* when it is neither zero nor OUT.  Any statement
    whose evaluation needs an OUT product is skipped.
    """
    rep = AxiomReport()
    z = t.zero
    B = t.nonzero
    mul = t.mul
    excluded = set()

    def defined(x):
        return x != z and x is not OUT

    def fail(name, *w):
        if rep.verdicts.get(name, True):
            rep.verdicts[name] = False
            rep.witnesses[name] = list(w)

    for name in ("B1", "B2i", "B2ii", "B2iii", "B3", "B4", "cancellative", "LRI",
                 "idempotents_orthogonal"):
        rep.verdicts[name] = True

    for a in B:
        for b in B:
            if mul(a, b) is OUT:
                excluded.add((a, b))

    # B1 and cancellativity: u determines the missing factor
    left, right = {}, {}
    for a in B:
        for b in B:
            c = mul(a, b)
            if not defined(c):
                continue
            prev = left.setdefault((b, c), a)
            if prev != a:
                fail("B1", prev, a, b, c)
                fail("cancellative", prev, a, b, c)
            prev = right.setdefault((a, c), b)
            if prev != b:
                fail("B1", a, prev, b, c)
                fail("cancellative", a, prev, b, c)

    # B2: associativity in its three partial forms
    for s in B:
        for tt in B:
            st = mul(s, tt)
            for u in B:
                tu = mul(tt, u)
                if st is OUT or tu is OUT:
                    continue
                if defined(st) and defined(tu):
                    l, r = mul(st, u), mul(s, tu)
                    if l is OUT or r is OUT:
                        continue
                    if not (defined(l) and defined(r) and l == r):
                        fail("B2i", s, tt, u)
                if defined(st):
                    l = mul(st, u)
                    if l is OUT:
                        continue
                    if defined(l):
                        r = mul(s, tu) if defined(tu) else z
                        if r is OUT:
                            continue
                        if not (defined(tu) and l == r):
                            fail("B2ii", s, tt, u)
                if defined(tu):
                    r = mul(s, tu)
                    if r is OUT:
                        continue
                    if defined(r):
                        l = mul(st, u) if defined(st) else z
                        if l is OUT:
                            continue
                        if not (defined(st) and l == r):
                            fail("B2iii", s, tt, u)

    idem = [e for e in B if mul(e, e) == e]

    # B3: unique e, f, s' with es = sf = s and s's = f
    for s in B:
        es = [e for e in B if mul(e, s) == s]
        fs = [f for f in B if mul(s, f) == s]
        if len(es) != 1 or len(fs) != 1:
            fail("B3", s)
            continue
        primes = [x for x in B if mul(x, s) == fs[0]]
        if len(primes) != 1:
            fail("B3", s)

    # B4: every pair of idempotents is linked
    for e in idem:
        for f in idem:
            if not any(mul(e, s) == s and mul(s, f) == s for s in B):
                fail("B4", e, f)

    # (LRI)
    for s in B:
        ok = False
        for e in idem:
            if mul(e, s) != s:
                continue
            for f in idem:
                if mul(s, f) != s:
                    continue
                for inv in B:
                    if (mul(f, inv) == inv and mul(inv, e) == inv
                            and mul(s, inv) == e and mul(inv, s) == f):
                        ok = True
                        break
                if ok:
                    break
            if ok:
                break
        if not ok:
            fail("LRI", s)

    for e, f in itertools.permutations(idem, 2):
        if mul(e, f) != z:
            fail("idempotents_orthogonal", e, f)

    # a group would need an identity for every element and closure
    ident = [e for e in B if all(mul(e, s) == s and mul(s, e) == s for s in B)]
    rep.verdicts["is_group"] = bool(ident) and all(defined(mul(a, b)) for a in B for b in B)
    if not rep.verdicts["is_group"]:
        rep.witnesses["is_group"] = ["no global identity"] if not ident else ["not closed"]
    rep.excluded = len(excluded)
    if not B:
        rep.verdicts["LRI"] = True
    return rep
