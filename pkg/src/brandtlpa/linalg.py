"""Exact linear algebra over the coefficient rings.

Sparse rows are ``dict[int, value]`` keyed by column index.  Over Q the
elimination is fraction-free (integer rows, content removed after every
step); over GF(p) it is plain modular elimination.  Z and Z/n systems are
solved by unimodular column reduction, so "no solution" is a proof rather
than a failed search.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .coeff import RATIONALS, RingSpec

Row = dict


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _integer_row(row: Row) -> Row:
    den = 1
    for v in row.values():
        den = _lcm(den, Fraction(v).denominator)
    out = {}
    for k, v in row.items():
        v = Fraction(v) * den
        if v:
            out[k] = v.numerator
    return _primitive(out)


def _primitive(row: Row) -> Row:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _echelon_ff(rows: Sequence[Row]) -> dict:
    """Fraction-free echelon basis of integer rows, keyed by pivot column."""
    basis: dict = {}
    for r in rows:
        r = _integer_row(r)
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                basis[c] = r
                break
            a, p = r[c], b[c]
            g = math.gcd(a, p)
            ma, mb = p // g, a // g
            new = {k: v * ma for k, v in r.items()}
            for k, v in b.items():
                nv = new.get(k, 0) - v * mb
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            r = _primitive(new)
    return basis


def _echelon_mod(rows: Sequence[Row], ring: RingSpec) -> dict:
    basis: dict = {}
    p = ring.modulus
    for r in rows:
        r = {k: v % p for k, v in r.items() if v % p}
        while r:
            c = min(r)
            b = basis.get(c)
            if b is None:
                inv = pow(r[c], -1, p)
                basis[c] = {k: v * inv % p for k, v in r.items()}
                break
            a = r[c]
            for k, v in b.items():
                nv = (r.get(k, 0) - a * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return basis


def _echelon(rows: Sequence[Row], ring: RingSpec) -> dict:
    if not ring.is_field:
        raise ValueError(f"elimination needs a field, got {ring}")
    if ring.kind == RATIONALS:
        return _echelon_ff(rows)
    return _echelon_mod(rows, ring)


def rank(rows: Sequence[Row], ring: RingSpec) -> int:
    return len(_echelon(rows, ring))


def solve(rows: Sequence[Row], rhs: Sequence, ring: RingSpec) -> Optional[dict]:
    """Solve ``sum_c rows[i][c] * x_c == rhs[i]``; free variables set to 0.

    Returns ``{column: value}`` (zero entries omitted) or None when the
    system is inconsistent.  Z and Z/n are delegated to :func:`solve_integer`.
    """
    if not ring.is_field:
        return _solve_over_integers(rows, rhs, ring)
    ncols = 1 + max((max(r) for r in rows if r), default=-1)
    ncols = max(ncols, 0)
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = b
        aug.append(row)
    basis = _echelon(aug, ring)
    if ncols in basis:
        return None
    sol: dict = {}
    for p in sorted(basis, reverse=True):
        row = basis[p]
        if ring.kind == RATIONALS:
            acc = Fraction(row.get(ncols, 0))
            for c, v in row.items():
                if c != p and c != ncols and c in sol:
                    acc -= v * sol[c]
            val = acc / row[p]
        else:
            acc = row.get(ncols, 0)
            for c, v in row.items():
                if c != p and c != ncols and c in sol:
                    acc = ring.sub(acc, ring.mul(v, sol[c]))
            val = ring.div(acc, row[p])
        if val:
            sol[p] = ring.coerce(val)
    return sol


def _solve_over_integers(rows, rhs, ring: RingSpec) -> Optional[dict]:
    cols = sorted({c for r in rows for c in r})
    index = {c: i for i, c in enumerate(cols)}
    A = [[0] * len(cols) for _ in rows]
    for i, r in enumerate(rows):
        for c, v in r.items():
            A[i][index[c]] = int(v)
    x = solve_integer(A, [int(b) for b in rhs], ring.modulus)
    if x is None:
        return None
    return {cols[i]: v for i, v in enumerate(x) if v}


def solve_integer(A: list, b: list, modulus: Optional[int] = None) -> Optional[list]:
    """Solve ``A x = b`` over Z, or modulo ``modulus`` when given.

    Column-reduces ``[A | modulus*I]`` with unimodular integer operations to
    a lower staircase ``L = M U`` and forward-substitutes; any failed
    divisibility or nonzero residual means the system has no solution.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    if modulus:
        M = [list(A[i]) + [modulus if j == i else 0 for j in range(m)] for i in range(m)]
    else:
        M = [list(row) for row in A]
    ncol = len(M[0]) if m else k
    U = [[1 if i == j else 0 for j in range(ncol)] for i in range(ncol)]

    def colop(j1, j2, a, bb, c, d):
        # (col_j1, col_j2) <- (a*col_j1 + bb*col_j2, c*col_j1 + d*col_j2)
        for mat in (M, U):
            for row in mat:
                x1, x2 = row[j1], row[j2]
                row[j1] = a * x1 + bb * x2
                row[j2] = c * x1 + d * x2

    free = list(range(ncol))
    pivots = []  # (row, col)
    for i in range(m):
        nz = [j for j in free if M[i][j]]
        if not nz:
            continue
        j0 = nz[0]
        for j in nz[1:]:
            x, y = M[i][j0], M[i][j]
            g, s, t = _xgcd(x, y)
            # [s, -y/g; t, x/g] has determinant 1
            colop(j0, j, s, t, -y // g, x // g)
        if M[i][j0] < 0:
            for mat in (M, U):
                for row in mat:
                    row[j0] = -row[j0]
        pivots.append((i, j0))
        free.remove(j0)

    t = [0] * ncol
    for i in range(m):
        acc = b[i] - sum(M[i][j] * t[j] for _, j in pivots if t[j])
        piv = next((j for (pi, j) in pivots if pi == i), None)
        if piv is None:
            if acc != 0:
                return None
            continue
        q, r = divmod(acc, M[i][piv])
        if r:
            return None
        t[piv] = q
    x = [sum(U[r][j] * t[j] for j in range(ncol)) for r in range(k)]
    if modulus:
        x = [v % modulus for v in x]
    return x


def _xgcd(a: int, b: int):
    """(g, s, t) with s*a + t*b == g == gcd(a, b) > 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def rref(M: list, ring: RingSpec):
    """Dense reduced row echelon form over a field: ``(R, pivot_columns)``."""
    if not ring.is_field:
        raise ValueError(f"rref needs a field, got {ring}")
    R = [[ring.coerce(v) for v in row] for row in M]
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(R)) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = ring.inv(R[r][c])
        R[r] = [ring.mul(v, inv) for v in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [ring.sub(a, ring.mul(f, b)) for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R, pivots


def nullspace(M: list, ring: RingSpec) -> list:
    """Basis of ``{x : M x = 0}`` over a field."""
    ncols = len(M[0]) if M else 0
    R, pivots = rref(M, ring)
    freecols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in freecols:
        v = [ring.zero] * ncols
        v[f] = ring.one
        for i, p in enumerate(pivots):
            v[p] = ring.neg(R[i][f])
        basis.append(v)
    return basis
