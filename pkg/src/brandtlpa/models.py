"""Reference models: graded matrix rings, L(A_n) ≅ M_n, the D_s dimension
audit and the Cohn-to-Leavitt map C^X(E) -> L(E(X))."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .algebra import AlgebraElem, Context, Monomial
from .brandt import ZERO, Brandt, brandt_mul, check_axioms, matrix_unit_table
from .coeff import RingSpec
from .graph import Graph, Path, graph_of_X, line_graph, prime, regular_vertices
from .linalg import rank, rref
from .regularity import CheckReport, _Timer, _certify, _fail, random_element
from .weight import WeightMap, finest_weight_map


# matrices (row-major lists of raw ring values)

def zeros(m: int, n: int, ring: RingSpec) -> list:
    return [[ring.zero] * n for _ in range(m)]


def matmul(A: list, B: list, ring: RingSpec) -> list:
    n = len(B[0]) if B else 0
    out = zeros(len(A), n, ring)
    for i, row in enumerate(A):
        for k, a in enumerate(row):
            if not a:
                continue
            Bk = B[k]
            for j in range(n):
                if Bk[j]:
                    out[i][j] = ring.add(out[i][j], ring.mul(a, Bk[j]))
    return out


def matadd(A: list, B: list, ring: RingSpec) -> list:
    return [[ring.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matrix_unit(n: int, i: int, j: int, ring: RingSpec) -> list:
    """e_{i,j} with 1-based indices."""
    M = zeros(n, n, ring)
    M[i - 1][j - 1] = ring.one
    return M


def matrix_to_json(A: list, ring: RingSpec) -> list:
    return [[ring.format_short(v) for v in row] for row in A]


def matrix_from_json(data: list, ring: RingSpec) -> list:
    return [[ring.parse_value(str(v)) for v in row] for row in data]


def matrix_vn_inverse(A: list, ring: RingSpec) -> list:
    """B with ABA = A from a rank factorization A = CF.

    F is the nonzero part of rref(A) and C the pivot columns of A.  F has an
    identity block at its pivots, so F⁺ is a coordinate embedding; C⁺ inverts
    an invertible r×r block of rows of C.  Then B = F⁺C⁺.
    """
    if not ring.is_field:
        raise ValueError(f"rank factorization needs a field, got {ring}")
    m = len(A)
    k = len(A[0]) if m else 0
    R, piv = rref(A, ring)
    r = len(piv)
    B = zeros(k, m, ring)
    if r == 0:
        return B
    C = [[A[i][p] for p in piv] for i in range(m)]
    # independent rows of C = pivot columns of C^T
    Ct = [[C[i][t] for i in range(m)] for t in range(r)]
    _, rows = rref(Ct, ring)
    Cs = [C[i] for i in rows]
    aug = [list(Cs[t]) + [ring.one if u == t else ring.zero for u in range(r)] for t in range(r)]
    Ra, _ = rref(aug, ring)
    Cs_inv = [row[r:] for row in Ra]
    # C⁺ is r×m with Cs_inv in the chosen row positions
    Cp = zeros(r, m, ring)
    for t in range(r):
        for u, i in enumerate(rows):
            Cp[t][i] = Cs_inv[t][u]
    Fp = zeros(k, r, ring)
    for t, p in enumerate(piv):
        Fp[p][t] = ring.one
    return matmul(Fp, Cp, ring)


# graded matrix rings

@dataclass
class GradedMatrixRing:
    """M_n(R) with components spanned by e_{i,j}, labelled either by the
    Brandt element (i, j-i, j) or by the pair (i, j)."""

    n: int
    ring: RingSpec
    labels: str = "brandt"

    def label(self, i: int, j: int):
        return Brandt(i, j - i, j) if self.labels == "brandt" else (i, j)

    def label_mul(self, s, t):
        if self.labels == "brandt":
            return brandt_mul(s, t)
        return (s[0], t[1]) if s[1] == t[0] else ZERO

    def components(self) -> dict:
        return {self.label(i, j): (i, j) for i in range(1, self.n + 1)
                for j in range(1, self.n + 1)}

    def unit(self, i: int, j: int) -> list:
        return matrix_unit(self.n, i, j, self.ring)

    def mul(self, A, B):
        return matmul(A, B, self.ring)

    def degree(self, A):
        """Label of a homogeneous nonzero matrix, ZERO for 0, None if mixed."""
        nz = [(i + 1, j + 1) for i, row in enumerate(A) for j, v in enumerate(row) if v]
        if not nz:
            return ZERO
        if len(nz) > 1:
            return None
        return self.label(*nz[0])

    def check_grading(self) -> CheckReport:
        """R_sR_t ⊆ R_st when st is defined, and R_sR_t ≠ 0 forces st defined,
        over every pair of components."""
        rep = CheckReport(f"graded-matrix-ring M_{self.n}", True,
                          params={"n": self.n, "ring": str(self.ring), "labels": self.labels})
        comps = self.components()
        for s, (i, j) in comps.items():
            for t, (k, l) in comps.items():
                st = self.label_mul(s, t)
                P = self.mul(self.unit(i, j), self.unit(k, l))
                d = self.degree(P)
                if st is ZERO:
                    if d is not ZERO:
                        _fail(rep, {"s": str(s), "t": str(t), "reason": "nonzero product, st undefined"})
                elif d is not ZERO and d != st:
                    _fail(rep, {"s": str(s), "t": str(t), "reason": "product outside R_st"})
                elif d is ZERO:
                    _fail(rep, {"s": str(s), "t": str(t), "reason": "R_sR_t = 0 though st defined"})
        if rep.verdict:
            _certify(rep, f"e_ij e_kl = δ_jk e_il for all {len(comps) ** 2} pairs")
        return rep

    def label_table(self):
        """The labelling semigroup as a finite table (for the axiom checker)."""
        if self.labels == "pairs":
            return matrix_unit_table(self.n)
        raise ValueError("Brandt labels form an infinite semigroup; use brandt_window")

    def check_nearly_eps_strong(self, samples: int = 100, seed: int = 0) -> CheckReport:
        """ε(x) = e_ii = e_ij e_ji and ε'(x) = e_jj for x ∈ R_(i,j)."""
        rep = CheckReport(f"nearly-eps-strong M_{self.n}", True, seed=seed,
                          params={"n": self.n, "ring": str(self.ring), "samples": samples})
        rng = random.Random(seed)
        for _ in range(samples):
            i, j = rng.randint(1, self.n), rng.randint(1, self.n)
            X = zeros(self.n, self.n, self.ring)
            X[i - 1][j - 1] = self.ring.random_nonzero(rng)
            eps = self.mul(self.unit(i, j), self.unit(j, i))
            epsp = self.mul(self.unit(j, i), self.unit(i, j))
            ok = (self.mul(eps, X) == X == self.mul(X, epsp)
                  and self.degree(eps) == self.label_mul(self.label(i, j), self.label(j, i)))
            if not ok:
                _fail(rep, {"x": matrix_to_json(X, self.ring)})
            else:
                _certify(rep, f"e_{i}{i} X = X = X e_{j}{j} for X in R_{self.label(i, j)}")
        return rep


def check_label_semigroup(g: GradedMatrixRing):
    return check_axioms(g.label_table())


# L(A_n) ≅ M_n(R)

class LineGraphIso:
    """v_i -> e_ii, a_i -> e_{i,i+1}, a_i* -> e_{i+1,i}."""

    def __init__(self, n: int, ring: RingSpec):
        self.n = n
        self.ring = ring
        self.graph = line_graph(n)
        self.ctx = Context(self.graph, ring, weights=finest_weight_map(self.graph))
        self.matrices = GradedMatrixRing(n, ring)
        self._gen = {}
        for i in range(1, n + 1):
            self._gen[f"v{i}"] = matrix_unit(n, i, i, ring)
        for i in range(1, n):
            self._gen[f"a{i}"] = matrix_unit(n, i, i + 1, ring)
            self._gen[f"a{i}~"] = matrix_unit(n, i + 1, i, ring)

    def _index(self, v: str) -> int:
        return self.graph.vertex_index[v] + 1

    def generator_image(self, name: str) -> list:
        return self._gen[name]

    def monomial_image(self, m: Monomial) -> list:
        gens = list(m.mu.edges) + [a + "~" for a in reversed(m.nu.edges)]
        M = self._gen[m.mu.start]
        for gname in gens:
            M = matmul(M, self._gen[gname], self.ring)
        return M

    def forward(self, x: AlgebraElem) -> list:
        ring = self.ring
        out = zeros(self.n, self.n, ring)
        for m, c in x.terms.items():
            M = self.monomial_image(m)
            out = matadd(out, [[ring.mul(c, v) for v in row] for row in M], ring)
        return out

    def unit_preimage(self, i: int, j: int) -> AlgebraElem:
        """e_ij -> the path from v_i to v_j, or the ghost of the one from v_j to v_i."""
        g = self.graph
        lo, hi = min(i, j), max(i, j)
        p = g.path([f"a{k}" for k in range(lo, hi)], start=f"v{lo}")
        return self.ctx.path_element(p) if i <= j else self.ctx.path_element(p).star()

    def backward(self, A: list) -> AlgebraElem:
        x = self.ctx.zero()
        for i, row in enumerate(A):
            for j, v in enumerate(row):
                if v:
                    x = x + self.unit_preimage(i + 1, j + 1).scale(v)
        return x

    def verify(self, samples: int = 100, seed: int = 0) -> CheckReport:
        """Graded bijection on the full basis, products, relations, and
        transport of matrix inverses back to graded inverses."""
        n, ring = self.n, self.ring
        rep = CheckReport(f"iso-matrix A{n}", True, seed=seed,
                          params={"n": n, "ring": str(ring), "samples": samples})
        rng = random.Random(seed)
        with _Timer() as t:
            basis = self.ctx.basis()
            images = {}
            for m in basis:
                M = self.monomial_image(m)
                d = self.matrices.degree(M)
                if d is None or d is ZERO or d != self.ctx.weight(m):
                    _fail(rep, {"monomial": str(m), "reason": "image not in the matching component"})
                images.setdefault(str(d), []).append(str(m))
                if self.backward(M) != self.ctx.from_monomial(m):
                    _fail(rep, {"monomial": str(m), "reason": "backward(forward(m)) != m"})
            if len(basis) != n * n or len(images) != n * n:
                _fail(rep, {"basis": len(basis), "images": len(images), "reason": "not a bijection"})
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    E = matrix_unit(n, i, j, ring)
                    if self.forward(self.unit_preimage(i, j)) != E:
                        _fail(rep, {"unit": [i, j], "reason": "forward(backward(e_ij)) != e_ij"})
            sampled = 0
            for _ in range(samples):
                x = random_element(self.ctx, rng, max_len=n)
                y = random_element(self.ctx, rng, max_len=n)
                if self.forward(x * y) != matmul(self.forward(x), self.forward(y), ring):
                    _fail(rep, {"x": str(x), "y": str(y), "reason": "phi(xy) != phi(x)phi(y)"})
            if ring.is_field:
                from .regularity import SamplerConfig, random_homogeneous, verify_inverse
                for _ in range(samples):
                    x = random_homogeneous(self.ctx, rng, SamplerConfig(max_len=n))
                    B = matrix_vn_inverse(self.forward(x), ring)
                    y = self.backward(B)
                    if not verify_inverse(x, y):
                        _fail(rep, {"x": str(x), "y": str(y), "reason": "transported inverse fails"})
                    else:
                        sampled += 1
                        _certify(rep, f"x = {x}; y = phi^-1(B) = {y}; x y x == x")
        rep.elapsed_ms = t.ms
        rep.stats = {"basis": len(basis), "dim_matrices": n * n, "transported": sampled}
        return rep


def line_graph_iso(n: int, ring: RingSpec) -> LineGraphIso:
    if n < 1:
        raise ValueError("n must be >= 1")
    return LineGraphIso(n, ring)


# D_s audit

@dataclass
class DsSummand:
    weight: Brandt
    vertex: str
    size: int


def _paths_of_weight(ctx: Context, s) -> list:
    # canonical weights fix the path length
    return [p for p in ctx.paths(s.g) if len(p.edges) == s.g and ctx.weights.path_weight(p) == s]


def path_weight_order(ctx: Context, t, s) -> bool:
    """t <= s: every path of weight s has an initial subpath of weight t."""
    ps = _paths_of_weight(ctx, s)
    wp = ctx.weights.path_weight
    for p in ps:
        if not any(wp(Path(p.start, p.edges[:k], ctx.graph.r(p.edges[k - 1]) if k else p.start)) == t
                   for k in range(len(p.edges) + 1)):
            return False
    return bool(ps) or t == s


def S_e(ctx: Context, e, max_len: int) -> list:
    """Weights of paths of length <= max_len whose source has weight e."""
    out = []
    for p in ctx.paths(max_len):
        s = ctx.weights.path_weight(p)
        if s.left == e and s not in out:
            out.append(s)
    return out


def ds_audit(ctx: Context, e, s) -> dict:
    """Predicted Σ |P(t,v)|² against the rank of the spanning monomials of D_s."""
    if not ctx.is_leavitt:
        raise ValueError("the D_s audit runs on Leavitt contexts (X = Reg) only")
    if not ctx.ring.is_field:
        raise ValueError("dimension counting needs field coefficients")
    g = ctx.graph
    sinks = [v for v in g.vertices if not g.out_edges[v]]
    below = [t for t in S_e(ctx, e, s.g) if t != s and path_weight_order(ctx, t, s)]
    summands = []
    spanning = []

    def add_block(t, verts):
        by_end: dict = {}
        for p in _paths_of_weight(ctx, t):
            by_end.setdefault(p.end, []).append(p)
        for v in verts:
            ps = by_end.get(v, [])
            if ps:
                summands.append(DsSummand(t, v, len(ps)))
            for mu in ps:
                for nu in ps:
                    spanning.append(ctx.element({Monomial(mu, nu): 1}))

    for t in below:
        add_block(t, sinks)
    add_block(s, g.vertices)
    predicted = sum(d.size ** 2 for d in summands)
    index: dict = {}
    rows = []
    for x in spanning:
        r = {index.setdefault(m, len(index)): c for m, c in x.terms.items()}
        if r:
            rows.append(r)
    enumerated = rank(rows, ctx.ring) if rows else 0
    return {
        "e": str(e),
        "s": str(s),
        "below": [str(t) for t in below],
        "summands": [{"weight": str(d.weight), "vertex": d.vertex, "size": d.size}
                     for d in summands],
        "predicted": predicted,
        "enumerated": enumerated,
        "match": predicted == enumerated,
    }


def ds_audit_all(ctx: Context, max_len: int = 4) -> CheckReport:
    rep = CheckReport("ds-audit", True, params={"graph": ctx.graph.name, "ring": str(ctx.ring),
                                                "max_len": max_len})
    rows = []
    with _Timer() as t:
        idems = []
        for v in ctx.graph.vertices:
            e = ctx.weights.vertex(v)
            if e not in idems:
                idems.append(e)
        for e in idems:
            for s in S_e(ctx, e, max_len):
                a = ds_audit(ctx, e, s)
                rows.append(a)
                if not a["match"]:
                    _fail(rep, a)
                else:
                    _certify(rep, f"D_{s} in R_{e}: predicted {a['predicted']} == "
                                  f"rank {a['enumerated']}")
    rep.elapsed_ms = t.ms
    rep.stats = {"pairs": len(rows),
                 "audits": [{k: a[k] for k in ("e", "s", "predicted", "enumerated")} for a in rows]}
    return rep


# C^X(E) -> L(E(X))

def extended_weight_map(w: WeightMap, gx: Graph) -> WeightMap:
    """w(v') = w(v) and w(α') = w(α) on E(X)."""
    g = w.graph
    vw = dict(w.vertex_weights)
    ew = dict(w.edge_weights)
    for v in g.vertices:
        if prime(v) in gx.vertex_index:
            vw[prime(v)] = w.vertex(v)
    for a in g.edge:
        if prime(a) in gx.edge:
            ew[prime(a)] = w.edge(a)
    return WeightMap(gx, vw, ew)


class CohnLeavittMap:
    def __init__(self, g: Graph, X, ring: RingSpec, weights: Optional[WeightMap] = None):
        self.source = Context(g, ring, X=X, weights=weights)
        self.Y = [v for v in g.vertices if v in regular_vertices(g) and v not in self.source.X]
        gx = graph_of_X(g, self.source.X)
        self.target = Context(gx, ring, weights=extended_weight_map(self.source.weights, gx))
        ys = set(self.Y)
        T = self.target
        self.vertex_image = {v: T.vertex(v) + T.vertex(prime(v)) if v in ys else T.vertex(v)
                             for v in g.vertices}
        self.edge_image = {a: T.edge(a) + T.edge(prime(a)) if g.r(a) in ys else T.edge(a)
                           for a in g.edge}

    def monomial_image(self, m: Monomial) -> AlgebraElem:
        out = self.vertex_image[m.mu.start]
        for a in m.mu.edges:
            out = out * self.edge_image[a]
        for a in reversed(m.nu.edges):
            out = out * self.edge_image[a].star()
        return out

    def __call__(self, x: AlgebraElem) -> AlgebraElem:
        out = self.target.zero()
        for m, c in x.terms.items():
            out = out + self.monomial_image(m).scale(c)
        return out

    def verify(self, samples: int = 100, seed: int = 0, max_len: int = 3) -> CheckReport:
        src, T = self.source, self.target
        g = src.graph
        rep = CheckReport("cohn-iso", True, seed=seed,
                          params={"graph": g.name, "X": sorted(src.X, key=g.vertex_index.get),
                                  "ring": str(src.ring), "samples": samples, "max_len": max_len})
        rng = random.Random(seed)
        phi_v = self.vertex_image
        phi_a = self.edge_image
        with _Timer() as t:
            for v in g.vertices:
                for w in g.vertices:
                    want = phi_v[v] if v == w else T.zero()
                    if phi_v[v] * phi_v[w] != want:
                        _fail(rep, {"relation": f"{v} {w}"})
            for a in g.edge:
                A = phi_a[a]
                if phi_v[g.s(a)] * A != A or A * phi_v[g.r(a)] != A:
                    _fail(rep, {"relation": f"s({a}) {a} = {a} = {a} r({a})"})
                if A.star() * phi_v[g.s(a)] != A.star() or phi_v[g.r(a)] * A.star() != A.star():
                    _fail(rep, {"relation": f"ghost {a}"})
                for b in g.edge:
                    want = phi_v[g.r(a)] if a == b else T.zero()
                    if A.star() * phi_a[b] != want:
                        _fail(rep, {"relation": f"{a}~ {b}"})
                if A.degree() != src.weights.edge(a):
                    _fail(rep, {"edge": a, "reason": "image not homogeneous of the edge weight"})
            for v in src.X:
                total = T.zero()
                for a in g.out_edges[v]:
                    total = total + phi_a[a] * phi_a[a].star()
                if total != phi_v[v]:
                    _fail(rep, {"relation": f"Σ aa* = {v}"})
            if rep.verdict:
                _certify(rep, "phi preserves every defining relation")
            idems = []
            for v in g.vertices:
                e = src.weights.vertex(v)
                if e not in idems:
                    idems.append(e)
            for e in idems:
                if self(src.local_unit(e)) != T.local_unit(e):
                    _fail(rep, {"unit": str(e), "reason": "phi(1_e) != 1_e"})
            basis = src.basis(max_len)
            ims = []
            for m in basis:
                im = self.monomial_image(m)
                ims.append(im)
                if not im or not im.is_homogeneous() or im.degree() != src.weight(m):
                    _fail(rep, {"monomial": str(m), "reason": "degree not preserved"})
            r = _rank(ims, src.ring) if src.ring.kind != "integers-mod" else len(basis)
            if r != len(basis):
                _fail(rep, {"reason": "images of basis monomials are dependent",
                            "rank": r, "basis": len(basis)})
            for _ in range(samples):
                x = random_element(src, rng, max_len=max_len)
                y = random_element(src, rng, max_len=max_len)
                if self(x * y) != self(x) * self(y):
                    _fail(rep, {"x": str(x), "y": str(y), "reason": "phi(xy) != phi(x)phi(y)"})
            _certify(rep, f"phi(xy) == phi(x) phi(y) on {samples} random pairs")
        rep.elapsed_ms = t.ms
        rep.stats = {"Y": self.Y, "target_graph": T.graph.to_json(), "basis_checked": len(basis)}
        return rep


def _rank(elems, ring: RingSpec) -> int:
    index: dict = {}
    rows = []
    for x in elems:
        r = {index.setdefault(m, len(index)): c for m, c in x.terms.items()}
        if r:
            rows.append(r)
    if not rows:
        return 0
    if ring.kind == "integers":
        ring = RingSpec.Q()
    return rank(rows, ring)


def cohn_leavitt_iso(g: Graph, X, ring: RingSpec,
                     weights: Optional[WeightMap] = None) -> CohnLeavittMap:
    return CohnLeavittMap(g, X, ring, weights)
