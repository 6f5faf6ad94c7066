"""Cohn and Leavitt path algebras in normal form.

Elements are finite sums of monomials μν* with r(μ) = r(ν).  The relation
Σ_{s(a)=v} a a* = v (v in X) is oriented at a designated edge γ_v, so a
monomial is in normal form unless μ and ν both end in the same designated
edge γ_u with u in X.  Products use prefix cancellation followed by that
single reduction; :func:`normalize` instead rewrites raw generator words and
serves as the independent route.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from .brandt import ZERO
from .coeff import Coefficient, MixedRingError, RingSpec
from .graph import Graph, Path, enumerate_paths, regular_vertices
from .weight import WeightMap, finest_weight_map


class AlgebraError(ValueError):
    pass


class NotHomogeneous(AlgebraError):
    pass


class Monomial(NamedTuple):
    mu: Path
    nu: Path

    @property
    def is_vertex(self) -> bool:
        return not self.mu.edges and not self.nu.edges

    def star(self) -> "Monomial":
        return Monomial(self.nu, self.mu)

    def word(self) -> str:
        if self.is_vertex:
            return self.mu.start
        parts = list(self.mu.edges) + [a + "~" for a in reversed(self.nu.edges)]
        return " ".join(parts)

    def __str__(self):
        return self.word()


class Context:
    """The algebra C_R^X(E) with its grading and normal-form choice.

    ``X`` defaults to Reg(E), i.e. the Leavitt path algebra.  ``special``
    maps each v in X to its designated edge, by default the first edge out
    of v in declaration order.
    """

    def __init__(self, graph: Graph, ring: RingSpec, X: Optional[Iterable[str]] = None,
                 weights: Optional[WeightMap] = None, special: Optional[dict] = None):
        self.graph = graph
        self.ring = ring
        reg = regular_vertices(graph)
        self.X = reg if X is None else frozenset(X)
        if not self.X <= reg:
            raise AlgebraError(f"X must lie in Reg(E); bad: {sorted(self.X - reg)}")
        self.weights = weights if weights is not None else finest_weight_map(graph)
        if self.weights.graph != graph:
            raise AlgebraError("weight map belongs to a different graph")
        if special is None:
            special = {v: graph.out_edges[v][0] for v in graph.vertices if v in self.X}
        for v in self.X:
            if v not in special or graph.s(special[v]) != v:
                raise AlgebraError(f"designated edge for {v} must start at {v}")
        self.special = dict(special)
        self._special_edges = {special[v] for v in self.X}
        self._key = (graph, self.X, self.weights, ring,
                     tuple(sorted(self.special.items())))
        self._mul_cache: dict = {}
        self._red_cache: dict = {}
        self._wt_cache: dict = {}
        self._paths_cache: dict = {}
        self._basis_cache: dict = {}

    def __eq__(self, other):
        return isinstance(other, Context) and (self is other or self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        kind = "L" if self.is_leavitt else "C"
        return f"<{kind}_{self.ring}({self.graph.name}) X={sorted(self.X)}>"

    @property
    def is_leavitt(self) -> bool:
        return self.X == regular_vertices(self.graph)

    def with_ring(self, ring: RingSpec) -> "Context":
        return Context(self.graph, ring, self.X, self.weights, self.special)

    # monomials

    def monomial(self, mu: Path, nu: Path) -> Monomial:
        if mu.end != nu.end:
            raise AlgebraError(f"r({mu.word()}) != r({nu.word()})")
        return Monomial(mu, nu)

    def key(self, m: Monomial) -> tuple:
        g = self.graph
        return (len(m.mu.edges) + len(m.nu.edges), g.path_key(m.mu), g.path_key(m.nu))

    def is_normal(self, m: Monomial) -> bool:
        a, b = m.mu.edges, m.nu.edges
        return not (a and b and a[-1] == b[-1] and a[-1] in self._special_edges)

    def weight(self, m: Monomial):
        w = self._wt_cache.get(m)
        if w is None:
            w = self.weights.monomial_weight(m.mu, m.nu)
            self._wt_cache[m] = w
        return w

    def reduce_monomial(self, m: Monomial) -> tuple:
        """Normal form of a single monomial as ``((monomial, ±1), ...)``."""
        hit = self._red_cache.get(m)
        if hit is not None:
            return hit
        if self.is_normal(m):
            out = ((m, 1),)
        else:
            g = self.graph
            gamma = m.mu.edges[-1]
            u = g.s(gamma)
            mu0 = Path(m.mu.start, m.mu.edges[:-1], u)
            nu0 = Path(m.nu.start, m.nu.edges[:-1], u)
            acc: dict = {}
            for mm, k in self.reduce_monomial(Monomial(mu0, nu0)):
                acc[mm] = acc.get(mm, 0) + k
            for a in g.out_edges[u]:
                if a == gamma:
                    continue
                r = g.r(a)
                mm = Monomial(Path(mu0.start, mu0.edges + (a,), r),
                              Path(nu0.start, nu0.edges + (a,), r))
                acc[mm] = acc.get(mm, 0) - 1
            out = tuple((mm, k) for mm, k in acc.items() if k)
        self._red_cache[m] = out
        return out

    def mono_mul(self, m1: Monomial, m2: Monomial) -> tuple:
        """(μν*)(ρσ*) in normal form."""
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        mu, nu = m1
        rho, sigma = m2
        if rho.is_prefix_of(nu):
            kappa = nu.edges[len(rho.edges):]
            prod = Monomial(mu, Path(sigma.start, sigma.edges + kappa, nu.end))
            out = self.reduce_monomial(prod)
        elif nu.is_prefix_of(rho):
            kappa = rho.edges[len(nu.edges):]
            prod = Monomial(Path(mu.start, mu.edges + kappa, rho.end), sigma)
            out = self.reduce_monomial(prod)
        else:
            out = ()
        self._mul_cache[key] = out
        return out

    # generators and elements

    def element(self, terms=None, reduce: bool = True) -> "AlgebraElem":
        """Build an element from ``{Monomial: coefficient}``; non-normal
        monomials are reduced unless ``reduce`` is False."""
        ring = self.ring
        out: dict = {}
        for m, c in (terms or {}).items():
            c = _raw(c, ring)
            if not c:
                continue
            parts = self.reduce_monomial(m) if reduce else ((m, 1),)
            for mm, k in parts:
                out[mm] = ring.add(out.get(mm, ring.zero), ring.mul(c, ring.coerce(k)))
        return AlgebraElem(self, {m: c for m, c in out.items() if c})

    def zero(self) -> "AlgebraElem":
        return AlgebraElem(self, {})

    def vertex(self, v: str) -> "AlgebraElem":
        if v not in self.graph.vertex_index:
            raise AlgebraError(f"generator {v!r} not in graph")
        p = self.graph.vertex_path(v)
        return AlgebraElem(self, {Monomial(p, p): self.ring.one})

    def edge(self, a: str) -> "AlgebraElem":
        if a not in self.graph.edge:
            raise AlgebraError(f"generator {a!r} not in graph")
        p = self.graph.path([a])
        return AlgebraElem(self, {Monomial(p, self.graph.vertex_path(p.end)): self.ring.one})

    def ghost(self, a: str) -> "AlgebraElem":
        return self.edge(a).star()

    def path_element(self, p: Path) -> "AlgebraElem":
        return AlgebraElem(self, {Monomial(p, self.graph.vertex_path(p.end)): self.ring.one})

    def from_monomial(self, m: Monomial, c=1) -> "AlgebraElem":
        return self.element({m: c})

    def one(self) -> "AlgebraElem":
        return self.element({Monomial(self.graph.vertex_path(v), self.graph.vertex_path(v)): 1
                             for v in self.graph.vertices})

    def local_unit(self, e) -> "AlgebraElem":
        """Σ of the vertices of weight e."""
        return self.element({Monomial(self.graph.vertex_path(v), self.graph.vertex_path(v)): 1
                             for v in self.graph.vertices if self.weights.vertex(v) == e})

    def parse(self, text: str) -> "AlgebraElem":
        return parse_element(self, text)

    # enumeration

    def paths(self, max_len: int) -> list:
        hit = self._paths_cache.get(max_len)
        if hit is None:
            hit = enumerate_paths(self.graph, max_len)
            self._paths_cache[max_len] = hit
        return hit

    def full_length(self) -> int:
        """Longest path length of an acyclic graph."""
        if not self.graph.is_acyclic():
            raise AlgebraError(f"{self.graph.name} has a cycle: the basis is infinite")
        return max(len(self.graph.vertices) - 1, 0)

    def basis(self, max_len: Optional[int] = None) -> list:
        """Normal-form monomials with both paths of length <= max_len.

        ``max_len=None`` asks for the full finite basis and needs an acyclic
        graph.
        """
        if max_len is None:
            max_len = self.full_length()
        hit = self._basis_cache.get(max_len)
        if hit is not None:
            return hit
        by_end: dict = {}
        for p in self.paths(max_len):
            by_end.setdefault(p.end, []).append(p)
        out = []
        for v in self.graph.vertices:
            ps = by_end.get(v, [])
            for mu in ps:
                for nu in ps:
                    m = Monomial(mu, nu)
                    if self.is_normal(m):
                        out.append(m)
        out.sort(key=self.key)
        self._basis_cache[max_len] = out
        return out

    def graded_basis(self, max_len: Optional[int] = None) -> dict:
        """``{degree: [monomials]}`` over :meth:`basis`."""
        out: dict = {}
        for m in self.basis(max_len):
            out.setdefault(self.weight(m), []).append(m)
        return out

    def degree_basis(self, degree, max_len: Optional[int] = None) -> list:
        return [m for m in self.basis(max_len) if self.weight(m) == degree]


def _raw(c, ring: RingSpec):
    if isinstance(c, Coefficient):
        if c.ring != ring:
            raise MixedRingError(f"{c.ring} vs {ring}")
        return c.value
    return ring.coerce(c)


class AlgebraElem:
    """Immutable finite sum of normal-form monomials over a :class:`Context`."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: Context, terms: dict):
        self.ctx = ctx
        self.terms = terms
        self._hash = None

    def _same(self, other: "AlgebraElem") -> None:
        if not (self.ctx is other.ctx or self.ctx == other.ctx):
            raise AlgebraError("elements live in different algebras")

    def _lift(self, other) -> "AlgebraElem":
        if isinstance(other, AlgebraElem):
            self._same(other)
            return other
        return self.ctx.one() * other

    def __add__(self, other):
        other = self._lift(other)
        ring = self.ctx.ring
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = ring.add(out.get(m, ring.zero), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return AlgebraElem(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ctx.ring
        return AlgebraElem(self.ctx, {m: ring.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "AlgebraElem":
        ring = self.ctx.ring
        c = _raw(c, ring)
        out = {}
        for m, v in self.terms.items():
            p = ring.mul(c, v)
            if p:
                out[m] = p
        return AlgebraElem(self.ctx, out)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElem):
            return self.scale(other)
        self._same(other)
        return AlgebraElem(self.ctx, _mul_terms(self.ctx, self.terms, other.terms))

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, AlgebraElem):
            return (self.ctx is other.ctx or self.ctx == other.ctx) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.ctx.ring.zero)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: self.ctx.key(kv[0]))

    def star(self) -> "AlgebraElem":
        """The involution: Σ r μν* -> Σ r νμ*."""
        return AlgebraElem(self.ctx, {m.star(): c for m, c in self.terms.items()})

    def decompose(self) -> dict:
        """Homogeneous components keyed by degree."""
        parts: dict = {}
        for m, c in self.terms.items():
            parts.setdefault(self.ctx.weight(m), {})[m] = c
        return {d: AlgebraElem(self.ctx, t) for d, t in parts.items()}

    def degrees(self) -> set:
        return {self.ctx.weight(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        """Degree of a homogeneous element; ZERO for the zero element."""
        ds = self.degrees()
        if not ds:
            return ZERO
        if len(ds) > 1:
            raise NotHomogeneous(f"{self} has degrees {sorted(map(str, ds))}")
        return next(iter(ds))

    def max_length(self) -> int:
        return max((max(len(m.mu.edges), len(m.nu.edges)) for m in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ctx.ring
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            sign = "+"
            if ring.kind in ("rationals", "integers") and c < 0:
                sign, c = "-", -c
            body = m.word() if c == 1 else f"{ring.format_short(c)} {m.word()}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f"{sign} {body}")
        return " ".join(out)

    def __repr__(self):
        return f"AlgebraElem({self})"


def _mul_terms(ctx: Context, a: dict, b: dict) -> dict:
    ring = ctx.ring
    zero = ring.zero
    out: dict = {}
    mono_mul = ctx.mono_mul
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            prod = mono_mul(m1, m2)
            if not prod:
                continue
            c = ring.mul(c1, c2)
            if not c:
                continue
            for m, k in prod:
                v = ring.add(out.get(m, zero), c if k == 1 else ring.mul(c, ring.coerce(k)))
                out[m] = v
    return {m: c for m, c in out.items() if c}


# word rewriting

VERTEX, EDGE, GHOST = "v", "e", "g"


def _step(ctx: Context, x, y):
    """Rewrite the adjacent pair (x, y): None if it is not a redex,
    otherwise a list of ``(coefficient, replacement)``."""
    g = ctx.graph
    kx, nx = x
    ky, ny = y
    if kx == VERTEX:
        if ky == VERTEX:
            return [(1, (x,))] if nx == ny else []
        if ky == EDGE:
            return [(1, (y,))] if g.s(ny) == nx else []
        return [(1, (y,))] if g.r(ny) == nx else []
    if ky == VERTEX:
        if kx == EDGE:
            return [(1, (x,))] if g.r(nx) == ny else []
        return [(1, (x,))] if g.s(nx) == ny else []
    if kx == GHOST and ky == EDGE:
        return [(1, ((VERTEX, g.r(nx)),))] if nx == ny else []
    if kx == EDGE and ky == EDGE:
        return None if g.r(nx) == g.s(ny) else []
    if kx == GHOST and ky == GHOST:
        return None if g.s(nx) == g.r(ny) else []
    # edge followed by ghost
    if g.r(nx) != g.r(ny):
        return []
    u = g.s(nx)
    if nx == ny and u in ctx.X and ctx.special[u] == nx:
        out = [(1, ((VERTEX, u),))]
        for a in g.out_edges[u]:
            if a != nx:
                out.append((-1, ((EDGE, a), (GHOST, a))))
        return out
    return None


def _redexes(ctx: Context, word: tuple) -> list:
    return [i for i in range(len(word) - 1) if _step(ctx, word[i], word[i + 1]) is not None]


def _word_to_monomial(ctx: Context, word: tuple) -> Monomial:
    g = ctx.graph
    if len(word) == 1 and word[0][0] == VERTEX:
        p = g.vertex_path(word[0][1])
        return Monomial(p, p)
    edges = tuple(n for k, n in word if k == EDGE)
    ghosts = tuple(n for k, n in word if k == GHOST)
    nu_edges = tuple(reversed(ghosts))
    if edges:
        mu = g.path(edges)
        nu = g.path(nu_edges) if nu_edges else g.vertex_path(mu.end)
    else:
        nu = g.path(nu_edges)
        mu = g.vertex_path(nu.end)
    return Monomial(mu, nu)


def normalize(ctx: Context, raw, order: str = "leftmost", rng: Optional[random.Random] = None,
              max_steps: int = 1_000_000) -> AlgebraElem:
    """Rewrite ``[(coefficient, word), ...]`` to normal form.

    A word is a sequence of generators ``("v", id)``, ``("e", id)`` or
    ``("g", id)``.  ``order`` picks which redex fires: ``leftmost``,
    ``rightmost`` or ``random`` (using ``rng``).
    """
    ring = ctx.ring
    g = ctx.graph
    if order == "random" and rng is None:
        rng = random.Random(0)
    pending: dict = {}
    for c, word in raw:
        word = tuple(word)
        for k, n in word:
            known = g.vertex_index if k == VERTEX else g.edge
            if n not in known:
                raise AlgebraError(f"generator {n!r} not in graph")
        if not word:
            raise AlgebraError("empty word")
        c = _raw(c, ring)
        if c:
            pending[word] = ring.add(pending.get(word, ring.zero), c)
    done: dict = {}
    steps = 0
    while pending:
        word, c = pending.popitem()
        if not c:
            continue
        spots = _redexes(ctx, word)
        if not spots:
            m = _word_to_monomial(ctx, word)
            done[m] = ring.add(done.get(m, ring.zero), c)
            continue
        if order == "leftmost":
            i = spots[0]
        elif order == "rightmost":
            i = spots[-1]
        else:
            i = rng.choice(spots)
        for k, rep in _step(ctx, word[i], word[i + 1]):
            new = word[:i] + rep + word[i + 2:]
            pending[new] = ring.add(pending.get(new, ring.zero), ring.mul(c, ring.coerce(k)))
        steps += 1
        if steps > max_steps:
            raise AlgebraError("rewriting did not terminate")
    return AlgebraElem(ctx, {m: c for m, c in done.items() if c})


# expression syntax

_EXPR_TOKEN = re.compile(r"\s+|(\d+(?:/\d+)?)|([+\-*])|([A-Za-z_][A-Za-z0-9_'.]*~?)")


def tokenize_expression(text: str) -> list:
    pos, out = 0, []
    while pos < len(text):
        m = _EXPR_TOKEN.match(text, pos)
        if not m:
            raise AlgebraError(f"cannot parse {text[pos:]!r} (column {pos + 1})")
        if not m.group(0).isspace():
            out.append(m.group(0))
        pos = m.end()
    return out


def parse_raw(ctx: Context, text: str) -> list:
    """Parse ``2/3 * a1 a2 a2~ a1~ + v1`` into ``[(coefficient, word), ...]``.

    A word-less term such as ``3`` stands for 3 times the unit Σ v.
    """
    ring = ctx.ring
    g = ctx.graph
    toks = tokenize_expression(text)
    if not toks:
        raise AlgebraError("empty expression")
    terms = []
    sign = 1
    coef = None
    word: list = []
    expect_term = True

    def flush():
        nonlocal coef, word, sign
        c = ring.coerce(Fraction(coef) if coef is not None else 1)
        if sign < 0:
            c = ring.neg(c)
        if word:
            terms.append((c, tuple(word)))
        else:
            for v in g.vertices:
                terms.append((c, ((VERTEX, v),)))
        coef, word, sign = None, [], 1

    for t in toks:
        if t in "+-" and len(t) == 1:
            if not expect_term:
                flush()
            sign = -sign if t == "-" else sign
            expect_term = True
            continue
        if t == "*":
            continue
        if re.fullmatch(r"\d+(/\d+)?", t):
            if word or coef is not None:
                raise AlgebraError(f"unexpected number {t!r}")
            coef = t
        else:
            name, ghost = (t[:-1], True) if t.endswith("~") else (t, False)
            if name in g.edge:
                word.append((GHOST if ghost else EDGE, name))
            elif name in g.vertex_index and not ghost:
                word.append((VERTEX, name))
            else:
                raise AlgebraError(f"generator {t!r} not in graph")
        expect_term = False
    if expect_term:
        raise AlgebraError("expression ends with an operator")
    flush()
    return terms


def parse_element(ctx: Context, text: str) -> AlgebraElem:
    if text.strip() == "0":
        return ctx.zero()
    return normalize(ctx, parse_raw(ctx, text))


def word_to_generators(word: tuple) -> str:
    return " ".join(n + "~" if k == GHOST else n for k, n in word)


def multiply_words(ctx: Context, word: tuple) -> AlgebraElem:
    """Evaluate a word by multiplying generator elements left to right."""
    out = None
    for k, n in word:
        gen = ctx.vertex(n) if k == VERTEX else ctx.edge(n) if k == EDGE else ctx.ghost(n)
        out = gen if out is None else out * gen
    return out


def random_word(ctx: Context, rng: random.Random, max_len: int = 8,
                coherent: float = 0.8) -> tuple:
    """Random generator word; with probability ``coherent`` each step follows
    an adjacency that does not vanish immediately, otherwise anything goes."""
    g = ctx.graph
    gens = ([(VERTEX, v) for v in g.vertices] + [(EDGE, e.id) for e in g.edges]
            + [(GHOST, e.id) for e in g.edges])
    word = [rng.choice(gens)]
    for _ in range(rng.randint(0, max_len - 1)):
        k, n = word[-1]
        here = n if k == VERTEX else g.r(n) if k == EDGE else g.s(n)
        if rng.random() < coherent:
            nxt = ([(VERTEX, here)] + [(EDGE, a) for a in g.out_edges[here]]
                   + [(GHOST, a) for a in g.in_edges[here]])
            word.append(rng.choice(nxt))
        else:
            word.append(rng.choice(gens))
    return tuple(word)
