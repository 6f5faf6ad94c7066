"""Canonical weight maps E* ∪ {μ*} -> M(Z, I).

Vertices get (i, 0, i) and edges (a(s), 1, a(r)) for an index assignment
``a`` that satisfies the two forcing rules: equal source index forces equal
range index and vice versa.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .brandt import ZERO, Brandt, brandt_mul, from_json
from .graph import Graph, Path


class WeightError(ValueError):
    pass


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def canonical_labels(g: Graph, classes: Mapping[str, object]) -> dict:
    """Relabel classes 1..k by first occurrence in vertex order."""
    labels, out = {}, {}
    for v in g.vertices:
        c = classes[v]
        if c not in labels:
            labels[c] = len(labels) + 1
        out[v] = labels[c]
    return out


def finest_assignment(g: Graph) -> dict:
    """Coarsest congruence forced by the rules, starting from distinct labels."""
    uf = _UnionFind(g.vertices)
    changed = True
    while changed:
        changed = False
        by_src, by_rng = {}, {}
        for e in g.edges:
            by_src.setdefault(uf.find(e.source), []).append(e.range)
            by_rng.setdefault(uf.find(e.range), []).append(e.source)
        for group in list(by_src.values()) + list(by_rng.values()):
            for v in group[1:]:
                changed |= uf.union(group[0], v)
    return canonical_labels(g, {v: uf.find(v) for v in g.vertices})


def coarsest_assignment(g: Graph) -> dict:
    return {v: 1 for v in g.vertices}


def assignment_violation(g: Graph, a: Mapping[str, object]):
    """First edge pair breaking the forcing rules, or None."""
    by_src, by_rng = {}, {}
    for e in g.edges:
        prev = by_src.setdefault(a[e.source], e)
        if a[prev.range] != a[e.range]:
            return prev.id, e.id
        prev = by_rng.setdefault(a[e.range], e)
        if a[prev.source] != a[e.source]:
            return prev.id, e.id
    return None


@dataclass(frozen=True)
class WeightMap:
    graph: Graph
    vertex_weights: dict
    edge_weights: dict

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise WeightError("; ".join(problems))

    def __hash__(self):
        return hash((self.graph, tuple(sorted(self.vertex_weights.items(), key=str)),
                     tuple(sorted(self.edge_weights.items(), key=str))))

    @property
    def index_set(self) -> list:
        seen = []
        for v in self.graph.vertices:
            i = self.vertex_weights[v].i
            if i not in seen:
                seen.append(i)
        return seen

    def assignment(self) -> dict:
        return {v: w.i for v, w in self.vertex_weights.items()}

    def vertex(self, v: str) -> Brandt:
        return self.vertex_weights[v]

    def edge(self, a: str) -> Brandt:
        return self.edge_weights[a]

    def ghost(self, a: str) -> Brandt:
        return self.edge_weights[a].inverse

    def violations(self) -> list:
        """Messages for every failed rule; empty means w1-w4 and the canonical form hold."""
        g = self.graph
        out = []
        for v in g.vertices:
            w = self.vertex_weights.get(v)
            if w is None:
                out.append(f"vertex {v} has no weight")
            elif not (isinstance(w, Brandt) and w.is_idempotent()):
                out.append(f"vertex {v} weight {w} is not of the form (i,0,i)")
        for e in g.edges:
            w = self.edge_weights.get(e.id)
            if w is None:
                out.append(f"edge {e.id} has no weight")
                continue
            if not isinstance(w, Brandt) or w.g != 1:
                out.append(f"edge {e.id} weight {w} is not of the form (i,1,j)")
                continue
            ws, wr = self.vertex_weights.get(e.source), self.vertex_weights.get(e.range)
            if ws is None or wr is None:
                continue
            if brandt_mul(ws, w) != w or brandt_mul(w, wr) != w:
                out.append(f"w1 fails at edge {e.id}: w(s)={ws}, w={w}, w(r)={wr}")
        if out:
            return out
        by_src, by_rng = {}, {}
        for e in g.edges:
            w = self.edge_weights[e.id]
            prev = by_src.setdefault(self.vertex_weights[e.source], (e.id, w))
            if prev[1] != w:
                out.append(f"w3 fails: edges {prev[0]} and {e.id} leave weight "
                           f"{self.vertex_weights[e.source]} with different weights")
            prev = by_rng.setdefault(self.vertex_weights[e.range], (e.id, w))
            if prev[1] != w:
                out.append(f"w4 fails: edges {prev[0]} and {e.id} enter weight "
                           f"{self.vertex_weights[e.range]} with different weights")
        return out

    def path_weight(self, p: Path):
        if not p.edges:
            return self.vertex_weights[p.start]
        w = self.edge_weights[p.edges[0]]
        for a in p.edges[1:]:
            w = brandt_mul(w, self.edge_weights[a])
        return w

    def monomial_weight(self, mu: Path, nu: Path):
        """w(μ ν*) = w(μ) w(ν)^-1."""
        return brandt_mul(self.path_weight(mu), self.path_weight(nu).inverse)

    def to_json(self) -> dict:
        return {
            "vertices": {v: self.vertex_weights[v].to_json() for v in self.graph.vertices},
            "edges": {e.id: self.edge_weights[e.id].to_json() for e in self.graph.edges},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, g: Graph, data: dict) -> "WeightMap":
        vw = {v: from_json(x) for v, x in data["vertices"].items()}
        ew = {a: from_json(x) for a, x in data["edges"].items()}
        for k, w in list(vw.items()) + list(ew.items()):
            if w is ZERO:
                raise WeightError(f"{k} has weight 0")
        return cls(g, vw, ew)


def build_weight_map(g: Graph, a: Mapping[str, object]) -> WeightMap:
    bad = assignment_violation(g, a)
    if bad:
        raise WeightError(f"assignment breaks the forcing rules at edges {bad[0]}, {bad[1]}")
    vw = {v: Brandt(a[v], 0, a[v]) for v in g.vertices}
    ew = {e.id: Brandt(a[e.source], 1, a[e.range]) for e in g.edges}
    return WeightMap(g, vw, ew)


def finest_weight_map(g: Graph) -> WeightMap:
    return build_weight_map(g, finest_assignment(g))


def coarsest_weight_map(g: Graph) -> WeightMap:
    return build_weight_map(g, coarsest_assignment(g))


def path_weight(w: WeightMap, p: Path):
    return w.path_weight(p)


def load_weight_map(g: Graph, path: str) -> WeightMap:
    """Read either a WeightMap JSON or a bare ``{vertex: index}`` assignment."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "vertices" in data and isinstance(data["vertices"], dict):
        return WeightMap.from_json(g, data)
    return build_weight_map(g, data)
