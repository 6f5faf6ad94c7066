"""Finite directed graphs, paths, and the E(X) transform.

Orderings are by declaration index throughout, so path and monomial orders
do not depend on how identifiers happen to sort as strings.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional


class GraphError(ValueError):
    pass


class GraphSyntaxError(GraphError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line = line
        self.col = col


class Edge(NamedTuple):
    id: str
    source: str
    range: str


class Path(NamedTuple):
    """A path; length-0 paths are a vertex with ``start == end``."""

    start: str
    edges: tuple
    end: str

    def __len__(self):
        return len(self.edges)

    def is_prefix_of(self, other: "Path") -> bool:
        n = len(self.edges)
        return (self.start == other.start and n <= len(other.edges)
                and other.edges[:n] == self.edges)

    def word(self) -> str:
        return " ".join(self.edges) if self.edges else self.start


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    name: str = "E"

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        seen = set()
        for v in self.vertices:
            if v in seen:
                raise GraphError(f"duplicate identifier {v!r}")
            seen.add(v)
        vs = set(self.vertices)
        for e in self.edges:
            if e.id in seen:
                raise GraphError(f"duplicate identifier {e.id!r}")
            seen.add(e.id)
            for end in (e.source, e.range):
                if end not in vs:
                    raise GraphError(f"edge {e.id!r} has dangling endpoint {end!r}")

    # lookups

    @cached_property
    def edge(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> dict:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def out_edges(self) -> dict:
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e.id)
        return {v: tuple(es) for v, es in out.items()}

    @cached_property
    def in_edges(self) -> dict:
        inn = {v: [] for v in self.vertices}
        for e in self.edges:
            inn[e.range].append(e.id)
        return {v: tuple(es) for v, es in inn.items()}

    def s(self, edge_id: str) -> str:
        return self.edge[edge_id].source

    def r(self, edge_id: str) -> str:
        return self.edge[edge_id].range

    # paths

    def vertex_path(self, v: str) -> Path:
        return Path(v, (), v)

    def path(self, edge_ids: Iterable[str], start: Optional[str] = None) -> Path:
        ids = tuple(edge_ids)
        if not ids:
            if start is None:
                raise GraphError("a length-0 path needs an anchor vertex")
            return Path(start, (), start)
        for a, b in zip(ids, ids[1:]):
            if self.r(a) != self.s(b):
                raise GraphError(f"{a} {b} is not a path")
        if start is not None and start != self.s(ids[0]):
            raise GraphError(f"path does not start at {start}")
        return Path(self.s(ids[0]), ids, self.r(ids[-1]))

    def path_key(self, p: Path) -> tuple:
        ei = self.edge_index
        return (len(p.edges), tuple(ei[a] for a in p.edges), self.vertex_index[p.start])

    def is_acyclic(self) -> bool:
        indeg = {v: len(self.in_edges[v]) for v in self.vertices}
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.out_edges[v]:
                w = self.r(a)
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        return seen == len(self.vertices)

    # serialization

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "edges": [{"id": e.id, "source": e.source, "range": e.range} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        return cls(tuple(data["vertices"]),
                   tuple((e["id"], e["source"], e["range"]) for e in data["edges"]),
                   data.get("name", "E"))

    def to_dsl(self) -> str:
        lines = [f"graph {self.name} {{", "  vertices " + " ".join(self.vertices) + ";"]
        if self.edges:
            body = "; ".join(f"{e.id}: {e.source} -> {e.range}" for e in self.edges)
            lines.append(f"  edges {body};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def classify(g: Graph):
    """``(sinks, sources, regular)``; every non-sink of a finite graph is regular."""
    sinks = frozenset(v for v in g.vertices if not g.out_edges[v])
    sources = frozenset(v for v in g.vertices if not g.in_edges[v])
    regular = frozenset(v for v in g.vertices if g.out_edges[v])
    return sinks, sources, regular


def regular_vertices(g: Graph) -> frozenset:
    return classify(g)[2]


def enumerate_paths(g: Graph, max_len: int) -> list:
    """All paths of length <= max_len, ordered by length then edge indices."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    level = [g.vertex_path(v) for v in g.vertices]
    out = list(level)
    for _ in range(max_len):
        nxt = []
        for p in level:
            for a in g.out_edges[p.end]:
                nxt.append(Path(p.start, p.edges + (a,), g.r(a)))
        if not nxt:
            break
        nxt.sort(key=g.path_key)
        out.extend(nxt)
        level = nxt
    return out


def graph_of_X(g: Graph, X: Iterable[str]) -> Graph:
    """E(X): adds a sink copy v' of each v in Reg(E)\\X and an edge a' for
    every a ending in such a v, running from s(a) to r(a)'."""
    X = frozenset(X)
    reg = regular_vertices(g)
    bad = sorted(X - reg, key=lambda v: g.vertex_index.get(v, -1))
    if bad:
        raise GraphError(f"X contains non-regular vertices {bad}")
    Y = [v for v in g.vertices if v in reg and v not in X]
    if not Y:
        return g
    ys = set(Y)
    new_vertices = tuple(g.vertices) + tuple(prime(v) for v in Y)
    new_edges = tuple(g.edges) + tuple(
        (prime(e.id), e.source, prime(e.range)) for e in g.edges if e.range in ys)
    return Graph(new_vertices, new_edges, f"{g.name}(X)")


def prime(name: str) -> str:
    return name + "'"


# families used by tests and the CLI

def line_graph(n: int) -> Graph:
    """A_n: v1 -> v2 -> ... -> vn with edges a1..a(n-1)."""
    vs = tuple(f"v{i}" for i in range(1, n + 1))
    es = tuple((f"a{i}", f"v{i}", f"v{i+1}") for i in range(1, n))
    return Graph(vs, es, f"A{n}")


def rose(k: int) -> Graph:
    """One vertex with ``k`` loops; ``rose(1)`` is R_1."""
    names = ["a"] if k == 1 else [f"a{i}" for i in range(1, k + 1)]
    return Graph(("v",), tuple((a, "v", "v") for a in names), f"R{k}")


def random_acyclic(n: int, seed: int, p: float = 0.45, max_parallel: int = 2) -> Graph:
    """Random DAG on ``n`` vertices; edges go from lower to higher index."""
    rng = random.Random(seed)
    vs = tuple(f"u{i}" for i in range(1, n + 1))
    es = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                for _ in range(rng.randint(1, max_parallel) if rng.random() < 0.2 else 1):
                    es.append((f"e{len(es) + 1}", vs[i], vs[j]))
    return Graph(vs, tuple(es), f"DAG{n}s{seed}")


def builtin_graph(spec: str) -> Graph:
    """``A:n``, ``rose:k``, ``R1`` or ``dag:n:seed``."""
    m = re.fullmatch(r"A:?(\d+)", spec)
    if m:
        return line_graph(int(m.group(1)))
    m = re.fullmatch(r"(?:rose:|R)(\d+)", spec)
    if m:
        return rose(int(m.group(1)))
    m = re.fullmatch(r"dag:(\d+):(\d+)", spec)
    if m:
        return random_acyclic(int(m.group(1)), int(m.group(2)))
    raise GraphError(f"unknown builtin graph {spec!r}")


# DSL

_TOKEN = re.compile(r"\s+|#[^\n]*|->|[{};:]|[A-Za-z_][A-Za-z0-9_'.]*")


def _tokenize(text: str):
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise GraphSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        tok = m.group(0)
        if not (tok.isspace() or tok.startswith("#")):
            yield tok, line, col
        for ch in tok:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    yield None, line, col


def parse_graph(text: str) -> Graph:
    """Parse ``graph <name> { vertices <id>...; edges <id>: <src> -> <dst>; ... }``."""
    toks = list(_tokenize(text))
    i = 0

    def peek():
        return toks[i]

    def take(expected=None):
        nonlocal i
        tok, line, col = toks[i]
        if tok is None:
            raise GraphSyntaxError(f"unexpected end of input, expected {expected or 'token'}",
                                   line, col)
        if expected is not None and tok != expected:
            raise GraphSyntaxError(f"expected {expected!r}, got {tok!r}", line, col)
        i += 1
        return tok, line, col

    def ident():
        tok, line, col = take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_'.]*", tok) or tok in ("graph", "vertices", "edges"):
            raise GraphSyntaxError(f"expected identifier, got {tok!r}", line, col)
        return tok, line, col

    take("graph")
    name = ident()[0]
    take("{")
    vertices, edges, where = [], [], {}
    mode = None
    while True:
        tok, line, col = peek()
        if tok == "}":
            take("}")
            break
        if tok == "vertices":
            take()
            while peek()[0] not in (";", "}", None):
                v, vl, vc = ident()
                if v in where:
                    raise GraphSyntaxError(f"duplicate identifier {v!r}", vl, vc)
                where[v] = (vl, vc)
                vertices.append(v)
            take(";")
            mode = None
            continue
        if tok == "edges":
            take()
            mode = "edges"
            if peek()[0] == ";":
                take(";")
                continue
        if mode != "edges":
            raise GraphSyntaxError(f"unexpected {tok!r}", line, col)
        eid, el, ec = ident()
        if eid in where:
            raise GraphSyntaxError(f"duplicate identifier {eid!r}", el, ec)
        where[eid] = (el, ec)
        take(":")
        src = ident()
        take("->")
        dst = ident()
        edges.append((eid, src, dst))
        take(";")
    if peek()[0] is not None:
        tok, line, col = peek()
        raise GraphSyntaxError(f"trailing input {tok!r}", line, col)
    vs = set(vertices)
    for eid, src, dst in edges:
        for v, vl, vc in (src, dst):
            if v not in vs:
                raise GraphSyntaxError(f"edge {eid!r} has dangling endpoint {v!r}", vl, vc)
    return Graph(tuple(vertices), tuple((e, s[0], d[0]) for e, s, d in edges), name)


def load_graph(path_or_spec: str) -> Graph:
    """Read a DSL or JSON graph file, falling back to :func:`builtin_graph`."""
    import os

    if os.path.exists(path_or_spec):
        with open(path_or_spec, encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return Graph.from_json(json.loads(text))
        return parse_graph(text)
    return builtin_graph(path_or_spec)
