"""Simple graphs, multigraphs, named families and basic invariants.

Vertices are dense integers ``0..n-1``.  A simple graph stores its edges as a
sorted tuple of pairs ``(u, v)`` with ``u < v``; the position of a pair in that
tuple is its *edge id*, which fractures and colourings refer to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import ParseError, UsageError

__all__ = [
    "Graph",
    "MultiGraph",
    "GraphFamilySpec",
    "GraphInvariants",
    "generate_family",
    "parse_family",
    "matching",
    "path",
    "cycle",
    "star",
    "biclique",
    "complete",
    "sun",
    "torus",
    "torus_directions",
    "grid",
    "petersen",
    "scaled",
    "disjoint_union",
    "graph_invariants",
    "components",
    "max_matching_size",
    "induced_by_edges",
    "random_graph",
    "parse_edge_list",
    "format_edge_list",
]


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "edges", "_adj", "_hash", "_index")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise UsageError(f"vertex count must be nonnegative, got {n}")
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise UsageError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range for {n} vertices")
            p = (u, v) if u < v else (v, u)
            if p in seen:
                raise UsageError(f"duplicate edge {p}")
            seen.add(p)
        self.n = n
        self.edges = tuple(sorted(seen))
        self._adj = None
        self._hash = None
        self._index = None

    @classmethod
    def _trusted(cls, n: int, edges: tuple) -> "Graph":
        # caller guarantees normalized, sorted, duplicate-free pairs
        g = cls.__new__(cls)
        g.n = n
        g.edges = edges
        g._adj = None
        g._hash = None
        g._index = None
        return g

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def adj(self) -> tuple:
        """Neighbour sets, one frozenset per vertex."""
        if self._adj is None:
            nb = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nb[u].add(v)
                nb[v].add(u)
            self._adj = tuple(frozenset(s) for s in nb)
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list:
        return [len(s) for s in self.adj]

    def edge_id(self, u: int, v: int) -> int:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.edges)}
        return self._index[(u, v) if u < v else (v, u)]

    def incident_edges(self, v: int) -> tuple:
        """Edge ids incident to ``v`` in increasing order."""
        return tuple(i for i, (a, b) in enumerate(self.edges) if a == v or b == v)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def without_edges(self, ids: Iterable[int]) -> "Graph":
        drop = set(ids)
        return Graph._trusted(self.n, tuple(e for i, e in enumerate(self.edges) if i not in drop))

    def strip_isolated(self) -> "Graph":
        return induced_by_edges(self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edges))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def to_json(self) -> dict:
        return {"vertex_count": self.n, "edges": [list(e) for e in self.edges]}


class MultiGraph:
    """Labelled multigraph allowing loops and parallel edges.

    ``edges`` is a tuple of ``(edge_id, u, v)``; loops have ``u == v``.
    """

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        es = tuple((int(i), int(u), int(v)) for i, u, v in edges)
        ids = [e[0] for e in es]
        if len(set(ids)) != len(ids):
            raise UsageError("multigraph edge ids must be unique")
        for i, u, v in es:
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge {i} endpoint out of range")
        self.n = n
        self.edges = es

    @classmethod
    def from_graph(cls, g: Graph) -> "MultiGraph":
        return cls(g.n, [(i, u, v) for i, (u, v) in enumerate(g.edges)])

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def delete(self, edge_id: int) -> "MultiGraph":
        return MultiGraph(self.n, [e for e in self.edges if e[0] != edge_id])

    def contract(self, edge_id: int) -> "MultiGraph":
        """Merge the endpoints of a non-loop edge; parallel edges become loops."""
        (_, a, b), = [e for e in self.edges if e[0] == edge_id]
        if a == b:
            raise UsageError("cannot contract a loop")
        lo, hi = min(a, b), max(a, b)

        def relabel(x: int) -> int:
            if x == hi:
                x = lo
            return x - 1 if x > hi else x

        return MultiGraph(self.n - 1, [(i, relabel(u), relabel(v))
                                       for i, u, v in self.edges if i != edge_id])

    def component_count(self) -> int:
        return _count_components(self.n, [(u, v) for _, u, v in self.edges])

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


# ---------------------------------------------------------------- families

def matching(k: int) -> Graph:
    """M_k: edges (2i, 2i+1)."""
    _need(k >= 0, "matching size must be >= 0")
    return Graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def path(k: int) -> Graph:
    """Path with k edges on vertices 0..k."""
    _need(k >= 1, "path needs at least one edge")
    return Graph(k + 1, [(i, i + 1) for i in range(k)])


def cycle(k: int) -> Graph:
    _need(k >= 3, "cycle length must be >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    _need(k >= 1, "star needs at least one leaf")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def biclique(a: int, b: int) -> Graph:
    """K_{a,b}; left side 0..a-1, right side a..a+b-1."""
    _need(a >= 1 and b >= 1, "biclique sides must be >= 1")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs a vertex")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def sun(l: int) -> Graph:
    """S_l: cycle 0..l-1 with pendant vertex l+i hanging off vertex i."""
    _need(l >= 3, "sun needs a cycle of length >= 3")
    es = [(i, (i + 1) % l) for i in range(l)] + [(i, l + i) for i in range(l)]
    return Graph(2 * l, es)


def torus(l: int) -> Graph:
    """T_l, the Cayley graph of Z_l^2; vertex (i, j) is ``i*l + j``."""
    _need(l >= 3, "torus requires l >= 3")
    es = set()
    for i in range(l):
        for j in range(l):
            v = i * l + j
            for w in (((i + 1) % l) * l + j, i * l + (j + 1) % l):
                es.add((min(v, w), max(v, w)))
    return Graph(l * l, es)


def torus_directions(l: int) -> list:
    """Per vertex of T_l, a map from direction label to incident edge id.

    ``u`` leads to (i, j+1), ``d`` to (i, j-1), ``l`` to (i-1, j), ``r`` to (i+1, j).
    """
    g = torus(l)
    out = []
    for i in range(l):
        for j in range(l):
            v = i * l + j
            nbrs = {
                "u": i * l + (j + 1) % l,
                "d": i * l + (j - 1) % l,
                "l": ((i - 1) % l) * l + j,
                "r": ((i + 1) % l) * l + j,
            }
            out.append({d: g.edge_id(v, w) for d, w in nbrs.items()})
    return out


def grid(k: int) -> Graph:
    """The k x k grid, row-major; 2k(k-1) edges."""
    _need(k >= 1, "grid side must be >= 1")
    es = []
    for i in range(k):
        for j in range(k):
            v = i * k + j
            if j + 1 < k:
                es.append((v, v + 1))
            if i + 1 < k:
                es.append((v, v + k))
    return Graph(k * k, es)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*gs: Graph) -> Graph:
    """Components in argument order, later ones shifted past earlier ones."""
    es, off = [], 0
    for g in gs:
        es.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, es)


def scaled(l: int, g: Graph) -> Graph:
    """l disjoint copies of g."""
    _need(l >= 0, "copy count must be >= 0")
    return disjoint_union(*([g] * l))


@dataclass(frozen=True)
class GraphFamilySpec:
    """A named family and its size parameters.

    ``parts`` is used by the ``union`` and ``scaled`` tags.
    """

    tag: str
    params: tuple = ()
    parts: tuple = ()


_FAMILIES = {
    "matching": (matching, 1),
    "path": (path, 1),
    "cycle": (cycle, 1),
    "star": (star, 1),
    "biclique": (biclique, 2),
    "complete": (complete, 1),
    "sun": (sun, 1),
    "torus": (torus, 1),
    "grid": (grid, 1),
    "petersen": (petersen, 0),
}


def generate_family(spec: GraphFamilySpec) -> Graph:
    if spec.tag == "union":
        return disjoint_union(*(generate_family(p) for p in spec.parts))
    if spec.tag == "scaled":
        _need(len(spec.params) == 1 and len(spec.parts) == 1, "scaled needs (l,) and one part")
        return scaled(spec.params[0], generate_family(spec.parts[0]))
    if spec.tag not in _FAMILIES:
        raise UsageError(f"unknown graph family {spec.tag!r}")
    fn, arity = _FAMILIES[spec.tag]
    _need(len(spec.params) == arity, f"{spec.tag} takes {arity} parameter(s)")
    return fn(*spec.params)


_SHORT = {"k": "complete", "c": "cycle", "p": "path", "m": "matching", "s": "sun", "t": "torus"}


def parse_family(text: str) -> GraphFamilySpec:
    """Parse ``torus:5``, ``biclique:3,3``, ``k3``, ``c4``, ``a+b`` or ``3*c4``."""
    text = text.strip().lower()
    if "+" in text:
        return GraphFamilySpec("union", parts=tuple(parse_family(p) for p in text.split("+")))
    if "*" in text:
        l, rest = text.split("*", 1)
        return GraphFamilySpec("scaled", (_int(l, text),), (parse_family(rest),))
    if ":" in text:
        tag, args = text.split(":", 1)
        return GraphFamilySpec(tag, tuple(_int(a, text) for a in args.split(",")))
    if text == "petersen":
        return GraphFamilySpec("petersen")
    if text.startswith("k1,"):
        return GraphFamilySpec("star", (_int(text[3:], text),))
    if text[:1] in _SHORT and text[1:].isdigit():
        return GraphFamilySpec(_SHORT[text[0]], (int(text[1:]),))
    raise UsageError(f"cannot parse graph family {text!r}")


def _int(s: str, ctx: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"bad integer {s!r} in family {ctx!r}") from None


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


# -------------------------------------------------------------- invariants

class GraphInvariants(NamedTuple):
    component_count: int
    betti_number: int
    max_degree: int
    isolated_vertex_count: int


def _count_components(n: int, pairs) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def components(g: Graph) -> list:
    """Vertex lists of the connected components, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def graph_invariants(g: Graph) -> GraphInvariants:
    cc = _count_components(g.n, g.edges)
    degs = g.degrees()
    return GraphInvariants(
        component_count=cc,
        betti_number=cc + len(g.edges) - g.n,
        max_degree=max(degs, default=0),
        isolated_vertex_count=sum(1 for d in degs if d == 0),
    )


def max_matching_size(g: Graph) -> int:
    import networkx as nx

    nxg = nx.Graph()
    nxg.add_edges_from(g.edges)
    return len(nx.max_weight_matching(nxg, maxcardinality=True))


def induced_by_edges(pairs: Iterable[Sequence[int]]) -> Graph:
    """G[A]: the graph spanned by an edge set, isolated vertices dropped.

    Vertices are renumbered in increasing order of their original labels.
    """
    pairs = list(pairs)
    verts = sorted({x for e in pairs for x in e})
    idx = {x: i for i, x in enumerate(verts)}
    es = []
    for u, v in pairs:
        a, b = idx[u], idx[v]
        es.append((a, b) if a < b else (b, a))
    es.sort()
    return Graph._trusted(len(verts), tuple(es))


def random_graph(n: int, p: float, rng) -> Graph:
    """G(n, p) drawn with a ``random.Random``-like generator."""
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


# ----------------------------------------------------------------- edge lists

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``."""
    lines = text.splitlines()
    body = [(i + 1, ln.split()) for i, ln in enumerate(lines)]
    while body and not body[-1][1]:
        body.pop()
    if not body:
        raise ParseError("line 1: empty input, expected 'n m'")
    lineno, head = body[0]
    n, m = _pair(head, lineno, "n m")
    if n < 0 or m < 0:
        raise ParseError(f"line {lineno}: counts must be nonnegative")
    rows = body[1:]
    if len(rows) != m:
        raise ParseError(f"line {lineno}: header declares {m} edges, found {len(rows)} edge lines")
    seen = set()
    for lineno, toks in rows:
        u, v = _pair(toks, lineno, "u v")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop {u} {v}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: endpoint out of range [0, {n})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
    return Graph._trusted(n, tuple(sorted(seen)))


def _pair(toks, lineno, what):
    if len(toks) != 2:
        raise ParseError(f"line {lineno}: expected '{what}', got {' '.join(toks)!r}")
    try:
        return int(toks[0]), int(toks[1])
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer token in {' '.join(toks)!r}") from None


def format_edge_list(g: Graph) -> str:
    return "\n".join([f"{g.n} {len(g.edges)}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"
