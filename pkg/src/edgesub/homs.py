"""Homomorphism, embedding, subgraph and colour-preserving homomorphism counts.

Also the colour-preserving tensor product, the matrix of cpHom counts between
fractured graphs, and recovery of cpHom counts from a colourful counting
oracle by triangular solving.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import CapacityError, UsageError
from .fractures import (DEFAULT_FRACTURE_BUDGET, Fracture, FracturedGraph, enumerate_fractures,
                        fractured_graph)
from .graphs import Graph, components

__all__ = [
    "HColouredGraph",
    "coloured_fracture",
    "random_coloured_graph",
    "count_homs",
    "count_embeddings",
    "count_automorphisms",
    "find_embedding",
    "count_subs",
    "count_cp_homs",
    "tensor_product",
    "MonotonicityMatrix",
    "build_monotonicity_matrix",
    "ExtractionResult",
    "extract_cp_hom_counts",
    "DEFAULT_MAX_PATTERN_VERTICES",
]

DEFAULT_MAX_PATTERN_VERTICES = 10


class HColouredGraph:
    """A graph together with a homomorphism into the pattern ``pattern``."""

    __slots__ = ("graph", "colouring", "pattern", "_classes", "_by_colour")

    def __init__(self, graph: Graph, colouring, pattern: Graph):
        colouring = tuple(int(c) for c in colouring)
        if len(colouring) != graph.n:
            raise UsageError("colouring must assign a pattern vertex to every vertex")
        if any(not 0 <= c < pattern.n for c in colouring):
            raise UsageError("colour outside the pattern's vertex range")
        for u, v in graph.edges:
            if not pattern.has_edge(colouring[u], colouring[v]):
                raise UsageError(f"edge ({u}, {v}) is not mapped to a pattern edge")
        self.graph = graph
        self.colouring = colouring
        self.pattern = pattern
        self._classes = None
        self._by_colour = None

    def edge_colour(self, i: int) -> int:
        u, v = self.graph.edges[i]
        return self.pattern.edge_id(self.colouring[u], self.colouring[v])

    def edge_classes(self) -> list:
        """For each pattern edge id, the list of edge ids carrying that colour."""
        if self._classes is None:
            cl = [[] for _ in self.pattern.edges]
            for i in range(len(self.graph.edges)):
                cl[self.edge_colour(i)].append(i)
            self._classes = cl
        return self._classes

    def vertices_of_colour(self, w: int) -> tuple:
        if self._by_colour is None:
            by = [[] for _ in range(self.pattern.n)]
            for x, c in enumerate(self.colouring):
                by[c].append(x)
            self._by_colour = tuple(tuple(b) for b in by)
        return self._by_colour[w]

    def without_colours(self, colours) -> "HColouredGraph":
        """Delete every edge whose colour is in ``colours``."""
        drop = set(colours)
        gone = [i for i in range(len(self.graph.edges)) if self.edge_colour(i) in drop]
        return HColouredGraph(self.graph.without_edges(gone), self.colouring, self.pattern)

    @classmethod
    def identity(cls, h: Graph) -> "HColouredGraph":
        return cls(h, range(h.n), h)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HColouredGraph) and self.graph == other.graph
                and self.colouring == other.colouring and self.pattern == other.pattern)

    def __hash__(self) -> int:
        return hash((self.graph, self.colouring, self.pattern))

    def __repr__(self) -> str:
        return f"HColouredGraph({self.graph!r}, colouring={list(self.colouring)})"


def random_coloured_graph(h: Graph, n: int, p: float, rng) -> HColouredGraph:
    """Random colouring of n vertices by V(h), then each allowed pair with probability p."""
    colour = [rng.randrange(h.n) for _ in range(n)]
    es = [(u, v) for u in range(n) for v in range(u + 1, n)
          if h.has_edge(colour[u], colour[v]) and rng.random() < p]
    return HColouredGraph(Graph(n, es), colour, h)


def coloured_fracture(h: Graph, r: Fracture) -> HColouredGraph:
    fg: FracturedGraph = fractured_graph(h, r)
    return HColouredGraph(fg.graph, fg.colouring, h)


# ------------------------------------------------------------- backtracking

def _bfs_order(f: Graph, comp: list) -> tuple:
    order, back = [], []
    pos = {}
    seen = {comp[0]}
    queue = [comp[0]]
    while queue:
        v = queue.pop(0)
        pos[v] = len(order)
        order.append(v)
        back.append([pos[w] for w in f.adj[v] if w in pos])
        for w in sorted(f.adj[v]):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order, back


def _enumerate_maps(f: Graph, comp: list, g: Graph, allowed: Callable[[int], tuple],
                    injective: bool, visit: Callable[[list], None]) -> None:
    """Call ``visit(images)`` for every edge-preserving map of one component."""
    order, back = _bfs_order(f, comp)
    img = [0] * len(order)
    used = set()
    gadj = g.adj

    def rec(i: int):
        if i == len(order):
            visit(img)
            return
        if back[i]:
            first = img[back[i][0]]
            cands = gadj[first]
            for j in back[i][1:]:
                cands = cands & gadj[img[j]]
            ok = set(allowed(order[i]))
            cands = [x for x in sorted(cands) if x in ok]
        else:
            cands = allowed(order[i])
        for x in cands:
            if injective and x in used:
                continue
            img[i] = x
            if injective:
                used.add(x)
            rec(i + 1)
            if injective:
                used.discard(x)

    rec(0)


def _count_component(f, comp, g, allowed, injective=False) -> int:
    box = [0]

    def visit(_):
        box[0] += 1

    _enumerate_maps(f, comp, g, allowed, injective, visit)
    return box[0]


def _guard(f: Graph, limit: int) -> None:
    if f.n > limit:
        raise CapacityError(f"pattern has {f.n} vertices, guard is {limit}")


def count_homs(f: Graph, g: Graph, max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES) -> int:
    """|Hom(f, g)|, multiplicative over the components of f."""
    _guard(f, max_vertices)
    allv = tuple(range(g.n))
    total = 1
    for comp in components(f):
        total *= _count_component(f, comp, g, lambda _v: allv)
        if total == 0:
            return 0
    return total


def count_embeddings(f: Graph, g: Graph, max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES) -> int:
    """Number of injective homomorphisms from f to g.

    Each component's embeddings are grouped by image set, then components are
    combined by a dynamic program over the set of used host vertices.
    """
    _guard(f, max_vertices)
    if f.n > g.n:
        return 0
    allv = tuple(range(g.n))
    states = {0: 1}
    for comp in components(f):
        images: dict = {}

        def visit(img, images=images):
            mask = 0
            for x in img:
                mask |= 1 << x
            images[mask] = images.get(mask, 0) + 1

        _enumerate_maps(f, comp, g, lambda _v: allv, True, visit)
        nxt: dict = {}
        for used, cnt in states.items():
            for mask, c in images.items():
                if used & mask == 0:
                    key = used | mask
                    nxt[key] = nxt.get(key, 0) + cnt * c
        states = nxt
        if not states:
            return 0
    return sum(states.values())


def find_embedding(f: Graph, g: Graph, max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES):
    """Some injective homomorphism f -> g as a tuple of images, or None."""
    _guard(f, max_vertices)
    if f.n > g.n or len(f.edges) > len(g.edges):
        return None
    order, back = [], []
    for comp in components(f):
        o, b = _bfs_order(f, comp)
        shift = len(order)
        order.extend(o)
        back.extend([j + shift for j in bl] for bl in b)
    img = [0] * len(order)
    used = set()
    gadj = g.adj
    fdeg = [f.degree(v) for v in order]

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        if back[i]:
            cands = gadj[img[back[i][0]]]
            for j in back[i][1:]:
                cands = cands & gadj[img[j]]
            cands = sorted(cands)
        else:
            cands = range(g.n)
        for x in cands:
            if x in used or len(gadj[x]) < fdeg[i]:
                continue
            img[i] = x
            used.add(x)
            if rec(i + 1):
                return True
            used.discard(x)
        return False

    if not rec(0):
        return None
    out = [0] * f.n
    for v, x in zip(order, img):
        out[v] = x
    return tuple(out)


def count_automorphisms(h: Graph, max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES) -> int:
    return count_embeddings(h, h, max_vertices)


def count_subs(h: Graph, g: Graph, max_vertices: int = DEFAULT_MAX_PATTERN_VERTICES) -> int:
    """Number of subgraphs of g isomorphic to h, i.e. #Emb(h, g) / #Aut(h)."""
    emb = count_embeddings(h, g, max_vertices)
    if emb == 0:
        return 0
    aut = count_automorphisms(h, max_vertices)
    q, rem = divmod(emb, aut)
    assert rem == 0, "embedding count not divisible by automorphism count"
    return q


def _same_pattern(f: HColouredGraph, g: HColouredGraph) -> None:
    if f.pattern != g.pattern:
        raise UsageError("coloured graphs use different patterns")


def count_cp_homs(f: HColouredGraph, g: HColouredGraph) -> int:
    """Colour-preserving homomorphisms f -> g."""
    _same_pattern(f, g)
    fc = f.colouring
    total = 1
    for comp in components(f.graph):
        total *= _count_component(f.graph, comp, g.graph,
                                  lambda v: g.vertices_of_colour(fc[v]))
        if total == 0:
            return 0
    return total


def tensor_product(g1: HColouredGraph, g2: HColouredGraph) -> HColouredGraph:
    """Colour-agreeing pairs (x, y), adjacent iff both coordinates are."""
    _same_pattern(g1, g2)
    pairs = [(x, y) for x in range(g1.graph.n) for y in g2.vertices_of_colour(g1.colouring[x])]
    idx = {p: i for i, p in enumerate(pairs)}
    es = set()
    for x, x2 in g1.graph.edges:
        for y, y2 in g2.graph.edges:
            for a, b in (((x, y), (x2, y2)), ((x, y2), (x2, y))):
                if a in idx and b in idx:
                    i, j = idx[a], idx[b]
                    es.add((min(i, j), max(i, j)))
    g = Graph(len(pairs), es)
    return HColouredGraph(g, [g1.colouring[x] for x, _ in pairs], g1.pattern)


# --------------------------------------------------------------- the matrix

@dataclass(frozen=True)
class MonotonicityMatrix:
    """cpHom counts between all fractured graphs of ``base``.

    Rows and columns follow ``fractures``; ``entries[i][j]`` counts
    cpHom(fractures[i] -> fractures[j]).
    """

    base: Graph
    fractures: tuple
    entries: tuple

    def triangularity_violations(self) -> list:
        bad = []
        for i, row in enumerate(self.entries):
            for j, val in enumerate(row):
                if (i == j and val != 1) or (i > j and val != 0):
                    bad.append((i, j, val))
        return bad

    def to_json(self) -> str:
        return json.dumps({
            "base": self.base.to_json(),
            "fractures": [r.to_json() for r in self.fractures],
            "entries": [x for row in self.entries for x in row],
        })

    @classmethod
    def from_json(cls, text: str) -> "MonotonicityMatrix":
        d = json.loads(text)
        base = Graph(d["base"]["vertex_count"], d["base"]["edges"])
        frs = tuple(Fracture.from_json(base, r) for r in d["fractures"])
        n = len(frs)
        flat = d["entries"]
        return cls(base, frs, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def build_monotonicity_matrix(h: Graph,
                              budget: int = DEFAULT_FRACTURE_BUDGET) -> MonotonicityMatrix:
    frs = enumerate_fractures(h, budget)
    cols = [coloured_fracture(h, r) for r in frs]
    rows = tuple(tuple(count_cp_homs(a, b) for b in cols) for a in cols)
    m = MonotonicityMatrix(h, tuple(frs), rows)
    bad = m.triangularity_violations()
    if bad:
        raise AssertionError(f"matrix is not unit upper triangular: {bad[:5]}")
    return m


@dataclass(frozen=True)
class ExtractionResult:
    """Recovered values per fracture.

    ``products[r]`` is a(r) * cpHom(r -> g); ``cp_homs[r]`` is cpHom(r -> g)
    or None when the coefficient a(r) is zero and the count is unrecoverable.
    """

    products: dict
    cp_homs: dict
    coefficients: dict

    def unrecoverable(self) -> list:
        return [r for r, v in self.cp_homs.items() if v is None]


def extract_cp_hom_counts(h: Graph, phi, g: HColouredGraph,
                          budget: int = DEFAULT_FRACTURE_BUDGET,
                          matrix: Optional[MonotonicityMatrix] = None,
                          table=None) -> ExtractionResult:
    """Recover cpHom(fractured graph -> g) from colourful counts alone.

    The colourful count on g x_H F_s equals sum_r a(r) cpHom(F_r -> g) M[r, s],
    so the unknowns a(r) cpHom(F_r -> g) solve a unit triangular system.
    """
    from .coefficients import coefficient_table
    from .counting import count_colourful

    if g.pattern != h:
        raise UsageError("coloured graph uses a different pattern")
    m = matrix if matrix is not None else build_monotonicity_matrix(h, budget)
    tab = table if table is not None else coefficient_table(phi, h, budget)
    frs = m.fractures
    rhs = [count_colourful(phi, h, tensor_product(g, coloured_fracture(h, s))) for s in frs]
    x = [0] * len(frs)
    for j in range(len(frs)):
        acc = rhs[j]
        for i in range(j):
            if m.entries[i][j]:
                acc -= x[i] * m.entries[i][j]
        x[j] = acc  # diagonal entries are 1
    products, cps, coeffs = {}, {}, {}
    for r, val in zip(frs, x):
        a = tab.values[r]
        products[r] = val
        coeffs[r] = a
        if a == 0:
            if val != 0:
                raise AssertionError("nonzero product for a zero coefficient")
            cps[r] = None
        else:
            q, rem = divmod(val, a)
            if rem:
                raise AssertionError("recovered product not divisible by its coefficient")
            cps[r] = q
    return ExtractionResult(products, cps, coeffs)
