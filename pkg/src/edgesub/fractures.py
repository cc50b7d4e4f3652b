"""Fractures, their lattice, the Möbius function and fractured graphs.

A fracture of H assigns to every vertex v a partition of the edges incident
to v.  Blocks are sorted tuples of edge ids; blocks of a vertex are ordered by
their smallest edge id, which makes every fracture have one canonical form.
The torus helpers implement the shift action of Z_l^2 on fractures of T_l.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import CapacityError, UsageError
from .graphs import (Graph, cycle, disjoint_union, matching, path, scaled, sun, torus,
                     torus_directions)
from .iso import are_isomorphic

__all__ = [
    "Fracture",
    "FracturedGraph",
    "set_partitions",
    "bell",
    "bottom_fracture",
    "top_fracture",
    "fracture_count",
    "enumerate_fractures",
    "order_key",
    "refines",
    "mobius",
    "top_weight",
    "coarsenings",
    "fractured_graph",
    "apply_automorphism",
    "torus_shift_act",
    "uniform_torus_fracture",
    "torus_fixed_points",
    "FIXED_POINT_TYPES",
    "fixed_point_family",
    "DEFAULT_FRACTURE_BUDGET",
]

DEFAULT_FRACTURE_BUDGET = 5000


def _canon_partition(blocks) -> tuple:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


@dataclass(frozen=True)
class Fracture:
    """Per-vertex partitions of incident edges of ``base``."""

    base: Graph
    parts: tuple

    @classmethod
    def from_blocks(cls, base: Graph, parts) -> "Fracture":
        """Validate and canonicalize; ``parts[v]`` is an iterable of blocks."""
        parts = list(parts)
        if len(parts) != base.n:
            raise UsageError(f"fracture needs {base.n} vertex partitions, got {len(parts)}")
        out = []
        for v, blocks in enumerate(parts):
            blocks = [tuple(b) for b in blocks]
            if any(not b for b in blocks):
                raise UsageError(f"empty block at vertex {v}")
            flat = sorted(x for b in blocks for x in b)
            if flat != list(base.incident_edges(v)):
                raise UsageError(f"blocks at vertex {v} do not partition its incident edges")
            out.append(_canon_partition(blocks))
        return cls(base, tuple(out))

    def rgs(self) -> tuple:
        """Concatenated restricted-growth strings, vertex by vertex."""
        out = []
        for blocks in self.parts:
            where = {x: i for i, b in enumerate(blocks) for x in b}
            out.extend(where[x] for x in sorted(where))
        return tuple(out)

    def block_count(self) -> int:
        return sum(len(b) for b in self.parts)

    def to_json(self) -> list:
        return [[list(b) for b in blocks] for blocks in self.parts]

    @classmethod
    def from_json(cls, base: Graph, data) -> "Fracture":
        return cls.from_blocks(base, data)

    def __repr__(self) -> str:
        return f"Fracture({self.to_json()})"


def set_partitions(items: tuple) -> Iterator[tuple]:
    """All set partitions of ``items`` in restricted-growth-string order."""
    items = tuple(items)
    n = len(items)
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i: int, m: int):
        if i == n:
            blocks = [[] for _ in range(m + 1)]
            for x, b in zip(items, a):
                blocks[b].append(x)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(m + 2):
            a[i] = b
            yield from rec(i + 1, max(m, b))

    a[0] = 0
    yield from rec(1, 0)


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def bottom_fracture(h: Graph) -> Fracture:
    return Fracture(h, tuple(tuple((e,) for e in h.incident_edges(v)) for v in range(h.n)))


def top_fracture(h: Graph) -> Fracture:
    return Fracture(h, tuple((h.incident_edges(v),) if h.degree(v) else () for v in range(h.n)))


def fracture_count(h: Graph) -> int:
    return math.prod(bell(d) for d in h.degrees())


def order_key(r: Fracture) -> tuple:
    """Sort key of the linear extension: more blocks first, then by RGS."""
    return (-r.block_count(), r.rgs())


def enumerate_fractures(h: Graph, budget: int = DEFAULT_FRACTURE_BUDGET) -> list:
    """Every fracture of ``h`` exactly once, ordered by ``order_key``."""
    count = fracture_count(h)
    if count > budget:
        raise CapacityError(f"{count} fractures exceed budget {budget}")
    per_vertex = [[_canon_partition(p) for p in set_partitions(h.incident_edges(v))]
                  for v in range(h.n)]
    out = [Fracture(h, parts) for parts in product(*per_vertex)]
    out.sort(key=order_key)
    return out


def _same_base(s: Fracture, r: Fracture) -> None:
    if s.base != r.base:
        raise UsageError("fractures belong to different base graphs")


def refines(s: Fracture, r: Fracture) -> bool:
    """True iff every block of s lies inside a block of r (s <= r)."""
    _same_base(s, r)
    for sb, rb in zip(s.parts, r.parts):
        where = {x: i for i, b in enumerate(rb) for x in b}
        for b in sb:
            if len({where[x] for x in b}) != 1:
                return False
    return True


def mobius(s: Fracture, r: Fracture) -> int:
    """Möbius function of the fracture lattice, a product over vertices."""
    if not refines(s, r):
        raise UsageError("mobius(s, r) requires s to refine r")
    val = 1
    for sb, rb in zip(s.parts, r.parts):
        where = {x: i for i, b in enumerate(rb) for x in b}
        inside = [0] * len(rb)
        for b in sb:
            inside[where[b[0]]] += 1
        for nb in inside:
            val *= (-1) ** (nb - 1) * math.factorial(nb - 1)
    return val


def top_weight(s: Fracture) -> int:
    """mobius(s, top) via the direct product formula."""
    val = 1
    for blocks in s.parts:
        if blocks:
            k = len(blocks)
            val *= (-1) ** (k - 1) * math.factorial(k - 1)
    return val


def coarsenings(s: Fracture) -> Iterator[tuple]:
    """Pairs (r, mobius(s, r)) over every r >= s."""
    per_vertex = []
    for blocks in s.parts:
        opts = []
        for grouping in set_partitions(tuple(range(len(blocks)))):
            merged = _canon_partition(
                [tuple(x for i in grp for x in blocks[i]) for grp in grouping])
            mu = 1
            for grp in grouping:
                mu *= (-1) ** (len(grp) - 1) * math.factorial(len(grp) - 1)
            opts.append((merged, mu))
        per_vertex.append(opts)
    for combo in product(*per_vertex):
        mu = 1
        for _, m in combo:
            mu *= m
        yield Fracture(s.base, tuple(p for p, _ in combo)), mu


@dataclass(frozen=True)
class FracturedGraph:
    """The quotient of the matching on E(H) described by a fracture.

    ``provenance[x]`` is the (base vertex, block) of fractured vertex x,
    ``colouring[x]`` is its base vertex, and ``edge_to_base[i]`` is the base
    edge id of fractured edge i.
    """

    graph: Graph
    base: Graph
    fracture: Fracture
    provenance: tuple
    colouring: tuple
    edge_to_base: tuple


def fractured_graph(h: Graph, r: Fracture) -> FracturedGraph:
    if r.base != h:
        raise UsageError("fracture does not belong to this graph")
    prov, vid = [], {}
    for v, blocks in enumerate(r.parts):
        for b in blocks:
            for e in b:
                vid[(v, e)] = len(prov)
            prov.append((v, b))
    pairs = []
    for e, (a, b) in enumerate(h.edges):
        x, y = vid[(a, e)], vid[(b, e)]
        pairs.append(((x, y) if x < y else (y, x), e))
    g = Graph(len(prov), [p for p, _ in pairs])
    to_base = [0] * len(pairs)
    for p, e in pairs:
        to_base[g.edge_id(*p)] = e
    return FracturedGraph(g, h, r, tuple(prov), tuple(v for v, _ in prov), tuple(to_base))


# ------------------------------------------------------------ group actions

def apply_automorphism(r: Fracture, perm) -> Fracture:
    """Transport ``r`` along a vertex automorphism of its base graph."""
    h = r.base
    perm = tuple(perm)
    emap = []
    for u, v in h.edges:
        a, b = perm[u], perm[v]
        if not h.has_edge(a, b):
            raise UsageError("permutation is not an automorphism of the base graph")
        emap.append(h.edge_id(a, b))
    new = [None] * h.n
    for v, blocks in enumerate(r.parts):
        new[perm[v]] = _canon_partition([[emap[e] for e in b] for b in blocks])
    return Fracture(h, tuple(new))


def _torus_side(h: Graph) -> int:
    l = math.isqrt(h.n)
    if l < 3 or l * l != h.n or h != torus(l):
        raise UsageError("base graph is not a generated torus")
    return l


def torus_shift_act(shift, r: Fracture) -> Fracture:
    """The shift (a, b) moves the partition at (i, j) to (i+a, j+b)."""
    l = _torus_side(r.base)
    a, b = shift
    perm = [((i + a) % l) * l + (j + b) % l for i in range(l) for j in range(l)]
    return apply_automorphism(r, perm)


FIXED_POINT_TYPES = (
    "matching",
    "matching-and-cycles",
    "wedge-packing",
    "cycle-packing-I",
    "cycle-packing-II",
    "sun-packing",
    "torus",
)


def _uniform_type(blocks) -> str:
    sizes = sorted(len(b) for b in blocks)
    if sizes == [1, 1, 1, 1]:
        return "matching"
    if sizes == [4]:
        return "torus"
    if sizes == [1, 3]:
        return "sun-packing"
    pairs = [set(b) for b in blocks if len(b) == 2]
    straight = [p for p in pairs if p in ({"u", "d"}, {"l", "r"})]
    if sizes == [1, 1, 2]:
        return "matching-and-cycles" if straight else "wedge-packing"
    return "cycle-packing-I" if straight else "cycle-packing-II"


def uniform_torus_fracture(l: int, label_blocks) -> Fracture:
    """The fracture with the same direction partition at every vertex."""
    dirs = torus_directions(l)
    h = torus(l)
    return Fracture.from_blocks(h, [[[dv[d] for d in b] for b in label_blocks] for dv in dirs])


def fixed_point_family(tag: str, l: int) -> Graph:
    """The graph each uniform fixed-point type should induce on T_l."""
    builders = {
        "matching": lambda: matching(2 * l * l),
        "matching-and-cycles": lambda: disjoint_union(matching(l * l), scaled(l, cycle(l))),
        "wedge-packing": lambda: scaled(l * l, path(2)),
        "cycle-packing-I": lambda: scaled(2 * l, cycle(l)),
        "cycle-packing-II": lambda: scaled(l, cycle(2 * l)),
        "sun-packing": lambda: scaled(l, sun(l)),
        "torus": lambda: torus(l),
    }
    return builders[tag]()


def torus_fixed_points(l: int, verify: bool = False) -> list:
    """The 15 shift-invariant fractures of T_l with their type tags.

    Ordered by type, then by direction partition.  With ``verify`` each
    fractured graph is checked for isomorphism with its family graph.
    """
    if l < 3:
        raise UsageError("torus requires l >= 3")
    out = []
    for labels in set_partitions(("u", "d", "l", "r")):
        tag = _uniform_type(labels)
        out.append((FIXED_POINT_TYPES.index(tag), labels, tag))
    out.sort(key=lambda t: t[0])
    result = []
    h = torus(l)
    for _, labels, tag in out:
        r = uniform_torus_fracture(l, labels)
        if verify:
            fg = fractured_graph(h, r).graph
            if not are_isomorphic(fg, fixed_point_family(tag, l), max_component=max(l * l, 16)):
                raise AssertionError(f"fixed point {labels} is not of type {tag}")
        result.append((r, tag))
    return result
