"""Minor containment by delete/contract search, and exact small treewidth."""

from __future__ import annotations

from functools import lru_cache

from .errors import CapacityError
from .graphs import Graph, components, graph_invariants, induced_by_edges
from .iso import are_isomorphic, canonical_form

__all__ = ["minor_contains", "treewidth", "DEFAULT_MAX_HOST"]

DEFAULT_MAX_HOST = 14


def minor_contains(pattern: Graph, host: Graph, max_host: int = DEFAULT_MAX_HOST,
                   node_budget: int = 200_000) -> bool:
    """True iff ``pattern`` is a minor of ``host``.

    Cheap necessary conditions are checked first: vertex count, edge count
    and Betti number never grow under deletion or contraction.  A connected
    pattern is searched per host component.  Components that survive the
    cheap checks must have at most ``max_host`` vertices.
    """
    if pattern.n > host.n:
        return False
    p = pattern.strip_isolated()
    if not p.edges:
        return True
    search = _Search(p, max_host, node_budget)
    if len(components(p)) == 1:
        for comp in components(host):
            sub = _restrict(host, comp)
            if search.cheap_reject(sub):
                continue
            if search.run(sub):
                return True
        return False
    return search.run(host.strip_isolated())


def _restrict(g: Graph, verts: list) -> Graph:
    keep = set(verts)
    return induced_by_edges([e for e in g.edges if e[0] in keep])


class _Search:
    def __init__(self, p: Graph, max_host: int, budget: int):
        self.p = p
        self.pinv = graph_invariants(p)
        self.pdeg = sorted(p.degrees(), reverse=True)
        self.connected = self.pinv.component_count == 1
        self.max_host = max_host
        self.budget = budget
        self.memo: dict = {}

    def cheap_reject(self, h: Graph) -> bool:
        if h.n < self.p.n or len(h.edges) < len(self.p.edges):
            return True
        return graph_invariants(h).betti_number < self.pinv.betti_number

    def run(self, h: Graph) -> bool:
        if self.cheap_reject(h):
            return False
        if h.n > self.max_host:
            raise CapacityError(f"minor search host has {h.n} vertices, guard is {self.max_host}")
        key = canonical_form(h, self.max_host)
        if key in self.memo:
            return self.memo[key]
        self.budget -= 1
        if self.budget < 0:
            raise CapacityError("minor search node budget exhausted")
        self.memo[key] = ans = self._expand(h)
        return ans

    def _expand(self, h: Graph) -> bool:
        if len(h.edges) == len(self.p.edges):
            return are_isomorphic(h, self.p, self.max_host)
        if self.connected and graph_invariants(h).component_count > 1:
            return any(self.run(_restrict(h, c)) for c in components(h))
        for i, (u, v) in enumerate(h.edges):
            rest = h.edges[:i] + h.edges[i + 1:]
            if self.run(induced_by_edges(rest)):
                return True
            if self.run(_contract(rest, u, v)):
                return True
        return False


def _contract(rest: tuple, u: int, v: int) -> Graph:
    es = set()
    for a, b in rest:
        a = u if a == v else a
        b = u if b == v else b
        if a != b:
            es.add((a, b) if a < b else (b, a))
    return induced_by_edges(sorted(es))


def treewidth(g: Graph, max_vertices: int = 16) -> int:
    """Exact treewidth by dynamic programming over vertex subsets.

    Uses TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), where
    Q(S, v) is the set of vertices outside S and v reachable from v through S.
    """
    n = g.n
    if n > max_vertices:
        raise CapacityError(f"treewidth guard is {max_vertices} vertices, got {n}")
    if not g.edges:
        return 0
    nb = [0] * n
    for a, b in g.edges:
        nb[a] |= 1 << b
        nb[b] |= 1 << a
    full = (1 << n) - 1

    def q(s: int, v: int) -> int:
        seen, frontier, out = 1 << v, 1 << v, 0
        while frontier:
            x = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            for_n = nb[x] & ~seen
            seen |= for_n
            out |= for_n & ~s
            frontier |= for_n & s
        return bin(out).count("1")

    @lru_cache(maxsize=None)
    def tw(s: int) -> int:
        if s == 0:
            return -1
        best = n
        rest = s
        while rest:
            bit = rest & -rest
            rest ^= bit
            v = bit.bit_length() - 1
            val = max(tw(s ^ bit), q(s ^ bit, v))
            if val < best:
                best = val
        return best

    return tw(full)
