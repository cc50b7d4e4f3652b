"""Graph properties with metadata, the k-edge pattern enumerator and probing.

A property is a predicate on graphs plus optional declarations: the size from
which it holds on all matchings, the size from which it holds on all stars, a
treewidth bound B (false on every graph of treewidth >= B), and a list of
forbidden minors when it is minor-closed.  Predicates are applied to graphs
without isolated vertices but do not rely on that.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, NamedTuple, Optional

from .errors import CapacityError, MetadataError, UsageError
from .graphs import (Graph, biclique, complete, disjoint_union, graph_invariants, grid, matching,
                     path, star)
from .iso import are_isomorphic, canonical_form
from .minors import minor_contains, treewidth

__all__ = [
    "PropertySpec",
    "evaluate",
    "minor_free",
    "BUILTINS",
    "get_property",
    "builtin_properties",
    "load_properties",
    "graphs_with_k_edges",
    "graph_from_certificate",
    "enumerate_phi_k",
    "CriteriaProbe",
    "criteria_probe",
    "DEFAULT_PHI_K_CAP",
    "THEOREM_BUILTINS",
    "is_connected",
    "is_forest",
    "is_matching",
    "is_star",
    "is_eulerian",
    "is_hamiltonian",
    "is_claw_free",
    "is_bipartite",
    "is_planar",
    "is_two_regular",
    "is_psi",
]

DEFAULT_PHI_K_CAP = 5
HAMILTONIAN_GUARD = 20


@dataclass(frozen=True)
class PropertySpec:
    name: str
    predicate: Callable[[Graph], bool] = field(compare=False)
    matching_threshold: Optional[int] = None
    star_threshold: Optional[int] = None
    treewidth_bound: Optional[int] = None
    forbidden_minors: Optional[tuple] = None
    description: str = field(default="", compare=False)

    @property
    def minor_closed(self) -> bool:
        return self.forbidden_minors is not None


def evaluate(phi: PropertySpec, g: Graph) -> bool:
    return bool(phi.predicate(g))


# ---------------------------------------------------------------- predicates

def is_connected(g: Graph) -> bool:
    return g.n <= 1 or graph_invariants(g).component_count == 1


def is_forest(g: Graph) -> bool:
    return graph_invariants(g).betti_number == 0


def is_matching(g: Graph) -> bool:
    return all(d <= 1 for d in g.degrees())


def is_star(g: Graph) -> bool:
    m = len(g.edges)
    return m >= 1 and is_connected(g) and max(g.degrees()) == m


def is_eulerian(g: Graph, every_component: bool = False) -> bool:
    """All degrees even; by default the graph must also be connected."""
    if any(d % 2 for d in g.degrees()):
        return False
    return every_component or is_connected(g)


def is_hamiltonian(g: Graph) -> bool:
    """Has a cycle through every vertex (so at least 3 vertices)."""
    n = g.n
    if n < 3 or min(g.degrees()) < 2 or not is_connected(g):
        return False
    if n > HAMILTONIAN_GUARD:
        raise CapacityError(f"Hamiltonicity guard is {HAMILTONIAN_GUARD} vertices, got {n}")
    nb = [0] * n
    for a, b in g.edges:
        nb[a] |= 1 << b
        nb[b] |= 1 << a
    # reach[mask] = bitset of end vertices of paths from 0 covering mask
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, 1 << n, 2):
        ends = reach[mask]
        if not ends:
            continue
        e = ends
        while e:
            v = (e & -e).bit_length() - 1
            e &= e - 1
            ext = nb[v] & ~mask
            while ext:
                w = (ext & -ext).bit_length() - 1
                ext &= ext - 1
                reach[mask | (1 << w)] |= 1 << w
    return bool(reach[(1 << n) - 1] & nb[0])


def is_claw_free(g: Graph) -> bool:
    adj = g.adj
    for v in range(g.n):
        nbrs = sorted(adj[v])
        if len(nbrs) < 3:
            continue
        for a, b, c in combinations(nbrs, 3):
            if b not in adj[a] and c not in adj[a] and c not in adj[b]:
                return False
    return True


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
    return True


_K5 = complete(5)
_K33 = biclique(3, 3)


def is_planar(g: Graph) -> bool:
    return not minor_contains(_K5, g) and not minor_contains(_K33, g)


def is_two_regular(g: Graph) -> bool:
    return all(d == 2 for d in g.degrees())


def _is_perfect_matching_graph(g: Graph) -> bool:
    return is_matching(g) and g.n == 2 * len(g.edges)


def is_psi(g: Graph) -> bool:
    """True on perfect matchings, and on grid-plus-star when #E = 3k^2."""
    if _is_perfect_matching_graph(g):
        return True
    m = len(g.edges)
    k = math.isqrt(m // 3)
    if k < 1 or 3 * k * k != m:
        return False
    target = disjoint_union(grid(k), star(k * k + 2 * k))
    return are_isomorphic(g, target, max_component=max(16, k * k + 2 * k + 1))


# -------------------------------------------------------------- constructors

def _stripped_is_matching(f: Graph) -> bool:
    return is_matching(f)


def _is_star_plus_isolated(f: Graph) -> bool:
    s = f.strip_isolated()
    return not s.edges or is_star(s)


def minor_free(name: str, minors) -> PropertySpec:
    """The property "no graph in ``minors`` is a minor".

    Matching and star thresholds follow from the list: M_j avoids every
    listed minor for all j iff no listed graph is a matching plus isolated
    vertices, and likewise for stars.
    """
    minors = tuple(minors)
    if not minors:
        raise UsageError("a minor-free property needs at least one forbidden minor")

    def pred(g: Graph) -> bool:
        return not any(minor_contains(f, g) for f in minors)

    match = None if any(_stripped_is_matching(f) for f in minors) else 1
    st = None if any(_is_star_plus_isolated(f) for f in minors) else 1
    return PropertySpec(name, pred, match, st, None, minors,
                        f"no minor among {len(minors)} forbidden graph(s)")


def _always(_g: Graph) -> bool:
    return True


def _never(_g: Graph) -> bool:
    return False


def _eulerian_components(g: Graph) -> bool:
    return is_eulerian(g, every_component=True)


def builtin_properties() -> dict:
    specs = [
        PropertySpec("trivially-true", _always, 1, 1, None, (), "every graph"),
        PropertySpec("trivially-false", _never, None, None, 0, None, "no graph"),
        PropertySpec("connected", is_connected, None, 1, None, None, "connected"),
        PropertySpec("forest", is_forest, 1, 1, 2, (complete(3),), "acyclic"),
        PropertySpec("matching", is_matching, 1, None, 2, (path(2),), "maximum degree at most one"),
        PropertySpec("star", is_star, None, 1, 2, None, "a star K_{1,j}"),
        PropertySpec("eulerian", is_eulerian, None, None, None, None,
                     "connected with all degrees even"),
        PropertySpec("eulerian-components", _eulerian_components, None, None, None, None,
                     "all degrees even"),
        PropertySpec("hamiltonian", is_hamiltonian, None, None, None, None,
                     "has a Hamiltonian cycle"),
        PropertySpec("claw-free", is_claw_free, 1, None, None, None, "no induced K_{1,3}"),
        PropertySpec("bipartite", is_bipartite, 1, 1, None, None, "2-colourable"),
        PropertySpec("planar", is_planar, 1, 1, None, (_K5, _K33), "no K_5 or K_{3,3} minor"),
        PropertySpec("two-regular", is_two_regular, None, None, 3, None, "every degree is two"),
        PropertySpec("psi", is_psi, 1, None, None, None,
                     "perfect matching, or grid plus star on 3k^2 edges"),
    ]
    out = {s.name: s for s in specs}
    out["acyclic"] = out["forest"]
    return out


BUILTINS = builtin_properties()

# the properties every cross-check iterates over (aliases and variants excluded)
THEOREM_BUILTINS = tuple(n for n in BUILTINS if n not in ("acyclic", "eulerian-components"))


def get_property(name: str, extra: Optional[dict] = None) -> PropertySpec:
    table = dict(BUILTINS)
    if extra:
        table.update(extra)
    if name not in table:
        raise UsageError(f"unknown property {name!r}; known: {', '.join(sorted(table))}")
    return table[name]


def _graph_from_json(obj) -> Graph:
    if isinstance(obj, dict):
        return Graph(obj["n"], obj["edges"])
    edges = [tuple(e) for e in obj]
    n = max((max(e) for e in edges), default=-1) + 1
    return Graph(n, edges)


def load_properties(path: str) -> dict:
    """Read custom minor-free properties from JSON.

    Format: {"properties": [{"name": ..., "forbidden_minors": [minor, ...]}]}
    where each minor is an edge list or {"n": ..., "edges": [...]}.
    """
    with open(path) as fh:
        data = json.load(fh)
    out = {}
    for entry in data.get("properties", []):
        minors = [_graph_from_json(m) for m in entry["forbidden_minors"]]
        out[entry["name"]] = minor_free(entry["name"], minors)
    return out


# ---------------------------------------------------------------- enumeration

def graph_from_certificate(cert: tuple) -> Graph:
    """The canonical representative encoded by a canonical form."""
    parts = [Graph(n, es) for n, es in cert]
    return disjoint_union(*parts)


def _extensions(g: Graph):
    n = g.n
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                yield Graph(n, g.edges + ((u, v),))
    for u in range(n):
        yield Graph(n + 1, g.edges + ((u, n),))
    yield Graph(n + 2, g.edges + ((n, n + 1),))


@lru_cache(maxsize=None)
def graphs_with_k_edges(k: int) -> tuple:
    """Canonical representatives of all k-edge graphs without isolated vertices.

    Built by augmentation: removing any edge from a k-edge graph and dropping
    the vertices it isolates leaves a (k-1)-edge graph, so adding an edge in
    every possible position (between old vertices, to one new vertex, or to
    two new vertices) reaches every class.
    """
    if k < 0:
        raise UsageError("k must be nonnegative")
    if k == 0:
        return (Graph(0),)
    seen = {}
    for g in graphs_with_k_edges(k - 1):
        for ext in _extensions(g):
            cert = canonical_form(ext)
            if cert not in seen:
                seen[cert] = graph_from_certificate(cert)
    return tuple(seen[c] for c in sorted(seen, key=lambda c: (sum(n for n, _ in c), c)))


def enumerate_phi_k(phi: PropertySpec, k: int, cap: int = DEFAULT_PHI_K_CAP) -> list:
    """Isomorphism classes of k-edge graphs without isolated vertices satisfying phi."""
    if k > cap:
        raise CapacityError(f"k = {k} exceeds the pattern enumeration cap {cap}")
    return [g for g in graphs_with_k_edges(k) if evaluate(phi, g)]


# ------------------------------------------------------------------- probing

class CriteriaProbe(NamedTuple):
    matching_holds_from: Optional[int]
    star_holds_from: Optional[int]
    observed_tw_max: Optional[int]


def _holds_from(values: list) -> Optional[int]:
    """Smallest c with values[j-1] true for all c <= j <= len(values)."""
    if not values or not values[-1]:
        return None
    c = len(values)
    while c > 1 and values[c - 2]:
        c -= 1
    return c


def criteria_probe(phi: PropertySpec, bound: int = 50, tw_k: int = 4) -> CriteriaProbe:
    """Empirical matching/star thresholds and treewidth up to ``bound``.

    ``observed_tw_max`` is the largest treewidth among satisfying matchings,
    stars and k-edge patterns for k <= ``tw_k``.  Declared metadata that
    contradicts the probe raises MetadataError.
    """
    if not 1 <= bound <= 50:
        raise UsageError("probe bound must lie in [1, 50]")
    mvals = [evaluate(phi, matching(j)) for j in range(1, bound + 1)]
    svals = [evaluate(phi, star(j)) for j in range(1, bound + 1)]
    mfrom, sfrom = _holds_from(mvals), _holds_from(svals)
    tws = [1 for v in mvals + svals if v]
    for k in range(1, min(tw_k, bound) + 1):
        tws.extend(treewidth(g) for g in enumerate_phi_k(phi, k, cap=max(k, DEFAULT_PHI_K_CAP)))
    tw_max = max(tws) if tws else None
    probe = CriteriaProbe(mfrom, sfrom, tw_max)
    _check_declared(phi, probe, bound)
    return probe


def _check_declared(phi: PropertySpec, probe: CriteriaProbe, bound: int) -> None:
    for label, declared, seen in (("matching", phi.matching_threshold, probe.matching_holds_from),
                                  ("star", phi.star_threshold, probe.star_holds_from)):
        if declared is None or declared > bound:
            continue
        if seen is None or seen > declared:
            raise MetadataError(
                f"{phi.name}: declared {label} threshold {declared}, probe found {seen}")
    b = phi.treewidth_bound
    if b is not None and probe.observed_tw_max is not None and probe.observed_tw_max >= b:
        raise MetadataError(
            f"{phi.name}: declared treewidth bound {b}, observed {probe.observed_tw_max}")
