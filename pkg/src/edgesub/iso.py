"""Canonical forms and isomorphism testing for small graphs.

The certificate of a graph is the sorted multiset of its component
certificates.  A connected component is labelled by an individualization and
refinement search: colour refinement splits vertices by neighbourhood
signatures, then each non-singleton cell is broken by trying its vertices in
turn.  The smallest relabelled edge list over all leaves is the certificate.
Twins (vertices with equal open or closed neighbourhoods) are swapped by an
automorphism that fixes the search node, so only one twin per class is tried.
"""

from __future__ import annotations

from .errors import CapacityError
from .graphs import Graph, components

__all__ = ["canonical_form", "are_isomorphic", "DEFAULT_MAX_COMPONENT"]

DEFAULT_MAX_COMPONENT = 16


def canonical_form(g: Graph, max_component: int = DEFAULT_MAX_COMPONENT) -> tuple:
    """Isomorphism-invariant and complete certificate of ``g``.

    Raises CapacityError if a connected component exceeds ``max_component``
    vertices.
    """
    certs = []
    for comp in components(g):
        if len(comp) > max_component:
            raise CapacityError(
                f"component with {len(comp)} vertices exceeds isomorphism guard {max_component}")
        certs.append(_component_cert(g, comp))
    certs.sort()
    return tuple(certs)


def are_isomorphic(g1: Graph, g2: Graph, max_component: int = DEFAULT_MAX_COMPONENT) -> bool:
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1, max_component) == canonical_form(g2, max_component)


def _component_cert(g: Graph, comp: list) -> tuple:
    n = len(comp)
    if n == 1:
        return (1, ())
    if n == 2:
        return (2, ((0, 1),))
    loc = {v: i for i, v in enumerate(comp)}
    adj = [frozenset(loc[w] for w in g.adj[v]) for v in comp]
    edges = [(loc[u], loc[v]) for u, v in g.edges if u in loc]
    by_deg: dict = {}
    for v in range(n):
        by_deg.setdefault(len(adj[v]), []).append(v)
    part = [by_deg[d] for d in sorted(by_deg)]
    best = [None]
    _search(_refine(part, adj), adj, edges, best)
    return (n, best[0])


def _refine(part: list, adj: list) -> list:
    """Equitable refinement; deterministic given the ordered partition."""
    n = len(adj)
    cell_of = [0] * n
    while True:
        for ci, cell in enumerate(part):
            for v in cell:
                cell_of[v] = ci
        new = []
        for cell in part:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict = {}
            for v in cell:
                sig = tuple(sorted(cell_of[w] for w in adj[v]))
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(part):
            return new
        part = new


def _search(part: list, adj: list, edges: list, best: list) -> None:
    target = None
    for cell in part:
        if len(cell) > 1 and (target is None or len(cell) < len(target)):
            target = cell
    if target is None:
        label = {cell[0]: i for i, cell in enumerate(part)}
        cert = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in edges))
        if best[0] is None or cert < best[0]:
            best[0] = cert
        return
    pos = part.index(target)
    tried = []
    for v in target:
        if any(adj[v] == adj[w] or adj[v] | {v} == adj[w] | {w} for w in tried):
            continue
        tried.append(v)
        rest = [w for w in target if w != v]
        child = part[:pos] + [[v], rest] + part[pos + 1:]
        _search(_refine(child, adj), adj, edges, best)
