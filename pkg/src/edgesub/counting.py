"""Counting, approximating and deciding k-edge patterns with a property.

The quantity of interest is the number of k-edge subsets A of a host graph
whose spanned graph G[A] (isolated vertices dropped) satisfies phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

import numpy as np

from .errors import CapacityError, UsageError
from .graphs import Graph, graph_invariants, induced_by_edges, max_matching_size
from .fractures import set_partitions
from .homs import HColouredGraph, count_automorphisms, count_homs, count_subs, find_embedding
from .properties import DEFAULT_PHI_K_CAP, PropertySpec, enumerate_phi_k, evaluate

__all__ = [
    "CountQuery",
    "EstimateResult",
    "count_exact_bruteforce",
    "count_exact_via_subs",
    "count_exact_via_basis",
    "count_colourful",
    "count_colourful_inclusion_exclusion",
    "ramsey_surrogate",
    "sample_size",
    "fptras_constant",
    "fptras_estimate",
    "uniform_k_subset",
    "unrank_subset",
    "decide_exists",
    "decide_with_branch",
    "DEFAULT_SUBSET_BUDGET",
]

DEFAULT_SUBSET_BUDGET = 10 ** 8
DEFAULT_SAMPLE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class CountQuery:
    phi: PropertySpec
    k: int
    host: Graph
    mode: Optional[str] = None

    def __post_init__(self):
        if self.k < 1:
            raise UsageError("k must be at least 1")


def _holds(phi: PropertySpec, g: Graph, ids) -> bool:
    return evaluate(phi, induced_by_edges(g.edges[i] for i in ids))


def count_exact_bruteforce(q: CountQuery, budget: int = DEFAULT_SUBSET_BUDGET) -> int:
    """Enumerate every k-subset of edges and test phi on the spanned graph."""
    m = len(q.host.edges)
    total = math.comb(m, q.k)
    if total > budget:
        raise CapacityError(f"C({m},{q.k}) = {total} subsets exceed budget {budget}")
    es = q.host.edges
    return sum(1 for A in combinations(es, q.k) if evaluate(q.phi, induced_by_edges(A)))


def count_exact_via_subs(q: CountQuery, cap: int = DEFAULT_PHI_K_CAP) -> int:
    """Sum of subgraph counts over the k-edge patterns satisfying phi."""
    if q.k > len(q.host.edges):
        return 0
    return sum(count_subs(h, q.host) for h in enumerate_phi_k(q.phi, q.k, cap))


def count_exact_via_basis(q: CountQuery, cap: int = DEFAULT_PHI_K_CAP) -> int:
    """Subgraph counts rebuilt from homomorphism counts of quotient graphs.

    #Emb(H, G) = sum over partitions p of V(H) of mu(bottom, p) Hom(H/p, G),
    where quotients that merge adjacent vertices have no homomorphisms into
    a simple graph and drop out.
    """
    if q.k > len(q.host.edges):
        return 0
    total = Fraction(0)
    for h in enumerate_phi_k(q.phi, q.k, cap):
        emb = 0
        for blocks in set_partitions(tuple(range(h.n))):
            where = {v: i for i, b in enumerate(blocks) for v in b}
            if any(where[u] == where[v] for u, v in h.edges):
                continue
            quotient = Graph(len(blocks), {(min(where[u], where[v]), max(where[u], where[v]))
                                           for u, v in h.edges})
            mu = math.prod((-1) ** (len(b) - 1) * math.factorial(len(b) - 1) for b in blocks)
            emb += mu * count_homs(quotient, q.host)
        total += Fraction(emb, count_automorphisms(h))
    assert total.denominator == 1
    return total.numerator


def count_colourful(phi: PropertySpec, h: Graph, g: HColouredGraph,
                    budget: int = DEFAULT_SUBSET_BUDGET) -> int:
    """Edge sets with exactly one edge of every colour whose spanned graph satisfies phi."""
    if g.pattern != h:
        raise UsageError("coloured graph uses a different pattern")
    classes = g.edge_classes()
    total = math.prod(len(c) for c in classes)
    if total > budget:
        raise CapacityError(f"{total} colourful sets exceed budget {budget}")
    if total == 0:
        return 0
    es = g.graph.edges
    return sum(1 for pick in product(*classes)
               if evaluate(phi, induced_by_edges(es[i] for i in pick)))


def count_colourful_inclusion_exclusion(phi: PropertySpec, h: Graph, g: HColouredGraph,
                                        budget: int = DEFAULT_SUBSET_BUDGET) -> int:
    """Colourful count from uncoloured counts on g with colour classes deleted.

    A #E(H)-subset misses some colour unless it is colourful, so
    sum over J of (-1)^|J| times the count on g minus colours J isolates the
    colourful sets.
    """
    k = len(h.edges)
    total = 0
    for size in range(k + 1):
        for J in combinations(range(k), size):
            sub = g.without_colours(J).graph
            if len(sub.edges) < k:
                continue
            total += (-1) ** size * count_exact_bruteforce(CountQuery(phi, k, sub), budget)
    return total


# ---------------------------------------------------------------- sampling

def uniform_k_subset(m: int, k: int, seed) -> tuple:
    """A uniform k-subset of range(m) by a partial Fisher-Yates shuffle."""
    if not 0 <= k <= m:
        raise UsageError("need 0 <= k <= m")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    swapped: dict = {}
    out = []
    for i in range(k):
        j = int(rng.integers(i, m))
        out.append(swapped.get(j, j))
        swapped[j] = swapped.get(i, i)
    return tuple(sorted(out))


def unrank_subset(rank: int, m: int, k: int) -> tuple:
    """The k-subset of range(m) with the given colexicographic rank."""
    out = []
    c = m - 1
    for i in range(k, 0, -1):
        while math.comb(c, i) > rank:
            c -= 1
        out.append(c)
        rank -= math.comb(c, i)
        c -= 1
    return tuple(reversed(out))


def ramsey_surrogate(k: int) -> int:
    """C(2k-2, k-1), an upper bound on the diagonal Ramsey number R(k, k)."""
    return math.comb(2 * k - 2, k - 1)


def sample_size(k: int, eps: float, delta: float) -> int:
    r = ramsey_surrogate(k)
    return math.ceil(math.comb(r, k) * 3 * math.log(2 / delta) / eps ** 2)


def fptras_constant(phi: PropertySpec) -> Optional[int]:
    """max(c', 4) where c' covers both declared thresholds, or None."""
    if phi.matching_threshold is None or phi.star_threshold is None:
        return None
    return max(phi.matching_threshold, phi.star_threshold, 4)


@dataclass(frozen=True)
class EstimateResult:
    estimate: Fraction
    eps: float
    delta: float
    samples: int
    seed: Optional[int]
    path: str  # "exact", "sampling" or "treewidth"

    @property
    def exact_path(self) -> bool:
        return self.path != "sampling"


def fptras_estimate(q: CountQuery, eps: float, delta: float, seed: Optional[int] = None,
                    max_samples: int = DEFAULT_SAMPLE_BUDGET,
                    phi_cache: Optional[dict] = None) -> EstimateResult:
    """Relative-error estimate of the count with failure probability delta.

    Properties holding on all large matchings and stars use uniform sampling
    once the host has more than r(k) edges: a random k-set then satisfies
    phi with probability at least 1/C(r(k), k).  Properties with a treewidth
    bound use the per-pattern route with the failure budget split evenly.
    ``phi_cache`` memoizes phi per sampled subset and may be shared across
    calls on the same (phi, host, k).
    """
    if not (0 < eps < 1 and 0 < delta < 1):
        raise UsageError("eps and delta must lie in (0, 1)")
    phi, k, g = q.phi, q.k, q.host
    c = fptras_constant(phi)
    if c is None:
        if phi.treewidth_bound is None:
            raise UsageError(f"{phi.name} declares neither both criteria nor a treewidth bound")
        return _treewidth_route(q, eps, delta, seed)
    m = len(g.edges)
    if k < c or m <= ramsey_surrogate(k):
        return EstimateResult(Fraction(count_exact_bruteforce(q)), eps, delta, 0, seed, "exact")
    t = sample_size(k, eps, delta)
    if t > max_samples:
        raise CapacityError(f"{t} samples exceed budget {max_samples}")
    n_sets = math.comb(m, k)
    cache = phi_cache if phi_cache is not None else {}
    rng = np.random.default_rng(seed)
    hits = 0
    if n_sets < 2 ** 62:
        left = t
        while left:
            chunk = min(left, 1 << 20)
            left -= chunk
            draws = rng.integers(0, n_sets, size=chunk, dtype=np.int64)
            if n_sets <= 4 * chunk:
                counts = np.bincount(draws, minlength=n_sets)
                ranks = np.flatnonzero(counts)
                counts = counts[ranks]
            else:
                ranks, counts = np.unique(draws, return_counts=True)
            for rk, cnt in zip(ranks.tolist(), counts.tolist()):
                ok = cache.get(rk)
                if ok is None:
                    ok = cache[rk] = _holds(phi, g, unrank_subset(rk, m, k))
                hits += cnt if ok else 0
    else:
        for _ in range(t):
            hits += _holds(phi, g, uniform_k_subset(m, k, rng))
    return EstimateResult(Fraction(hits, t) * n_sets, eps, delta, t, seed, "sampling")


def _approx_subs(h: Graph, g: Graph, eps: float, delta: float) -> int:
    # stand-in for an (eps, delta) subgraph-count approximation of a
    # bounded-treewidth pattern; exact at this scale, so it never fails
    return count_subs(h, g)


def _treewidth_route(q: CountQuery, eps, delta, seed) -> EstimateResult:
    patterns = enumerate_phi_k(q.phi, q.k)
    if not patterns:
        return EstimateResult(Fraction(0), eps, delta, 0, seed, "treewidth")
    # a union bound over the patterns keeps the total failure probability at delta
    per_pattern = delta / len(patterns)
    total = sum(_approx_subs(h, q.host, eps, per_pattern) for h in patterns)
    return EstimateResult(Fraction(total), eps, delta, 0, seed, "treewidth")


# ---------------------------------------------------------------- decision

def decide_with_branch(phi: PropertySpec, k: int, g: Graph,
                       cap: int = DEFAULT_PHI_K_CAP) -> tuple:
    """(answer, branch) where branch is "matching", "star" or "search"."""
    if (phi.matching_threshold is None and phi.star_threshold is None
            and phi.treewidth_bound is None):
        raise UsageError(f"{phi.name} declares no criterion and no treewidth bound")
    if k < 1:
        raise UsageError("k must be at least 1")
    if phi.matching_threshold is not None and k >= phi.matching_threshold:
        if max_matching_size(g) >= k:
            return True, "matching"
    if phi.star_threshold is not None and k >= phi.star_threshold:
        if graph_invariants(g).max_degree >= k:
            return True, "star"
    if k > len(g.edges):
        return False, "search"
    for h in enumerate_phi_k(phi, k, cap):
        if find_embedding(h, g) is not None:
            return True, "search"
    return False, "search"


def decide_exists(phi: PropertySpec, k: int, g: Graph, cap: int = DEFAULT_PHI_K_CAP) -> bool:
    return decide_with_branch(phi, k, g, cap)[0]
