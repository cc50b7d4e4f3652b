"""Self-checks pairing each piece of the theory with an independent oracle.

Every suite returns a list of ``Check`` records; ``run_suite`` dispatches by
name.  Random corpora are drawn from ``random.Random(seed)`` so a suite is
reproducible from its seed alone.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from typing import NamedTuple

from .coefficients import (TAGS, classify_minor_closed, coefficient_table,
                           torus_top_coefficient_mod)
from .counting import (CountQuery, count_colourful, count_colourful_inclusion_exclusion,
                       count_exact_bruteforce, count_exact_via_subs, decide_with_branch)
from .errors import UsageError
from .fractures import (FIXED_POINT_TYPES, enumerate_fractures, torus_fixed_points,
                        torus_shift_act)
from .graphs import (Graph, biclique, complete, cycle, matching, path,
                     petersen, random_graph, star)
from .homs import (build_monotonicity_matrix, coloured_fracture, count_cp_homs,
                   extract_cp_hom_counts, random_coloured_graph, tensor_product)
from .properties import THEOREM_BUILTINS, get_property
from .tutte import (RationalPoint, aggregation_sides, classify_point, components_of_subset,
                    special_point_counters, tutte_classical_bruteforce, tutte_k_bruteforce,
                    tutte_k_delcon)

__all__ = [
    "Check",
    "SUITES",
    "PATTERNS",
    "TUTTE_POINTS",
    "run_suite",
    "suite_fixed_points",
    "suite_basis_identity",
    "suite_triangularity",
    "suite_tensor",
    "suite_extraction",
    "suite_inclusion_exclusion",
    "suite_residues",
    "suite_classifier",
    "suite_exact_counting",
    "suite_decision",
    "suite_tutte_identities",
    "suite_special_points",
    "suite_point_grid",
    "special_points_by_enumeration",
    "coloured_corpus",
    "expected_point_verdicts",
    "MINOR_CLOSED_TABLE",
]


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


# K_2, P_2, P_3, K_3, C_4, K_{1,3}
PATTERNS = {
    "K2": complete(2),
    "P2": path(2),
    "P3": path(3),
    "K3": complete(3),
    "C4": cycle(4),
    "K13": star(3),
}

TUTTE_POINTS = tuple(RationalPoint(x, y) for x, y in (
    (2, 3), (Fraction(1, 2), 3), (-1, Fraction(2, 3)), (3, -2), (Fraction(3, 2), 2)))


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


# ------------------------------------------------------------ fractures

def suite_fixed_points(ell: int = 3) -> list:
    """Uniform shift-invariant fractures of the torus and their seven types."""
    try:
        torus_fixed_points(ell, verify=True)
        iso_ok, iso_detail = True, "every fractured graph matches its type"
    except AssertionError as exc:
        iso_ok, iso_detail = False, str(exc)
    pts = torus_fixed_points(ell)
    mult = Counter(tag for _, tag in pts)
    want = dict(zip(FIXED_POINT_TYPES, (1, 2, 4, 1, 2, 4, 1)))
    checks = [
        Check(f"fixed-points l={ell}: count", len(pts) == 15, f"{len(pts)} fixed points"),
        Check(f"fixed-points l={ell}: type multiplicities", dict(mult) == want,
              ", ".join(f"{t}={mult[t]}" for t in FIXED_POINT_TYPES)),
        Check(f"fixed-points l={ell}: isomorphism types", iso_ok, iso_detail),
    ]
    fixed = all(torus_shift_act((a, b), r) == r
                for r, _ in pts for a in range(ell) for b in range(ell))
    checks.append(Check(f"fixed-points l={ell}: shift invariance", fixed, ""))
    return checks


# ------------------------------------------------------- basis machinery

def coloured_corpus(instances: int = 50, seed: int = 0, max_n: int = 10,
                    patterns=None) -> dict:
    """Random H-coloured graphs per pattern name, reproducible from the seed."""
    out = {}
    for i, (hname, h) in enumerate((patterns or PATTERNS).items()):
        rng = _rng(seed * 1000 + i)
        out[hname] = [random_coloured_graph(h, rng.randint(h.n, max_n),
                                            rng.uniform(0.3, 0.9), rng)
                      for _ in range(instances)]
    return out


def suite_basis_identity(instances: int = 50, seed: int = 0, patterns=None,
                         properties=THEOREM_BUILTINS) -> list:
    """Colourful count equals the coefficient-weighted cpHom sum."""
    patterns = patterns or PATTERNS
    corpus = coloured_corpus(instances, seed, patterns=patterns)
    checks = []
    for hname, h in patterns.items():
        frs = enumerate_fractures(h)
        fgs = [coloured_fracture(h, r) for r in frs]
        tables = {p: coefficient_table(get_property(p), h) for p in properties}
        bad = Counter()
        for g in corpus[hname]:
            cps = [count_cp_homs(f, g) for f in fgs]
            for p in properties:
                phi = get_property(p)
                direct = count_colourful(phi, h, g)
                via = sum(tables[p].values[r] * c for r, c in zip(frs, cps))
                bad[p] += direct != via
        for p in properties:
            checks.append(Check(f"basis-identity H={hname} phi={p}", bad[p] == 0,
                                f"{bad[p]} mismatches / {instances}"))
    return checks


def suite_triangularity(patterns=None) -> list:
    checks = []
    for hname, h in (patterns or PATTERNS).items():
        try:
            m = build_monotonicity_matrix(h)
            bad = m.triangularity_violations()
        except AssertionError as exc:
            checks.append(Check(f"triangularity H={hname}", False, str(exc)))
            continue
        checks.append(Check(f"triangularity H={hname}", not bad,
                            f"{len(m.fractures)}x{len(m.fractures)}, {len(bad)} violations"))
    return checks


def suite_tensor(instances: int = 100, seed: int = 0) -> list:
    """cpHom into a tensor product is the product of cpHom counts."""
    rng = _rng(seed)
    names = list(PATTERNS)
    bad = 0
    for _ in range(instances):
        h = PATTERNS[rng.choice(names)]
        frs = enumerate_fractures(h)
        f = coloured_fracture(h, rng.choice(frs))
        g1 = random_coloured_graph(h, rng.randint(h.n, 7), rng.uniform(0.3, 0.9), rng)
        g2 = random_coloured_graph(h, rng.randint(h.n, 7), rng.uniform(0.3, 0.9), rng)
        lhs = count_cp_homs(f, tensor_product(g1, g2))
        bad += lhs != count_cp_homs(f, g1) * count_cp_homs(f, g2)
    return [Check("tensor multiplicativity", bad == 0, f"{bad} mismatches / {instances}")]


def suite_extraction(instances: int = 50, seed: int = 0, patterns=None,
                     properties=THEOREM_BUILTINS) -> list:
    """cpHom counts recovered from colourful counts match direct counts."""
    patterns = patterns or PATTERNS
    corpus = coloured_corpus(instances, seed, patterns=patterns)
    checks = []
    for hname, h in patterns.items():
        m = build_monotonicity_matrix(h)
        tables = {p: coefficient_table(get_property(p), h) for p in properties}
        bad = recovered = 0
        for g in corpus[hname]:
            direct = {r: count_cp_homs(coloured_fracture(h, r), g) for r in m.fractures}
            for p in properties:
                res = extract_cp_hom_counts(h, get_property(p), g, matrix=m, table=tables[p])
                for r, v in res.cp_homs.items():
                    if v is not None:
                        recovered += 1
                        bad += v != direct[r]
        checks.append(Check(f"extraction H={hname}", bad == 0,
                            f"{bad} mismatches over {recovered} recovered counts"))
    return checks


def suite_inclusion_exclusion(instances: int = 10, seed: int = 0, patterns=None,
                              properties=THEOREM_BUILTINS) -> list:
    patterns = patterns or PATTERNS
    corpus = coloured_corpus(instances, seed, max_n=8, patterns=patterns)
    checks = []
    for hname, h in patterns.items():
        if len(h.edges) > 4:
            continue
        bad = 0
        for g in corpus[hname]:
            for p in properties:
                phi = get_property(p)
                bad += count_colourful(phi, h, g) != count_colourful_inclusion_exclusion(phi, h, g)
        checks.append(Check(f"inclusion-exclusion H={hname}", bad == 0,
                            f"{bad} mismatches / {instances * len(properties)}"))
    return checks


# --------------------------------------------------------- classifiers

def suite_residues(primes=(3, 5, 7)) -> list:
    checks = []
    for p in primes:
        r = torus_top_coefficient_mod(get_property("connected"), p)
        checks.append(Check(f"residue connected l={p}", r == 1, f"residue {r}"))
        r = torus_top_coefficient_mod(get_property("trivially-true"), p)
        checks.append(Check(f"residue trivially-true l={p}", r == 0, f"residue {r}"))
    r = torus_top_coefficient_mod(get_property("forest"), 5)
    checks.append(Check("residue forest l=5", r == 2, f"residue {r}"))
    return checks


# (label, forbidden minors, expected exact tag, ETH remark expected)
MINOR_CLOSED_TABLE = (
    ("planar", (complete(5), biclique(3, 3)), "#W[1]-hard", True),
    ("M2-minor-free", (matching(2),), "FPT", False),
    ("forest", (complete(3),), "#W[1]-hard", False),
    ("trivially-true", (), "FPT", False),
    ("P2-minor-free", (path(2),), "#W[1]-hard", False),
    ("M3-minor-free", (matching(3),), "FPT", False),
    ("K4-minor-free", (complete(4),), "#W[1]-hard", True),
    ("outerplanar", (complete(4), biclique(2, 3)), "#W[1]-hard", True),
    ("C4-minor-free", (cycle(4),), "#W[1]-hard", False),
    ("Petersen-minor-free", (petersen(),), "#W[1]-hard", True),
)


def suite_classifier() -> list:
    checks = []
    for label, minors, tag, eth in MINOR_CLOSED_TABLE:
        v = classify_minor_closed(minors)
        ok = (v.exact.tag == tag and v.approx.tag == "FPTRAS" and v.decision.tag == "FPT"
              and ("ETH" in v.exact.detail) == eth and v.exact.citation == "Thm 1.1(1)")
        checks.append(Check(f"classifier {label}", ok,
                            f"{v.exact.tag} / {v.approx.tag} / {v.decision.tag}"))
    return checks


# ------------------------------------------------------------ counting

def _host_corpus(count: int, seed: int, max_n: int = 9) -> list:
    rng = _rng(seed)
    return [random_graph(rng.randint(3, max_n), rng.uniform(0.2, 0.8), rng) for _ in range(count)]


def suite_exact_counting(instances: int = 30, seed: int = 0, max_k: int = 4,
                         properties=THEOREM_BUILTINS) -> list:
    hosts = _host_corpus(instances, seed)
    checks = []
    for p in properties:
        phi = get_property(p)
        bad = 0
        for g in hosts:
            for k in range(1, max_k + 1):
                q = CountQuery(phi, k, g)
                bad += count_exact_bruteforce(q) != count_exact_via_subs(q)
        checks.append(Check(f"exact counting phi={p}", bad == 0,
                            f"{bad} mismatches / {instances * max_k}"))
    return checks


def _decision_corpus(seed: int) -> list:
    named = [complete(5), cycle(6), star(5), matching(4), path(6), biclique(2, 4), petersen()]
    return named + _host_corpus(20, seed, max_n=8)


def suite_decision(seed: int = 0, max_k: int = 4, properties=THEOREM_BUILTINS) -> list:
    hosts = _decision_corpus(seed)
    checks = []
    for p in properties:
        phi = get_property(p)
        if (phi.matching_threshold is None and phi.star_threshold is None
                and phi.treewidth_bound is None):
            continue
        bad = 0
        branches = Counter()
        for g in hosts:
            for k in range(1, max_k + 1):
                ans, branch = decide_with_branch(phi, k, g)
                branches[branch] += 1
                bad += ans != (count_exact_bruteforce(CountQuery(phi, k, g)) > 0)
        checks.append(Check(f"decision phi={p}", bad == 0,
                            f"{bad} mismatches; branches {dict(branches)}"))
    return checks


# --------------------------------------------------------------- tutte

def suite_tutte_identities(instances: int = 200, seed: int = 0, max_k: int = 4) -> list:
    """Brute force against deletion-contraction, aggregation, and the k-sum."""
    rng = _rng(seed)
    graphs = [random_graph(rng.randint(2, 8), rng.uniform(0.2, 0.7), rng)
              for _ in range(instances)]
    ks = [rng.randint(0, max_k) for _ in graphs]
    bad_dc = bad_agg = 0
    for g, k in zip(graphs, ks):
        for p in TUTTE_POINTS:
            bad_dc += tutte_k_bruteforce(g, k, p).value != tutte_k_delcon(g, k, p).value
        p = TUTTE_POINTS[rng.randrange(len(TUTTE_POINTS))]
        lhs, rhs = aggregation_sides(g, k, p)
        bad_agg += lhs != rhs
    bad_sum = 0
    small = [g for g in graphs if len(g.edges) <= 12][:40]
    for g in small:
        for p in TUTTE_POINTS:
            total = sum(tutte_k_bruteforce(g, k, p).value for k in range(len(g.edges) + 1))
            bad_sum += total != tutte_classical_bruteforce(g, p)
    return [
        Check("tutte brute force = deletion-contraction", bad_dc == 0,
              f"{bad_dc} mismatches / {instances * len(TUTTE_POINTS)}"),
        Check("tutte aggregation identity", bad_agg == 0, f"{bad_agg} mismatches / {instances}"),
        Check("tutte sum over k = classical", bad_sum == 0,
              f"{bad_sum} mismatches / {len(small) * len(TUTTE_POINTS)}"),
    ]


def _proper_colourings(n: int, es, c: int) -> int:
    return sum(1 for col in product(range(c), repeat=n) if all(col[u] != col[v] for u, v in es))


def _acyclic_orientations(n: int, es) -> int:
    count = 0
    for flips in product((False, True), repeat=len(es)):
        arcs = [(v, u) if f else (u, v) for (u, v), f in zip(es, flips)]
        indeg = [0] * n
        out = [[] for _ in range(n)]
        for a, b in arcs:
            out[a].append(b)
            indeg[b] += 1
        stack = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    stack.append(w)
        count += seen == n
    return count


def special_points_by_enumeration(g: Graph, k: int, c: int = 3) -> tuple:
    """Direct counts matching ``special_point_counters`` field by field."""
    forests = chrom = ao = even_cc = even_b = 0
    for A in combinations(range(len(g.edges)), k):
        kA = components_of_subset(g, A)
        betti = k - g.n + kA
        forests += betti == 0
        even_cc += kA % 2 == 0
        even_b += betti % 2 == 0
    for A in combinations(g.edges, k):
        chrom += _proper_colourings(g.n, A, c)
        ao += _acyclic_orientations(g.n, A)
    return forests, chrom, ao, even_cc, even_b


def suite_special_points(instances: int = 40, seed: int = 0, max_k: int = 4) -> list:
    rng = _rng(seed)
    fields = ("k_forests", "chromatic_pairs", "acyclic_orientation_pairs",
              "even_component_subsets", "even_betti_subsets")
    bad = Counter()
    for _ in range(instances):
        g = random_graph(rng.randint(2, 7), rng.uniform(0.2, 0.7), rng)
        k = rng.randint(0, min(max_k, len(g.edges)))
        got = special_point_counters(g, k)
        want = special_points_by_enumeration(g, k)
        for f, a, b in zip(fields, got, want):
            bad[f] += a != b
    spot = special_point_counters(complete(3), 2).k_forests
    checks = [Check(f"special point {f}", bad[f] == 0, f"{bad[f]} mismatches / {instances}")
              for f in fields]
    checks.append(Check("special point spot K3 k=2 forests", spot == 3, f"{spot}"))
    return checks


def expected_point_verdicts(x: Fraction, y: Fraction) -> tuple:
    """Region membership written out case by case, independent of classify_point."""
    on_hyperbola = x != 1 and y == 1 + 1 / (x - 1)
    if x == 1 and y == 1:
        exact = "polynomial"
    elif on_hyperbola:
        exact = "polynomial"
    elif x == 1:
        exact = "#P-hard-but-FPT"
    else:
        exact = "#W[1]-hard"
    z = (x - 1) * (y - 1)
    if z < 0 or z > 1:
        approx = "open"
    elif x == 1 and y != 1:
        approx = "FPTRAS"
    else:
        approx = "FPRAS"
    return exact, approx


def suite_point_grid() -> list:
    xs = (Fraction(-1), Fraction(0), Fraction(1), Fraction(3, 2), Fraction(2))
    ys = (Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(3))
    bad = []
    for x in xs:
        for y in ys:
            e, a = classify_point(RationalPoint(x, y))
            if (e.tag, a.tag) != expected_point_verdicts(x, y):
                bad.append(f"({x},{y})")
    assert all(t in TAGS for t in ("FPRAS", "FPTRAS", "open"))
    return [Check("point classification 25-point grid", not bad,
                  f"{len(bad)} misclassified {' '.join(bad)}".strip())]


# ------------------------------------------------------------ dispatch

SUITES: dict = {
    "fixed-points": lambda a: suite_fixed_points(a.get("ell", 3)),
    "basis-identity": lambda a: suite_basis_identity(a.get("instances", 50), a.get("seed", 0)),
    "triangularity": lambda a: suite_triangularity(),
    "tensor": lambda a: suite_tensor(a.get("instances", 100), a.get("seed", 0)),
    "extraction": lambda a: suite_extraction(a.get("instances", 50), a.get("seed", 0)),
    "inclusion-exclusion": lambda a: suite_inclusion_exclusion(a.get("instances", 10),
                                                               a.get("seed", 0)),
    "residues": lambda a: suite_residues(),
    "classifier": lambda a: suite_classifier(),
    "exact-counting": lambda a: suite_exact_counting(a.get("instances", 30), a.get("seed", 0)),
    "decision": lambda a: suite_decision(a.get("seed", 0)),
    "tutte-identities": lambda a: suite_tutte_identities(a.get("instances", 200),
                                                         a.get("seed", 0)),
    "special-points": lambda a: suite_special_points(a.get("instances", 40), a.get("seed", 0)),
    "point-grid": lambda a: suite_point_grid(),
}


def run_suite(name: str, **options) -> list:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name]({k: v for k, v in options.items() if v is not None})
