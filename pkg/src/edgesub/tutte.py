"""The parameterized Tutte polynomial T^k_G(x, y) and its special points.

    T^k_G(x, y) = sum over k-subsets A of (x-1)^(k(A)-k(E)) (y-1)^(k(A)+k-#V)

where k(A) counts components of (V(G), A), isolated vertices included.  The
modified form sums (x-1)^k(A) (y-1)^(k(A)+|A|) and satisfies a
deletion-contraction recurrence in (G, k).  All arithmetic is exact; 0^0 = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Union

from .coefficients import Verdict
from .errors import CapacityError, UsageError
from .graphs import Graph, MultiGraph, _count_components

__all__ = [
    "RationalPoint",
    "TutteValue",
    "SpecialPoints",
    "components_of_subset",
    "tutte_k_bruteforce",
    "modified_k_bruteforce",
    "tutte_k_delcon",
    "modified_k_delcon",
    "tutte_k",
    "tutte_hat_bruteforce",
    "tutte_classical_bruteforce",
    "tutte_classical_delcon",
    "modified_classical_bruteforce",
    "aggregation_sides",
    "aggregation_identity_check",
    "special_point_counters",
    "tutte_x1_line",
    "classify_point",
    "classification_grid",
    "classification_svg",
    "DEFAULT_TUTTE_BUDGET",
]

DEFAULT_TUTTE_BUDGET = 10 ** 7

AnyGraph = Union[Graph, MultiGraph]


@dataclass(frozen=True)
class RationalPoint:
    x: Fraction
    y: Fraction

    def __init__(self, x, y):
        object.__setattr__(self, "x", _frac(x))
        object.__setattr__(self, "y", _frac(y))

    @property
    def z(self) -> Fraction:
        return (self.x - 1) * (self.y - 1)


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise UsageError("points must be exact rationals, not floats")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {v!r}: {exc}") from None


@dataclass(frozen=True)
class TutteValue:
    value: Fraction
    provenance: str  # "brute", "delcon" or "closed-form"

    def as_string(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


def _pairs(g: AnyGraph) -> list:
    if isinstance(g, MultiGraph):
        return [(u, v) for _, u, v in g.edges]
    return list(g.edges)


def components_of_subset(g: AnyGraph, A) -> int:
    """k(A): components of (V(g), A), isolated vertices included."""
    pairs = _pairs(g)
    return _count_components(g.n, [pairs[i] for i in A])


def _check_budget(m: int, k: int, budget: int) -> None:
    if math.comb(m, k) > budget:
        raise CapacityError(f"C({m},{k}) subsets exceed budget {budget}")


def tutte_k_bruteforce(g: AnyGraph, k: int, p: RationalPoint,
                       budget: int = DEFAULT_TUTTE_BUDGET) -> TutteValue:
    pairs = _pairs(g)
    m, n = len(pairs), g.n
    if k < 0 or k > m:
        return TutteValue(Fraction(0), "brute")
    _check_budget(m, k, budget)
    xm, ym = p.x - 1, p.y - 1
    kE = _count_components(n, pairs)
    total = Fraction(0)
    for A in combinations(pairs, k):
        kA = _count_components(n, A)
        e1, e2 = kA - kE, kA + k - n
        assert e1 >= 0 and e2 >= 0, "negative Tutte exponent"
        total += xm ** e1 * ym ** e2
    return TutteValue(total, "brute")


def modified_k_bruteforce(g: AnyGraph, k: int, p: RationalPoint,
                          budget: int = DEFAULT_TUTTE_BUDGET) -> Fraction:
    """sum over k-subsets of (x-1)^k(A) (y-1)^(k(A)+k)."""
    pairs = _pairs(g)
    if k < 0 or k > len(pairs):
        return Fraction(0)
    _check_budget(len(pairs), k, budget)
    xm, ym = p.x - 1, p.y - 1
    total = Fraction(0)
    for A in combinations(pairs, k):
        kA = _count_components(g.n, A)
        total += xm ** kA * ym ** (kA + k)
    return total


def modified_k_delcon(g: AnyGraph, k: int, p: RationalPoint, memo: bool = False,
                      node_budget: int = 10 ** 7) -> Fraction:
    """The modified value by deletion-contraction; valid at every point."""
    mg = g if isinstance(g, MultiGraph) else MultiGraph.from_graph(g)
    cache = {} if memo else None
    left = [node_budget]
    return _delcon(mg.n, [(u, v) for _, u, v in mg.edges], k, p.x - 1, p.y - 1, cache, left)


def _delcon(n: int, es: list, k: int, xm: Fraction, ym: Fraction, cache, left) -> Fraction:
    if k < 0 or k > len(es):
        return Fraction(0)
    if k == 0:
        return xm ** n * ym ** n
    left[0] -= 1
    if left[0] < 0:
        raise CapacityError("deletion-contraction node budget exhausted")
    if cache is not None:
        key = (n, tuple(sorted((min(a, b), max(a, b)) for a, b in es)), k)
        if key in cache:
            return cache[key]
    loop = next((i for i, (a, b) in enumerate(es) if a == b), None)
    if loop is not None:
        rest = es[:loop] + es[loop + 1:]
        # a loop never changes k(A); it only adds to |A|
        val = (_delcon(n, rest, k, xm, ym, cache, left)
               + ym * _delcon(n, rest, k - 1, xm, ym, cache, left))
    else:
        deg = [0] * n
        for a, b in es:
            deg[a] += 1
            deg[b] += 1
        i = max(range(len(es)), key=lambda j: (deg[es[j][0]] + deg[es[j][1]], -j))
        a, b = es[i]
        rest = es[:i] + es[i + 1:]
        lo, hi = min(a, b), max(a, b)

        def relabel(x: int) -> int:
            if x == hi:
                x = lo
            return x - 1 if x > hi else x

        contracted = [(relabel(u), relabel(v)) for u, v in rest]
        val = (_delcon(n, rest, k, xm, ym, cache, left)
               + ym * _delcon(n - 1, contracted, k - 1, xm, ym, cache, left))
    if cache is not None:
        cache[key] = val
    return val


def tutte_k_delcon(g: AnyGraph, k: int, p: RationalPoint, memo: bool = False) -> TutteValue:
    """T^k via the modified recurrence, converted back when x != 1 and y != 1."""
    if p.x == 1 or p.y == 1:
        return tutte_k_bruteforce(g, k, p)
    mod = modified_k_delcon(g, k, p, memo)
    kE = _count_components(g.n, _pairs(g))
    return TutteValue(mod / ((p.x - 1) ** kE * (p.y - 1) ** g.n), "delcon")


def tutte_k(g: AnyGraph, k: int, p: RationalPoint) -> TutteValue:
    """Dispatch to the cheapest exact route for the point."""
    if p.x == 1:
        return tutte_x1_line(g, k, p.y)
    return tutte_k_delcon(g, k, p)


def tutte_hat_bruteforce(g: Graph, k: int, p: RationalPoint) -> Fraction:
    """sum over k-subsets of (x-1)^(cc(G[A])-#V(G[A])) (y-1)^(cc(G[A])-#V(G[A])+k)."""
    pairs = _pairs(g)
    xm, ym = p.x - 1, p.y - 1
    total = Fraction(0)
    for A in combinations(pairs, k):
        verts = {x for e in A for x in e}
        idx = {x: i for i, x in enumerate(sorted(verts))}
        cc = _count_components(len(verts), [(idx[a], idx[b]) for a, b in A])
        e = cc - len(verts)
        total += xm ** e * ym ** (e + k)
    return total


def tutte_classical_bruteforce(g: AnyGraph, p: RationalPoint) -> Fraction:
    """The ordinary Tutte polynomial via the rank-nullity sum over all subsets."""
    pairs = _pairs(g)
    n = g.n
    rE = n - _count_components(n, pairs)
    total = Fraction(0)
    for size in range(len(pairs) + 1):
        for A in combinations(pairs, size):
            rA = n - _count_components(n, A)
            total += (p.x - 1) ** (rE - rA) * (p.y - 1) ** (size - rA)
    return total


def tutte_classical_delcon(g: AnyGraph, p: RationalPoint) -> Fraction:
    """The ordinary Tutte polynomial by the bridge/loop recurrence."""
    mg = g if isinstance(g, MultiGraph) else MultiGraph.from_graph(g)
    return _classical(mg.n, [(u, v) for _, u, v in mg.edges], p.x, p.y)


def _classical(n: int, es: list, x: Fraction, y: Fraction) -> Fraction:
    if not es:
        return Fraction(1)
    (a, b), rest = es[0], es[1:]
    if a == b:
        return y * _classical(n, rest, x, y)
    lo, hi = min(a, b), max(a, b)

    def relabel(v: int) -> int:
        if v == hi:
            v = lo
        return v - 1 if v > hi else v

    contracted = [(relabel(u), relabel(v)) for u, v in rest]
    if _count_components(n, rest) > _count_components(n, es):
        return x * _classical(n - 1, contracted, x, y)
    return _classical(n, rest, x, y) + _classical(n - 1, contracted, x, y)


def modified_classical_bruteforce(g: AnyGraph, p: RationalPoint) -> Fraction:
    """sum over all A of (x-1)^k(A) (y-1)^(k(A)+|A|)."""
    pairs = _pairs(g)
    total = Fraction(0)
    for size in range(len(pairs) + 1):
        for A in combinations(pairs, size):
            kA = _count_components(g.n, A)
            total += (p.x - 1) ** kA * (p.y - 1) ** (kA + size)
    return total


def aggregation_sides(g: AnyGraph, k: int, p: RationalPoint) -> tuple:
    """Both sides of sum_l C(#E-l, k-l) T~^l = sum_{|A|=k} T~(V(G), A)."""
    pairs = _pairs(g)
    m = len(pairs)
    lhs = sum((math.comb(m - l, k - l) * modified_k_delcon(g, l, p)
               for l in range(min(k, m) + 1)), Fraction(0))
    rhs = Fraction(0)
    for A in combinations(pairs, k):
        spanned = MultiGraph(g.n, [(i, u, v) for i, (u, v) in enumerate(A)])
        rhs += modified_classical_bruteforce(spanned, p)
    return lhs, rhs


def aggregation_identity_check(g: AnyGraph, k: int, p: RationalPoint) -> bool:
    lhs, rhs = aggregation_sides(g, k, p)
    return lhs == rhs


class SpecialPoints(NamedTuple):
    k_forests: int
    chromatic_pairs: int
    acyclic_orientation_pairs: int
    even_component_subsets: int
    even_betti_subsets: int


def _as_int(v: Fraction) -> int:
    assert v.denominator == 1, f"special-point value {v} is not an integer"
    return v.numerator


def special_point_counters(g: Graph, k: int, c: int = 3) -> SpecialPoints:
    """Counts read off Tutte evaluations.

    k_forests: acyclic k-subsets.  chromatic_pairs: pairs (A, proper
    c-colouring of (V, A)).  acyclic_orientation_pairs: pairs (A, acyclic
    orientation of A).  even_component_subsets: k-subsets with k(A) even.
    even_betti_subsets: k-subsets whose cycle space has even dimension.
    """
    if c < 2:
        raise UsageError("chromatic counter needs c >= 2")
    m = len(g.edges)
    kE = _count_components(g.n, g.edges)
    forests = tutte_k(g, k, RationalPoint(2, 1)).value
    chrom_pt = RationalPoint(1 - c, 0)
    chrom = sum((math.comb(m - l, k - l) * modified_k_delcon(g, l, chrom_pt)
                 for l in range(k + 1)), Fraction(0))
    ao_pt = RationalPoint(2, 0)
    ao = sum((math.comb(m - l, k - l) * tutte_k(g, l, ao_pt).value for l in range(k + 1)),
             Fraction(0))
    even_cc = (math.comb(m, k) + (-1) ** kE * tutte_k(g, k, RationalPoint(0, 2)).value) / 2
    even_b = (math.comb(m, k) + tutte_k(g, k, ao_pt).value) / 2
    return SpecialPoints(_as_int(forests), _as_int(chrom), _as_int(ao), _as_int(even_cc),
                         _as_int(even_b))


def tutte_x1_line(g: AnyGraph, k: int, y) -> TutteValue:
    """T^k at x = 1, where only subsets with k(A) = k(E) contribute.

    Such a subset touches every non-isolated vertex, so more than 2k
    non-isolated vertices force the value 0.
    """
    pairs = _pairs(g)
    touched = {x for e in pairs for x in e}
    if len(touched) > 2 * k:
        return TutteValue(Fraction(0), "closed-form")
    return tutte_k_bruteforce(g, k, RationalPoint(1, y))


def classify_point(p: RationalPoint) -> tuple:
    """(exact, approx) verdicts for evaluating T^k at p, parameterized by k."""
    x, y, z = p.x, p.y, p.z
    if x == 1 and y == 1:
        exact = Verdict("tutte point", "polynomial", "Thm 1.9", "(1,1)")
    elif z == 1:
        exact = Verdict("tutte point", "polynomial", "Thm 1.9", "hyperbola")
    elif x == 1:
        exact = Verdict("tutte point", "#P-hard-but-FPT", "Thm 1.9", "x=1 line")
    else:
        exact = Verdict("tutte point", "#W[1]-hard", "Thm 1.9")
    if 0 <= z <= 1:
        if x != 1 or y == 1:
            approx = Verdict("tutte point", "FPRAS", "Thm 1.10", "0<=z<=1")
        else:
            approx = Verdict("tutte point", "FPTRAS", "Thm 1.10", "x=1 line")
    else:
        approx = Verdict("tutte point", "open", "Thm 1.10", "outside 0<=z<=1")
    return exact, approx


def classification_grid(xs, ys) -> list:
    out = []
    for x in xs:
        for y in ys:
            e, a = classify_point(RationalPoint(x, y))
            out.append({"x": str(Fraction(x)), "y": str(Fraction(y)),
                        "exact": e.tag, "approx": a.tag})
    return out


_COLOURS = {"polynomial": "#2b8a3e", "#P-hard-but-FPT": "#1971c2", "#W[1]-hard": "#c92a2a"}


def classification_svg(lo: int = -3, hi: int = 4, steps: int = 70) -> str:
    """A raster of the exact classification, hatched where approximation is open."""
    size = 420
    cell = size / steps
    span = Fraction(hi - lo)
    rects = []
    for i in range(steps):
        for j in range(steps):
            x = lo + span * Fraction(2 * i + 1, 2 * steps)
            y = hi - span * Fraction(2 * j + 1, 2 * steps)
            e, a = classify_point(RationalPoint(x, y))
            fill = "#dddddd" if a.tag == "open" else "#ffffff"
            rects.append(f'<rect x="{i * cell:.2f}" y="{j * cell:.2f}" width="{cell:.2f}" '
                         f'height="{cell:.2f}" fill="{fill}"/>')
    # the measure-zero curves where the exact verdict changes
    def px(v):
        return float((Fraction(v) - lo) / span * size)

    def py(v):
        return float((hi - Fraction(v)) / span * size)

    curve = []
    for side in (1, -1):
        pts = []
        for t in range(1, 200):
            d = Fraction(t, 20) * side
            x, y = 1 + d, 1 + 1 / d
            if lo <= x <= hi and lo <= y <= hi:
                pts.append(f"{px(x):.2f},{py(y):.2f}")
        curve.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                     f'stroke="{_COLOURS["polynomial"]}" stroke-width="2"/>')
    line = (f'<line x1="{px(1):.2f}" y1="0" x2="{px(1):.2f}" y2="{size}" '
            f'stroke="{_COLOURS["#P-hard-but-FPT"]}" stroke-width="2"/>')
    dot = f'<circle cx="{px(1):.2f}" cy="{py(1):.2f}" r="4" fill="{_COLOURS["polynomial"]}"/>'
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">'
            + "".join(rects) + "".join(curve) + line + dot + "</svg>")
