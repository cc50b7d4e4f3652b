"""Evaluate the size-restricted Tutte polynomial and read off counts.

Run with ``python demos/tutte_special_points.py``.
"""

from __future__ import annotations

from fractions import Fraction

from edgesub import RationalPoint, classify_point, special_point_counters, tutte_k
from edgesub.graphs import petersen


def main() -> None:
    g = petersen()
    for k in (2, 4, 6):
        s = special_point_counters(g, k)
        print(f"Petersen, k={k}: {s.k_forests} forests, {s.chromatic_pairs} (subset, 3-colouring)"
              f" pairs, {s.acyclic_orientation_pairs} (subset, acyclic orientation) pairs")

    p = RationalPoint(Fraction(3), Fraction(3, 2))
    print(f"T^4 at (3, 3/2) on the hyperbola: {tutte_k(g, 4, p).value}")

    for x, y in ((2, 2), (1, 5), (2, 1), (3, 3), (Fraction(1, 2), Fraction(-1))):
        exact, approx = classify_point(RationalPoint(x, y))
        print(f"({x}, {y}): exact {exact.tag}, approximation {approx.tag}")


if __name__ == "__main__":
    main()
