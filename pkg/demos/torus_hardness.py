"""Reduce the top coefficient of the torus modulo a prime.

The shift group Z_l x Z_l acts on the fractures of the l x l torus.  Its
fixed points come in a handful of uniform types, so the top coefficient
modulo l only depends on which of those type graphs satisfy the property.
A nonzero residue certifies hardness of exact counting.

Run with ``python demos/torus_hardness.py``.
"""

from __future__ import annotations

from collections import Counter

from edgesub import get_property, hardness_criterion, torus_fixed_points
from edgesub.coefficients import torus_type_coefficients, torus_top_coefficient_mod
from edgesub.fractures import fixed_point_family
from edgesub.properties import evaluate


def main() -> None:
    fixed = torus_fixed_points(3, verify=True)
    print(f"{len(fixed)} shift-invariant fractures of T_3")
    for tag, count in Counter(tag for _, tag in fixed).items():
        print(f"  {count} x {tag}")

    weights = torus_type_coefficients(3)
    print("reduced weight per type:", weights)

    for name in ("connected", "forest", "trivially-true", "eulerian"):
        phi = get_property(name)
        holds = [t for t in weights if evaluate(phi, fixed_point_family(t, 5))]
        residue = torus_top_coefficient_mod(phi, 5)
        verdict = hardness_criterion(phi, [3, 5])
        print(f"{name:15s} residue mod 5 = {residue}  types satisfied: {len(holds)}"
              f"  -> {verdict.tag}")


if __name__ == "__main__":
    main()
