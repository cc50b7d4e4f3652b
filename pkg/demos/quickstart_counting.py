"""Count k-edge subsets with a property three ways, then estimate one.

Run with ``python demos/quickstart_counting.py``.
"""

from __future__ import annotations

from edgesub import (CountQuery, count_exact_bruteforce, count_exact_via_basis,
                     count_exact_via_subs, decide_exists, fptras_estimate, get_property)
from edgesub.graphs import complete, petersen


def main() -> None:
    # Connected 3-edge subgraphs of K4: 12 paths, 4 triangles, 4 claws.
    q = CountQuery(get_property("connected"), 3, complete(4))
    print("connected, k=3, K4")
    print("  enumerating subsets      ", count_exact_bruteforce(q))
    print("  summing pattern counts   ", count_exact_via_subs(q))
    print("  homomorphism basis       ", count_exact_via_basis(q))

    # Forests of four edges in the Petersen graph.
    q = CountQuery(get_property("forest"), 4, petersen())
    print("forest, k=4, Petersen     ", count_exact_via_subs(q))

    # A planar property has both matching and star thresholds, so it admits
    # a sampling estimator.  K7 has 21 > 20 edges, so sampling is used.
    q = CountQuery(get_property("planar"), 4, complete(7))
    est = fptras_estimate(q, eps=0.2, delta=0.1, seed=7)
    print(f"planar, k=4, K7: estimate {float(est.estimate):.1f} from {est.samples} samples"
          f" ({est.path}); exact {count_exact_bruteforce(q)}")

    # Existence questions go through the matching or star criterion when possible.
    print("some 5-edge matching in K10?", decide_exists(get_property("matching"), 5, complete(10)))


if __name__ == "__main__":
    main()
