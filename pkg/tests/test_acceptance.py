"""The fourteen numbered acceptance criteria, one or more tests each.

A summary line per criterion is printed at the end of the pytest run.
"""

from __future__ import annotations

import math
import statistics
import time
from fractions import Fraction

import pytest

from edgesub.coefficients import classify_minor_closed, torus_top_coefficient_mod
from edgesub.counting import (CountQuery, count_exact_bruteforce, fptras_estimate,
                              ramsey_surrogate, sample_size)
from edgesub.fractures import enumerate_fractures
from edgesub.graphs import biclique, complete, matching
from edgesub.homs import build_monotonicity_matrix
from edgesub.properties import get_property
from edgesub.tutte import RationalPoint, classify_point, special_point_counters
from edgesub.verify import (MINOR_CLOSED_TABLE, PATTERNS, suite_basis_identity,
                            suite_classifier, suite_decision, suite_exact_counting,
                            suite_extraction, suite_fixed_points, suite_inclusion_exclusion,
                            suite_residues, suite_special_points, suite_tensor,
                            suite_tutte_identities)


def assert_all(checks):
    failed = [c for c in checks if not c.passed]
    assert not failed, "\n".join(f"{c.name}: {c.detail}" for c in failed)
    assert checks


@pytest.mark.criterion(1, "homomorphism-basis identity")
def test_basis_identity_on_random_coloured_graphs():
    t0 = time.perf_counter()
    checks = suite_basis_identity(instances=50, seed=0)
    elapsed = time.perf_counter() - t0
    assert_all(checks)
    assert len(checks) == 6 * 13
    assert elapsed < 300


@pytest.mark.criterion(2, "matrix triangularity")
@pytest.mark.parametrize("name", list(PATTERNS))
def test_matrix_is_unit_upper_triangular(name):
    m = build_monotonicity_matrix(PATTERNS[name])
    n = len(m.fractures)
    assert n == len(enumerate_fractures(PATTERNS[name]))
    assert m.triangularity_violations() == []
    assert [m.entries[i][i] for i in range(n)] == [1] * n


@pytest.mark.criterion(3, "tensor multiplicativity")
def test_tensor_multiplicativity():
    assert_all(suite_tensor(instances=100, seed=0))


@pytest.mark.criterion(4, "monotonicity extraction")
def test_extraction_recovers_cp_hom_counts():
    assert_all(suite_extraction(instances=50, seed=0))


@pytest.mark.criterion(5, "inclusion-exclusion uncolouring")
def test_inclusion_exclusion_matches_colourful_count():
    checks = suite_inclusion_exclusion(instances=10, seed=0)
    assert_all(checks)
    assert len(checks) == len(PATTERNS)


@pytest.mark.criterion(6, "torus fixed points")
@pytest.mark.parametrize("ell", [3, 5])
def test_torus_fixed_points(ell):
    t0 = time.perf_counter()
    assert_all(suite_fixed_points(ell))
    assert time.perf_counter() - t0 < 60


@pytest.mark.criterion(7, "hardness criterion values")
def test_hardness_residues():
    assert_all(suite_residues((3, 5, 7)))
    assert torus_top_coefficient_mod(get_property("connected"), 5) == 1
    assert torus_top_coefficient_mod(get_property("forest"), 5) == 2


@pytest.mark.criterion(8, "minor-closed classifier")
def test_minor_closed_classifier():
    assert len(MINOR_CLOSED_TABLE) == 10
    assert_all(suite_classifier())
    planar = classify_minor_closed([complete(5), biclique(3, 3)])
    assert (planar.exact.tag, planar.approx.tag, planar.decision.tag) == (
        "#W[1]-hard", "FPTRAS", "FPT")
    assert "ETH" in planar.exact.detail
    assert classify_minor_closed([matching(2)]).exact.tag == "FPT"


@pytest.mark.criterion(9, "exact-counting agreement")
def test_bruteforce_equals_pattern_decomposition():
    assert_all(suite_exact_counting(instances=30, seed=0, max_k=4))


# (property, host, k); every host has more than r(4) = 20 edges so the sampler runs
FPTRAS_INSTANCES = [
    ("planar", complete(7), 4),
    ("forest", complete(7), 4),
    ("bipartite", complete(7), 4),
    ("forest", biclique(4, 6), 4),
    ("bipartite", complete(8), 4),
]


@pytest.mark.criterion(10, "FPTRAS statistics")
@pytest.mark.parametrize("prop,host,k", FPTRAS_INSTANCES,
                         ids=[f"{p}-{len(g.edges)}edges" for p, g, _ in FPTRAS_INSTANCES])
def test_fptras_statistics(prop, host, k):
    eps, delta, seeds = 0.2, 0.1, 200
    q = CountQuery(get_property(prop), k, host)
    truth = count_exact_bruteforce(q)
    t = math.ceil(math.comb(ramsey_surrogate(k), k) * 3 * math.log(2 / delta) / eps ** 2)
    assert sample_size(k, eps, delta) == t == 1088575
    cache: dict = {}
    estimates = []
    for seed in range(seeds):
        est = fptras_estimate(q, eps, delta, seed=seed, phi_cache=cache)
        assert est.path == "sampling" and est.samples == t
        estimates.append(est.estimate)
    failures = sum(abs(e - truth) > eps * truth for e in estimates)
    assert failures / seeds <= 0.2
    n_sets = math.comb(len(host.edges), k)
    p = Fraction(truth, n_sets)
    sigma_mean = math.sqrt(float(n_sets ** 2 * p * (1 - p) / t / seeds))
    mean = statistics.fmean(float(e) for e in estimates)
    assert abs(mean - truth) <= 3 * sigma_mean + 1e-9


@pytest.mark.criterion(11, "decision agreement")
def test_decision_agrees_with_counting():
    checks = suite_decision(seed=0, max_k=4)
    assert_all(checks)
    details = " ".join(c.detail for c in checks)
    assert "'matching'" in details and "'star'" in details and "'search'" in details


@pytest.mark.criterion(12, "Tutte oracle equivalence")
def test_tutte_identities():
    assert_all(suite_tutte_identities(instances=200, seed=0, max_k=4))


@pytest.mark.criterion(13, "special points")
def test_special_points_match_enumeration():
    assert_all(suite_special_points(instances=60, seed=0, max_k=4))
    assert special_point_counters(complete(3), 2).k_forests == 3


# hand-derived from the region definitions: P polynomial, F FPT but #P-hard,
# W #W[1]-hard; approximation R = FPRAS, T = FPTRAS, O = open
POINT_GRID = {
    # y:      -1        0         1         2         3
    "-1":  ["W O", "W O", "W R", "W O", "W O"],
    "0":   ["W O", "P R", "W R", "W O", "W O"],
    "1":   ["F T", "F T", "P R", "F T", "F T"],
    "3/2": ["W O", "W O", "W R", "W R", "P R"],
    "2":   ["W O", "W O", "W R", "P R", "W O"],
}
EXACT = {"P": "polynomial", "F": "#P-hard-but-FPT", "W": "#W[1]-hard"}
APPROX = {"R": "FPRAS", "T": "FPTRAS", "O": "open"}


@pytest.mark.criterion(14, "point classification")
def test_point_classification_grid():
    wrong = []
    for x, row in POINT_GRID.items():
        for y, code in zip(("-1", "0", "1", "2", "3"), row):
            e, a = code.split()
            got = classify_point(RationalPoint(Fraction(x), Fraction(y)))
            if (got[0].tag, got[1].tag) != (EXACT[e], APPROX[a]):
                wrong.append((x, y, got[0].tag, got[1].tag))
    assert sum(len(r) for r in POINT_GRID.values()) == 25
    assert wrong == []
