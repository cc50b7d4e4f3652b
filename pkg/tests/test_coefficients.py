from __future__ import annotations

import json

import pytest

from edgesub.coefficients import (HARDNESS_CAVEAT, TAGS, CoefficientTable, Verdict,
                                  basis_expansion, classify_minor_closed, coefficient_table,
                                  fixed_point_top_coefficient, hardness_criterion, top_coefficient,
                                  torus_top_coefficient_mod, torus_type_coefficients)
from edgesub.errors import UsageError
from edgesub.fractures import (FIXED_POINT_TYPES, bottom_fracture, enumerate_fractures,
                               fixed_point_family, fractured_graph, mobius, refines, top_fracture)
from edgesub.graphs import biclique, complete, cycle, matching, path, petersen, star
from edgesub.homs import HColouredGraph
from edgesub.properties import THEOREM_BUILTINS, evaluate, get_property


def table_by_definition(phi, h):
    """a(r) = sum of mobius(s, r) over s <= r with phi on the fractured graph."""
    frs = enumerate_fractures(h)
    good = [s for s in frs if evaluate(phi, fractured_graph(h, s).graph)]
    return {r: sum(mobius(s, r) for s in good if refines(s, r)) for r in frs}


@pytest.mark.parametrize("name", THEOREM_BUILTINS)
@pytest.mark.parametrize("h", [complete(3), star(3), path(3)], ids=["K3", "K13", "P3"])
def test_table_matches_definition(name, h):
    phi = get_property(name)
    assert coefficient_table(phi, h).values == table_by_definition(phi, h)


@pytest.mark.parametrize("name", THEOREM_BUILTINS)
def test_top_coefficient_formula(name):
    phi = get_property(name)
    for h in (complete(3), cycle(4), star(3)):
        assert top_coefficient(phi, h) == coefficient_table(phi, h).top()


def test_k3_examples():
    k3 = complete(3)
    assert coefficient_table(get_property("trivially-true"), k3).top() == 0
    assert coefficient_table(get_property("trivially-false"), k3).nonzero() == {}
    assert coefficient_table(get_property("matching"), k3).top() == -1
    # connected fractured graphs of K3: the top (K3) and the three single splits (P3)
    assert coefficient_table(get_property("connected"), k3).top() == 1 * 1 + 3 * (-1)
    match = coefficient_table(get_property("matching"), k3)
    assert match.values[bottom_fracture(k3)] == 1


def test_table_json():
    tab = coefficient_table(get_property("forest"), complete(3))
    data = json.loads(tab.to_json())
    assert data["property"] == "forest"
    assert len(data["entries"]) == 8
    assert sum(e["coefficient"] for e in data["entries"]) == sum(tab.values.values())


def test_basis_expansion_on_identity_colouring():
    for name in ("connected", "forest", "claw-free"):
        phi = get_property(name)
        for h in (complete(3), star(3), path(3)):
            tab = coefficient_table(phi, h)
            # only E(H) itself is colourful in the identity-coloured H
            assert basis_expansion(tab, HColouredGraph.identity(h)) == int(evaluate(phi, h))


# ----------------------------------------------------------- mod p toys

def _rotations_c4():
    return [tuple((v + s) % 4 for v in range(4)) for s in range(4)]


@pytest.mark.parametrize("name", THEOREM_BUILTINS)
def test_c4_rotation_fixed_points_give_top_mod_2(name):
    phi = get_property(name)
    h = cycle(4)
    assert fixed_point_top_coefficient(phi, h, _rotations_c4(), 2) == top_coefficient(phi, h) % 2


def test_torus_type_coefficients():
    assert tuple(torus_type_coefficients(3).values()) == (-6, 4, 8, -1, -2, -4, 1)
    assert sum(torus_type_coefficients(5).values()) == 0
    exact = torus_type_coefficients(3, reduced=False)
    reduced = torus_type_coefficients(3)
    assert all((exact[t] - reduced[t]) % 3 == 0 for t in FIXED_POINT_TYPES)


@pytest.mark.parametrize("l", [3, 5, 7])
def test_torus_residues(l):
    assert torus_top_coefficient_mod(get_property("connected"), l) == 1
    assert torus_top_coefficient_mod(get_property("trivially-true"), l) == 0


def test_forest_and_eulerian_residues():
    forest = get_property("forest")
    want = sum(c * evaluate(forest, fixed_point_family(t, 5))
               for t, c in torus_type_coefficients(5).items()) % 5
    assert torus_top_coefficient_mod(forest, 5) == want == 2
    eul = get_property("eulerian")
    assert all(torus_top_coefficient_mod(eul, l) for l in (3, 5))


def test_residue_needs_a_prime():
    with pytest.raises(UsageError):
        torus_top_coefficient_mod(get_property("connected"), 9)


def test_hardness_criterion_verdicts():
    v = hardness_criterion(get_property("connected"), [3, 5, 7])
    assert v.tag == "#W[1]-hard"
    assert "Thm 1.7" in v.citation and HARDNESS_CAVEAT in v.citation
    v = hardness_criterion(get_property("trivially-true"), [3, 5])
    assert v.tag == "hardness-criterion-inconclusive"


# ----------------------------------------------------------- classifier

def test_minor_closed_cases():
    planar = classify_minor_closed([complete(5), biclique(3, 3)])
    assert planar.exact.tag == "#W[1]-hard" and "ETH" in planar.exact.detail
    assert planar.approx.tag == "FPTRAS" and planar.decision.tag == "FPT"
    assert planar.exact.citation == "Thm 1.1(1)"
    assert planar.approx.citation == "Thm 1.1(2)"
    assert planar.decision.citation == "Thm 1.1(3)"
    matchings = classify_minor_closed([path(2)])
    assert matchings.exact.tag == "#W[1]-hard" and "ETH" not in matchings.exact.detail
    assert classify_minor_closed([matching(2)]).exact.tag == "FPT"
    assert classify_minor_closed([]).exact.tag == "FPT"
    assert "ETH" in classify_minor_closed([petersen()]).exact.detail


def test_verdict_validation():
    with pytest.raises(ValueError):
        Verdict("exact count", "easy", "Thm 1.1(1)")
    with pytest.raises(ValueError):
        Verdict("exact count", "FPT", "")
    assert set(TAGS) >= {"polynomial", "FPT", "#W[1]-hard", "#P-hard-but-FPT",
                         "hardness-criterion-inconclusive"}
    v = Verdict("exact count", "FPT", "Thm 1.1(1)", "x")
    assert v.to_json() == {"facet": "exact count", "tag": "FPT", "citation": "Thm 1.1(1)",
                           "detail": "x"}


def test_table_is_keyed_by_every_fracture():
    h = star(3)
    tab = coefficient_table(get_property("star"), h)
    assert isinstance(tab, CoefficientTable)
    assert list(tab.values) == enumerate_fractures(h)
    assert tab.values[top_fracture(h)] == tab.top()
