from __future__ import annotations

import json
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgesub.errors import CapacityError, MetadataError, UsageError
from edgesub.graphs import (Graph, biclique, complete, cycle, disjoint_union, grid,
                            induced_by_edges, matching, path, petersen, scaled, star, torus)
from edgesub.iso import canonical_form
from edgesub.properties import (BUILTINS, THEOREM_BUILTINS, PropertySpec, criteria_probe,
                                enumerate_phi_k, evaluate, get_property, graphs_with_k_edges,
                                is_bipartite, is_claw_free, is_connected, is_eulerian, is_forest,
                                is_hamiltonian, is_planar, is_psi, load_properties, minor_free)


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, k in zip(pairs, keep) if k])


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


# ------------------------------------------------------------ predicates

@settings(max_examples=80, deadline=None)
@given(small_graphs())
def test_predicates_match_networkx(g):
    ng = to_nx(g)
    assert is_connected(g) == nx.is_connected(ng)
    assert is_forest(g) == nx.is_forest(ng)
    assert is_bipartite(g) == nx.is_bipartite(ng)
    assert is_eulerian(g) == (nx.is_eulerian(ng) if g.n else False)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_n=8))
def test_planarity_matches_networkx(g):
    assert is_planar(g) == nx.check_planarity(to_nx(g))[0]


def test_eulerian_examples():
    assert is_eulerian(torus(3))
    assert not is_eulerian(scaled(2, cycle(3)))
    assert is_eulerian(scaled(2, cycle(3)), every_component=True)
    assert evaluate(get_property("eulerian-components"), scaled(2, cycle(3)))


def _brute_hamiltonian(g: Graph) -> bool:
    if g.n < 3:
        return False
    from itertools import permutations
    for rest in permutations(range(1, g.n)):
        tour = (0,) + rest
        if all(g.has_edge(tour[i], tour[(i + 1) % g.n]) for i in range(g.n)):
            return True
    return False


@settings(max_examples=60, deadline=None)
@given(small_graphs(max_n=7))
def test_hamiltonian_matches_permutation_search(g):
    assert is_hamiltonian(g) == _brute_hamiltonian(g)


def test_hamiltonian_examples():
    assert is_hamiltonian(cycle(5))
    assert not is_hamiltonian(petersen())
    assert not is_hamiltonian(complete(2))
    assert is_hamiltonian(torus(3))


def _brute_claw_free(g: Graph) -> bool:
    for c in range(g.n):
        for a, b, d in combinations(sorted(g.adj[c]), 3):
            if not (g.has_edge(a, b) or g.has_edge(a, d) or g.has_edge(b, d)):
                return False
    return True


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_claw_free_matches_definition(g):
    assert is_claw_free(g) == _brute_claw_free(g)


def test_claw_free_examples():
    assert not is_claw_free(star(3))
    assert is_claw_free(complete(5))


def test_psi_examples():
    assert is_psi(matching(12))
    assert is_psi(matching(5))
    assert is_psi(disjoint_union(grid(2), star(8)))
    assert not is_psi(disjoint_union(grid(2), star(7)))
    assert not is_psi(path(3))


# ---------------------------------------------------------- enumeration

def test_graphs_with_k_edges_counts():
    assert [len(graphs_with_k_edges(k)) for k in range(1, 6)] == [1, 2, 5, 11, 26]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_graphs_with_k_edges_match_exhaustive_generation(k):
    seen = {}
    base = complete(2 * k)
    for es in combinations(base.edges, k):
        h = induced_by_edges(es)
        seen.setdefault(canonical_form(h), h)
    got = {canonical_form(h) for h in graphs_with_k_edges(k)}
    assert got == set(seen)


@pytest.mark.parametrize("name", THEOREM_BUILTINS)
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_phi_k_is_the_satisfying_subset(name, k):
    phi = get_property(name)
    got = enumerate_phi_k(phi, k)
    assert all(evaluate(phi, h) for h in got)
    rest = [h for h in graphs_with_k_edges(k) if h not in got]
    assert not any(evaluate(phi, h) for h in rest)


def test_phi_k_examples():
    assert enumerate_phi_k(get_property("matching"), 3) == [matching(3)]
    forests = enumerate_phi_k(get_property("forest"), 2)
    assert len(forests) == 2
    assert {canonical_form(h) for h in forests} == {canonical_form(matching(2)),
                                                     canonical_form(path(2))}
    conn = enumerate_phi_k(get_property("connected"), 3)
    assert {canonical_form(h) for h in conn} == {canonical_form(g) for g in
                                                  (path(3), complete(3), star(3))}


def test_phi_k_cap():
    with pytest.raises(CapacityError):
        enumerate_phi_k(get_property("forest"), 6)


# --------------------------------------------------------------- probing

@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_declared_metadata_is_consistent(name):
    criteria_probe(get_property(name), bound=12)


def test_probe_examples():
    p = criteria_probe(get_property("planar"), bound=12)
    assert (p.matching_holds_from, p.star_holds_from) == (1, 1)
    p = criteria_probe(get_property("two-regular"), bound=12)
    assert (p.matching_holds_from, p.star_holds_from) == (None, None)
    p = criteria_probe(get_property("psi"), bound=12)
    assert p.matching_holds_from == 1 and p.star_holds_from is None


def test_probe_rejects_wrong_metadata():
    bad = PropertySpec("liar", lambda g: False, 1, None, None, None, "")
    with pytest.raises(MetadataError):
        criteria_probe(bad, bound=5)


# ------------------------------------------------------------- registry

def test_unknown_property():
    with pytest.raises(UsageError):
        get_property("no-such-thing")


def test_minor_free_thresholds():
    assert minor_free("m2", [matching(2)]).matching_threshold is None
    assert minor_free("k3", [complete(3)]).matching_threshold == 1
    assert minor_free("k13", [star(3)]).star_threshold is None


def test_load_properties(tmp_path):
    path_ = tmp_path / "props.json"
    path_.write_text(json.dumps({"properties": [
        {"name": "outerplanar", "forbidden_minors": [
            [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
            {"n": 5, "edges": [[0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [1, 4]]}]}]}))
    props = load_properties(str(path_))
    phi = get_property("outerplanar", props)
    assert evaluate(phi, cycle(6))
    assert not evaluate(phi, complete(4))
    assert not evaluate(phi, biclique(2, 3))
    assert phi.forbidden_minors[1].n == 5
