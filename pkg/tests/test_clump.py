import random

import pytest
from hypothesis import given, settings, strategies as st

from kforest.clump import brute_force_top_clump, is_clump, tight_set_from_root, top_clump
from kforest.errors import CapacityError, InputError
from kforest.exact import solve_kforest
from kforest.graph import ForestFamily, MultiGraph

from oracles import complete_graph, double_k4, random_multigraph


def forest_graph(g, fam):
    return g.subgraph(g.vertices(), fam.edges())


def test_tight_set_path_is_singleton():
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    fam = ForestFamily(2, {1: 1, 2: 1})
    assert tight_set_from_root(forest_graph(g, fam), 2, 1) == {1}


def test_tight_set_k4():
    g = complete_graph(4)
    fam = solve_kforest(g, 2)
    for r in range(4):
        assert tight_set_from_root(forest_graph(g, fam), 2, r) == {0, 1, 2, 3}


def test_tight_set_double_k4():
    g = double_k4()
    fam = solve_kforest(g, 2)
    assert len(fam) == 12
    assert tight_set_from_root(forest_graph(g, fam), 2, 5) == set(range(7))


def test_top_clump_examples():
    g = complete_graph(4)
    fam = solve_kforest(g, 2)
    report = top_clump(g, fam)
    assert report.edges == set(g.edge_ids())
    assert [c.vertices for c in report.components] == [(0, 1, 2, 3)]
    report.check(g, fam)

    path = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    assert top_clump(path, ForestFamily(1, {1: 1, 2: 1})).edges == {1, 2}
    assert top_clump(path, ForestFamily(2, {1: 1, 2: 1})).edges == set()


def test_top_clump_k4_with_pendant():
    g = complete_graph(4)
    pendant = g.add_vertex()
    g.add_edge(3, pendant)
    fam = solve_kforest(g, 2)
    assert len(fam) == 7
    k4 = set(range(1, 7))
    assert brute_force_top_clump(g, fam) == k4
    assert top_clump(g, fam).edges == k4


def test_brute_force_limit():
    g = MultiGraph(11)
    with pytest.raises(CapacityError):
        brute_force_top_clump(g, ForestFamily(1))


def test_is_clump_examples():
    g = complete_graph(4)
    fam = solve_kforest(g, 2)
    assert is_clump(g, fam, g.edge_ids())
    assert is_clump(g, fam, [])
    some = sorted(fam.edges())[:2]
    assert not is_clump(g, fam, some)
    with pytest.raises(InputError):
        is_clump(g, ForestFamily(2), [1])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_matches_subset_enumeration(seed, k):
    rng = random.Random(seed)
    g = random_multigraph(rng, 8, 20)
    fam = solve_kforest(g, k)
    # also probe non-maximal families
    if rng.random() < 0.5:
        for e in list(fam.assignment):
            if rng.random() < 0.3:
                fam.unassign(e)
    report = top_clump(g, fam)
    assert report.edges == brute_force_top_clump(g, fam)
    report.check(g, fam)
    assert is_clump(g, fam, report.edges)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_tight_set_independent_of_root(seed, k):
    rng = random.Random(seed)
    g = random_multigraph(rng, 8, 20)
    fam = solve_kforest(g, k)
    gf = forest_graph(g, fam)
    sets = {v: frozenset(tight_set_from_root(gf, k, v)) for v in g.vertices()}
    for v, s in sets.items():
        assert v in s
        for w in s:
            assert sets[w] == s
