import random

import pytest
from hypothesis import given, settings, strategies as st

from kforest.errors import CapacityError, InputError
from kforest.exact import ExchangeState, bounded_indegree_forests, partition_opt_certificate, solve_kforest
from kforest.graph import ForestFamily, MultiGraph, Orientation, orient_forests

from oracles import brute_kforest, complete_graph, random_multigraph


def test_augment_into_empty_forest():
    g = MultiGraph.from_edges(2, [(0, 1)])
    st_ = ExchangeState(g, 1)
    assert st_.augment_edge(1)
    assert st_.assign == {1: 1}


def test_augment_blocked_by_cycle():
    g = complete_graph(3)
    st_ = ExchangeState(g, 1, ForestFamily(1, {1: 1, 2: 1}))
    assert not st_.augment_edge(3)
    assert st_.size == 2


def test_augment_through_exchange():
    # 0-1 twice, 1-2 once: edge 1 sits in forest 1 and blocks parallel edge 2,
    # edge 3 sits in forest 2; inserting 2 must push something around.
    g = MultiGraph.from_edges(3, [(0, 1), (0, 1), (1, 2)])
    st_ = ExchangeState(g, 2, ForestFamily(2, {1: 1, 3: 2}))
    assert st_.augment_edge(2)
    fam = st_.family()
    fam.validate(g)
    assert len(fam) == 3


def test_augment_requires_a_swap():
    # forest 1 holds path 0-1-2 and forest 2 holds 0-2; a second 0-2 edge
    # only fits after a path edge moves from forest 1 to forest 2.
    g = MultiGraph.from_edges(3, [(0, 1), (1, 2), (0, 2), (0, 2)])
    st_ = ExchangeState(g, 2, ForestFamily(2, {1: 1, 2: 1, 3: 2}))
    assert st_.augment_edge(4)
    assert st_.augmentations == 1
    fam = st_.family()
    # either path edge may move; the lower id is tried first
    assert fam.assignment == {1: 2, 2: 1, 3: 2, 4: 1}
    fam.validate(g)
    assert len(fam) == 4


def test_augment_errors():
    g = complete_graph(3)
    st_ = ExchangeState(g, 1, ForestFamily(1, {1: 1}))
    with pytest.raises(InputError):
        st_.augment_edge(1)
    with pytest.raises(InputError):
        st_.augment_edge(42)
    with pytest.raises(InputError):
        ExchangeState(g, 1, ForestFamily(1, {1: 1, 2: 1, 3: 1}))
    with pytest.raises(InputError):
        ExchangeState(g, 0)


def test_solve_examples():
    assert len(solve_kforest(complete_graph(3), 1)) == 2
    assert len(solve_kforest(complete_graph(3), 2)) == 3
    assert len(solve_kforest(complete_graph(4), 2)) == 6
    assert len(solve_kforest(complete_graph(5), 2)) == 8
    assert len(solve_kforest(MultiGraph(4), 3)) == 0


def test_bounded_indegree_examples():
    g = complete_graph(4)
    fam = solve_kforest(g, 2)
    o = orient_forests(g, fam)
    assert len(bounded_indegree_forests(g, o, 2)) == 6
    path = MultiGraph.from_edges(3, [(0, 1), (1, 2)])
    o = Orientation()
    o.set_head(1, 1)
    o.set_head(2, 2)
    assert len(bounded_indegree_forests(path, o, 1)) == 2


def test_bounded_indegree_rejects_active_bound():
    g = MultiGraph.from_edges(3, [(0, 1), (2, 1)])
    o = Orientation()
    o.set_head(1, 1)
    o.set_head(2, 1)
    with pytest.raises(InputError):
        bounded_indegree_forests(g, o, 1)
    with pytest.raises(InputError):
        bounded_indegree_forests(g, Orientation(), 1)


def test_partition_examples():
    assert partition_opt_certificate(complete_graph(4), 2)[0] == 6
    value, parts = partition_opt_certificate(complete_graph(3), 2)
    assert value == 3
    value, parts = partition_opt_certificate(complete_graph(3), 1)
    assert value == 2 and parts == [[0, 1, 2]]
    assert partition_opt_certificate(MultiGraph(0), 2) == (0, [])


def test_partition_capacity():
    with pytest.raises(CapacityError):
        partition_opt_certificate(MultiGraph(13), 1)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_agrees_with_brute_force(seed, k):
    rng = random.Random(seed)
    g = random_multigraph(rng, 6, 9 if k < 3 else 7)
    fam = solve_kforest(g, k)
    fam.validate(g)
    want = brute_kforest(g, k)
    assert len(fam) == want
    assert partition_opt_certificate(g, k)[0] == want


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_warm_start_and_monotone(seed, k):
    rng = random.Random(seed)
    g = random_multigraph(rng, 9, 24)
    cold = solve_kforest(g, k)
    partial = cold.copy()
    for e in list(partial.assignment):
        if rng.random() < 0.5:
            partial.unassign(e)
    assert len(solve_kforest(g, k, partial)) == len(cold)
    assert len(solve_kforest(g, k + 1)) >= len(cold)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_rooted_forests_stay_consistent(seed, k):
    rng = random.Random(seed)
    g = random_multigraph(rng, 10, 30)
    st_ = ExchangeState(g, k)
    for e in g.edge_ids():
        st_.augment_edge(e)
        for i in range(1, k + 1):
            edges = {e2 for e2, j in st_.assign.items() if j == i}
            hanging = {st_.pedge[i][v] for v in g.vertices() if st_.pedge[i][v] != -1}
            assert hanging == edges
            for v in g.vertices():
                p = st_.parent[i][v]
                if p != -1:
                    assert set(g.endpoints(st_.pedge[i][v])) == {v, p}
                    assert st_.depth[i][v] == st_.depth[i][p] + 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_recorded_tight_classes_are_tight(seed, k):
    rng = random.Random(seed)
    g = random_multigraph(rng, 10, 40, n_min=4)
    st_ = ExchangeState(g, k)
    for e in g.edge_ids():
        st_.augment_edge(e)
    for label, group in st_.members.items():
        assert all(st_.cls[v] == label for v in group)
        inside = sum(1 for e, i in st_.assign.items() if all(st_.cls[x] == label for x in g.endpoints(e)))
        assert inside == k * (len(group) - 1)
    assert st_.size == partition_opt_certificate(g, k)[0]
