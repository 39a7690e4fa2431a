import random

import pytest
from hypothesis import given, settings, strategies as st

from kforest.errors import InputError, StateError
from kforest.maxflow import FlowNetwork, max_flow, maximal_min_cut_source_side

from oracles import min_cuts

S, A, B, T = 0, 1, 2, 3
DIAMOND = [(S, A, 2), (S, B, 2), (A, T, 1), (B, T, 1), (A, B, 1)]


def network(n, arcs, s=0, t=None):
    net = FlowNetwork(n, s, n - 1 if t is None else t)
    ids = [net.add_arc(u, v, c) for u, v, c in arcs]
    return net, ids


def test_single_arc():
    net, _ = network(2, [(0, 1, 5)])
    assert max_flow(net) == 5


def test_diamond():
    net, _ = network(4, DIAMOND)
    assert max_flow(net) == 2
    # unique minimum cut, found by enumerating all cuts
    assert maximal_min_cut_source_side(net) == {S, A, B}


def test_warm_start_same_value():
    net, ids = network(4, DIAMOND)
    net.preload(ids[0], 1)
    net.preload(ids[2], 1)
    assert net.value() == 1
    assert net.max_flow() == 2


def test_saturated_chain_side():
    net, _ = network(3, [(0, 1, 1), (1, 2, 1)])
    net.max_flow()
    assert net.maximal_min_cut_source_side() == {0, 1}


def test_zero_capacity_side():
    net, _ = network(3, [(0, 2, 0), (1, 2, 3)])
    assert net.max_flow() == 0
    # node 1 reaches t through its arc, so only s stays
    assert net.maximal_min_cut_source_side() == {0}
    net2, _ = network(3, [(0, 2, 0), (0, 1, 3)])
    net2.max_flow()
    assert net2.maximal_min_cut_source_side() == {0, 1}


def test_cut_before_solve_is_state_error():
    net, _ = network(2, [(0, 1, 1)])
    with pytest.raises(StateError):
        net.maximal_min_cut_source_side()


def test_infeasible_preload():
    net, ids = network(3, [(0, 1, 2), (1, 2, 2)])
    net.preload(ids[0], 2)
    with pytest.raises(InputError):
        net.max_flow()
    with pytest.raises(InputError):
        net.preload(ids[1], 3)


def test_forbidden_reverse_blocks_cancellation():
    arcs = [(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 1), (1, 3, 1)]
    free, ids = network(4, arcs)
    for a in ids[:3]:
        free.preload(a, 1)
    assert free.max_flow() == 2

    held, ids = network(4, arcs)
    for a in ids[:3]:
        held.preload(a, 1)
    held.forbid_reverse(ids[1])
    assert held.max_flow() == 1
    assert held.flow(ids[1]) == 1


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_cut_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    arcs = [
        (rng.randrange(n), rng.randrange(n), rng.randint(0, 4))
        for _ in range(rng.randint(0, 14))
    ]
    arcs = [(u, v, c) for u, v, c in arcs if u != v]
    net, _ = network(n, arcs)
    value = net.max_flow()
    best, sides = min_cuts(n, arcs, 0, n - 1)
    assert value == best
    side = net.maximal_min_cut_source_side()
    assert 0 in side and n - 1 not in side
    assert net.cut_capacity(side) == value
    assert all(s <= side for s in sides)
    assert frozenset(side) in sides
