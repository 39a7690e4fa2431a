"""Largest subgraph orientable with indegree at most k that keeps a given subgraph.

Integer flows in the layered network ``s -> edges -> vertices -> t``
(capacities 1, 1, k) correspond one-to-one to oriented subgraphs with
indegree at most k: an edge node sending its unit into vertex ``v`` means
the edge points at ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantError
from .graph import MultiGraph, Orientation
from .maxflow import FlowNetwork


@dataclass
class GStar:
    net: FlowNetwork
    k: int
    edge_node: dict[int, int]
    vertex_node: dict[int, int]
    # edge id -> (source arc, arc to first endpoint, arc to second endpoint)
    edge_arcs: dict[int, tuple[int, int, int]]
    sink_arc: dict[int, int]
    ends: dict[int, tuple[int, int]]


def build_gstar(g: MultiGraph, k: int) -> GStar:
    """Node numbering: source 0, edges by ascending id, live vertices ascending, sink last."""
    if k < 1:
        raise InputError("k must be at least 1")
    edges = list(g.edges())
    vertices = g.vertices()
    m, n = len(edges), len(vertices)
    sink = m + n + 1
    net = FlowNetwork(m + n + 2, 0, sink)
    vertex_node = {v: m + 1 + j for j, v in enumerate(vertices)}
    edge_node = {}
    edge_arcs = {}
    ends = {}
    for j, (e, u, v) in enumerate(edges, start=1):
        edge_node[e] = j
        ends[e] = (u, v)
        edge_arcs[e] = (
            net.add_arc(0, j, 1),
            net.add_arc(j, vertex_node[u], 1),
            net.add_arc(j, vertex_node[v], 1),
        )
    sink_arc = {v: net.add_arc(node, sink, k) for v, node in vertex_node.items()}
    return GStar(net, k, edge_node, vertex_node, edge_arcs, sink_arc, ends)


def flow_from_oriented_subgraph(gs: GStar, h: Orientation) -> GStar:
    """Preload the flow encoding ``h``: one unit along ``s, e, head(e), t`` per edge."""
    load: dict[int, int] = {}
    for e, head in h.head.items():
        if e not in gs.edge_arcs:
            raise InputError(f"oriented edge {e} is not in the graph")
        u, v = gs.ends[e]
        if head not in (u, v):
            raise InputError(f"head {head} of edge {e} is not an endpoint")
        load[head] = load.get(head, 0) + 1
    for v, d in load.items():
        if d > gs.k:
            raise InputError(f"vertex {v} has indegree {d} > k = {gs.k}")
    net = gs.net
    for e, head in h.head.items():
        s_arc, to_u, to_v = gs.edge_arcs[e]
        net.preload(s_arc, 1)
        net.preload(to_u if head == gs.ends[e][0] else to_v, 1)
    for v, d in load.items():
        net.preload(gs.sink_arc[v], d)
    return gs


def decode_orientation(gs: GStar) -> Orientation:
    """Oriented subgraph carried by the current flow."""
    net = gs.net
    o = Orientation()
    for e, (s_arc, to_u, to_v) in gs.edge_arcs.items():
        if net.flow(s_arc):
            u, v = gs.ends[e]
            o.set_head(e, u if net.flow(to_u) else v)
    return o


def pseudoforests(g: MultiGraph, h: Orientation, k: int) -> tuple[set[int], Orientation]:
    """Maximum edge set ``P`` containing ``h`` with an orientation of indegree <= k.

    ``h`` is loaded as a warm-start flow and the residual arcs that could
    return its units to the source are removed, so every edge of ``h``
    stays in ``P``. The orientation of ``h``'s edges may change.
    """
    gs = build_gstar(g, k)
    flow_from_oriented_subgraph(gs, h)
    for e in h.head:
        gs.net.forbid_reverse(gs.edge_arcs[e][0])
    gs.net.max_flow()
    po = decode_orientation(gs)
    p = set(po.head)
    if not p >= set(h.head):
        raise InvariantError("pseudoforest extension dropped an edge of the seed subgraph")
    return p, po
