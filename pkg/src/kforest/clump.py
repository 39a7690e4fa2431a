"""Top clump of a union of k forests.

A vertex set ``S`` is *tight* when the forests induce exactly
``k * (|S| - 1)`` edges on it, i.e. every forest restricted to ``S`` is a
spanning tree of ``S``. The top clump is the union of the induced edges of
the maximal tight sets with at least two vertices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .errors import CapacityError, InputError, InvariantError
from .exact import ExchangeState
from .graph import ForestFamily, MultiGraph, induced_edge_set, spanning_rank
from .maxflow import FlowNetwork

BRUTE_FORCE_LIMIT = 10


@dataclass
class ClumpComponent:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    trees: dict[int, tuple[int, ...]]


@dataclass
class ClumpReport:
    k: int
    edges: set[int] = field(default_factory=set)
    components: list[ClumpComponent] = field(default_factory=list)
    flow_calls: int = 0

    def __len__(self) -> int:
        return len(self.edges)

    def check(self, g: MultiGraph, f: ForestFamily) -> None:
        """Recount every component against the clump invariants."""
        seen: set[int] = set()
        union: set[int] = set()
        for comp in self.components:
            s = set(comp.vertices)
            if s & seen:
                raise InvariantError("clump components overlap")
            seen |= s
            induced = induced_edge_set(g, s, f.edges())
            if induced != set(comp.edges) or len(induced) != self.k * (len(s) - 1):
                raise InvariantError(f"component {comp.vertices} is not tight")
            for i in range(1, self.k + 1):
                tree = comp.trees[i]
                if len(tree) != len(s) - 1 or spanning_rank(g, tree) != len(s) - 1:
                    raise InvariantError(f"forest {i} is not a spanning tree of {comp.vertices}")
            union |= induced
        if union != self.edges:
            raise InvariantError("clump edge set differs from the union of its components")


def tight_set_from_root(gf: MultiGraph, k: int, r: int) -> set[int]:
    """Maximal tight vertex set containing ``r`` (possibly just ``{r}``).

    ``gf`` holds only forest edges. In the network ``source -> edge -> both
    endpoints -> sink`` with sink capacity ``k`` on every vertex but ``r``
    (which gets 0), a cut whose vertex side is ``A`` (containing ``r``) costs
    ``|E| - |induced(A)| + k(|A| - 1)``. That is at least ``|E|`` with equality
    exactly for tight ``A``, so the maximal minimum cut gives the answer.
    """
    if not gf.is_alive(r):
        raise InputError(f"root {r} is not a vertex of the component")
    edges = list(gf.edges())
    vertices = gf.vertices()
    m = len(edges)
    sink = m + len(vertices) + 1
    net = FlowNetwork(sink + 1, 0, sink)
    node = {v: m + 1 + j for j, v in enumerate(vertices)}
    for j, (_, u, v) in enumerate(edges, start=1):
        net.add_arc(0, j, 1)
        net.add_arc(j, node[u], 1)
        net.add_arc(j, node[v], 1)
    for v in vertices:
        net.add_arc(node[v], sink, 0 if v == r else k)
    value = net.max_flow()
    if value != m:
        raise InvariantError(f"forest edges of the component are not a union of {k} forests")
    side = net.maximal_min_cut_source_side()
    return {v for v in vertices if node[v] in side}


def _core(g: MultiGraph, f: ForestFamily) -> tuple[set[int], dict[int, list[tuple[int, int]]]]:
    """Vertices left after repeatedly peeling those with fewer than k forest edges.

    Inside a tight set of two or more vertices every vertex meets each of
    the k spanning trees, so peeled vertices never belong to the top clump.
    """
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e in f.assignment:
        u, v = g.endpoints(e)
        adj[u].append((e, v))
        adj[v].append((e, u))
    deg = {v: len(nb) for v, nb in adj.items()}
    alive = set(adj)
    stack = [v for v, d in deg.items() if d < f.k]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for _, w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] < f.k:
                    stack.append(w)
    return alive, adj


def top_clump(g: MultiGraph, f: ForestFamily) -> ClumpReport:
    """Top clump of ``f``: maximal tight sets extracted root by root.

    Before paying for a flow computation at root ``r``, each forest
    neighbour ``w`` of ``r`` is probed: ``r`` and ``w`` share a tight set
    exactly when one more parallel ``r - w`` edge cannot join the forests.
    If every probe fits, ``{r}`` is already maximal.
    """
    f.validate(g)
    k = f.k
    report = ClumpReport(k)
    core, adj = _core(g, f)
    probe = ExchangeState(g, k, f) if core else None
    claimed: set[int] = set()
    for start in sorted(core):
        if start in claimed:
            continue
        # one connected piece of the core
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for _, y in adj[x]:
                if y in core and y not in comp:
                    comp.add(y)
                    stack.append(y)
        claimed |= comp
        comp_edges = induced_edge_set(g, comp, f.assignment)
        gf = g.subgraph(comp, comp_edges)
        placed: set[int] = set()
        for r in sorted(comp):
            if r in placed:
                continue
            nbrs = sorted({w for _, w in adj[r] if w in comp and w not in placed})
            if all(probe.can_insert(r, w) for w in nbrs):
                continue
            tight = tight_set_from_root(gf, k, r)
            report.flow_calls += 1
            if len(tight) < 2:
                continue
            if tight & placed:
                raise InvariantError("maximal tight sets overlap")
            placed |= tight
            inner = induced_edge_set(gf, tight)
            trees: dict[int, list[int]] = {i: [] for i in range(1, k + 1)}
            for e in sorted(inner):
                trees[f.assignment[e]].append(e)
            report.components.append(
                ClumpComponent(
                    vertices=tuple(sorted(tight)),
                    edges=tuple(sorted(inner)),
                    trees={i: tuple(t) for i, t in trees.items()},
                )
            )
            report.edges |= inner
    report.components.sort(key=lambda c: c.vertices)
    return report


def brute_force_top_clump(g: MultiGraph, f: ForestFamily) -> set[int]:
    """Top clump by enumerating every vertex subset."""
    vertices = g.vertices()
    if len(vertices) > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"subset enumeration limited to {BRUTE_FORCE_LIMIT} vertices")
    k = f.k
    fedges = f.edges()
    tight = []
    for size in range(2, len(vertices) + 1):
        for s in combinations(vertices, size):
            induced = induced_edge_set(g, s, fedges)
            if len(induced) == k * (size - 1):
                tight.append((frozenset(s), induced))
    out: set[int] = set()
    for s, induced in tight:
        if not any(s < other for other, _ in tight):
            out |= induced
    return out


def is_clump(g: MultiGraph, f: ForestFamily, l) -> bool:
    l = set(l)
    if not l <= f.edges():
        raise InputError("candidate clump must be a subset of the forests")
    return len(l) == f.k * spanning_rank(g, l)
