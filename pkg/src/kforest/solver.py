"""Contraction-accelerated k-forest solver.

Each round orients the current forests, extends them to a largest
indegree-bounded subgraph ``P``, solves k-forest exactly on ``P`` starting
from the current forests, then contracts every component of the top clump
of the result. Rounds stop once the solution size (live forests plus the
tree edges held by contractions) no longer grows; the contractions are then
undone in reverse to produce forests of the original graph.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .clump import top_clump
from .errors import InputError, InvariantError
from .exact import bounded_indegree_forests, partition_opt_certificate, solve_kforest
from .graph import (
    ContractionRecord,
    ForestFamily,
    MultiGraph,
    contract,
    forest_cycle,
    orient_forests,
    uncontract_all,
)
from .pseudoforest import pseudoforests

log = logging.getLogger(__name__)


def iteration_bound(k: int, n: int) -> int:
    """Smallest t with ((k+1)/k)^t >= k*n, in integer arithmetic."""
    t = 0
    lhs, rhs = 1, k * n
    while lhs < rhs:
        t += 1
        lhs *= k + 1
        rhs *= k
    return t


@dataclass
class IterationRecord:
    component: int
    index: int
    f_before: int
    p_size: int
    h_size: int
    h_subset_p: bool
    max_indegree: int
    clump_edges: int
    contracted: int
    vertices_after: int
    edges_after: int
    cumulative: int


@dataclass
class SolveStats:
    k: int
    n: int
    m: int
    self_loops_dropped: int = 0
    components: int = 0
    size: int = 0
    flow_calls: int = 0
    iteration_cap: int = 0
    iterations: list[IterationRecord] = field(default_factory=list)

    @property
    def iteration_count(self) -> int:
        """Most rounds used by any one connected component."""
        counts: dict[int, int] = {}
        for rec in self.iterations:
            counts[rec.component] = counts.get(rec.component, 0) + 1
        return max(counts.values(), default=0)

    @property
    def size_trace(self) -> list[int]:
        return [rec.cumulative for rec in self.iterations]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "m": self.m,
            "self_loops_dropped": self.self_loops_dropped,
            "components": self.components,
            "size": self.size,
            "iteration_count": self.iteration_count,
            "iteration_cap": self.iteration_cap,
            "flow_calls": self.flow_calls,
            "iterations": [asdict(rec) for rec in self.iterations],
        }


class SolverState:
    """Mutable state of one solve on a connected graph (owned, not shared)."""

    def __init__(self, g: MultiGraph, k: int, component: int = 0):
        if k < 1:
            raise InputError("k must be at least 1")
        self.graph = g
        self.k = k
        self.component = component
        self.family = ForestFamily(k)
        self.records: list[ContractionRecord] = []
        self.contracted_edges = 0
        self.flow_calls = 0
        self.iterations: list[IterationRecord] = []

    @property
    def cumulative(self) -> int:
        return len(self.family) + self.contracted_edges


def iterate_once(state: SolverState) -> IterationRecord:
    """Run one round: orient, extend, re-solve, contract the top clump."""
    g, k, f = state.graph, state.k, state.family
    f_before = len(f)

    orientation = orient_forests(g, f)
    max_in = orientation.max_indegree()
    if max_in > k:
        raise InvariantError(f"forest orientation has indegree {max_in} > k")

    p, p_orientation = pseudoforests(g, orientation, k)
    state.flow_calls += 1
    h_subset_p = f.edges() <= p
    if not h_subset_p:
        raise InvariantError("current forests are not contained in the pseudoforest extension")

    gp = g.subgraph(g.vertices(), p)
    h = bounded_indegree_forests(gp, p_orientation, k, seed_family=f)
    h_size = len(h)

    clump = top_clump(g, h)
    state.flow_calls += clump.flow_calls
    for comp in clump.components:
        rec = contract(g, h, comp.vertices)
        state.records.append(rec)
        state.contracted_edges += rec.tree_edges
    state.family = h

    rec = IterationRecord(
        component=state.component,
        index=len(state.iterations) + 1,
        f_before=f_before,
        p_size=len(p),
        h_size=h_size,
        h_subset_p=h_subset_p,
        max_indegree=max_in,
        clump_edges=len(clump.edges),
        contracted=len(clump.components),
        vertices_after=g.n,
        edges_after=g.m,
        cumulative=state.cumulative,
    )
    state.iterations.append(rec)
    log.debug("round %d: |F|=%d |P|=%d |H|=%d clump=%d", rec.index, f_before, len(p), h_size, rec.clump_edges)
    return rec


def solve_connected(g: MultiGraph, k: int, component: int = 0) -> tuple[ForestFamily, SolverState]:
    """Run the rounds on a connected graph. ``g`` is left unchanged."""
    state = SolverState(g.copy(), k, component)
    cap = iteration_bound(k, g.n) + 2
    previous = -1
    while state.cumulative > previous:
        if len(state.iterations) >= cap:
            raise InvariantError(f"exceeded {cap} rounds; a subroutine returned a non-optimal result")
        previous = state.cumulative
        iterate_once(state)
    fam = uncontract_all(state.graph, state.family, state.records)
    return fam, state


def forests(g: MultiGraph, k: int) -> tuple[ForestFamily, SolveStats]:
    """Optimal family of ``k`` edge-disjoint forests of ``g`` with solve statistics."""
    if k < 1:
        raise InputError("k must be at least 1")
    stats = SolveStats(k=k, n=g.n, m=g.m, self_loops_dropped=len(g.loops))
    stats.iteration_cap = iteration_bound(k, g.n) + 1
    result = ForestFamily(k)
    for c, comp in enumerate(g.components()):
        stats.components += 1
        if len(comp) < 2:
            continue
        sub = g if len(comp) == g.n else g.subgraph(comp)
        fam, state = solve_connected(sub, k, component=c)
        result.assignment.update(fam.assignment)
        stats.flow_calls += state.flow_calls
        stats.iterations.extend(state.iterations)
    result.assignment = dict(sorted(result.assignment.items()))
    stats.size = len(result)
    return result, stats


@dataclass
class VerificationReport:
    size: int
    failures: list[str] = field(default_factory=list)
    optimum: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_solution(
    g: MultiGraph,
    fam: ForestFamily | Iterable[tuple[int, int]],
    k: int,
    oracle: str | None = None,
) -> VerificationReport:
    """Check a claimed solution; every problem found is listed in the report.

    ``fam`` may be a :class:`ForestFamily` or raw ``(edge_id, forest)`` pairs
    (which can repeat an edge). ``oracle`` is ``"augment"`` or
    ``"partition"`` to also compare against the optimum.
    """
    pairs = sorted(fam.assignment.items()) if isinstance(fam, ForestFamily) else list(fam)
    report = VerificationReport(size=len(pairs))
    seen: dict[int, int] = {}
    by_forest: dict[int, list[int]] = {}
    for e, i in pairs:
        if not g.has_edge(e):
            report.failures.append(f"unknown edge: {e}")
            continue
        if not 1 <= i <= k:
            report.failures.append(f"forest index out of range: edge {e} in forest {i}")
            continue
        if e in seen:
            report.failures.append(f"disjointness: edge {e} in forests {seen[e]} and {i}")
            continue
        seen[e] = i
        by_forest.setdefault(i, []).append(e)
    for i in sorted(by_forest):
        cycle = forest_cycle(g, by_forest[i])
        if cycle is not None:
            report.failures.append(f"acyclicity: forest {i} has a cycle on edges {cycle}")
    if oracle is not None:
        if oracle == "augment":
            report.optimum = len(solve_kforest(g, k))
        elif oracle == "partition":
            report.optimum = partition_opt_certificate(g, k)[0]
        else:
            raise InputError(f"unknown oracle {oracle!r}")
        if report.size != report.optimum:
            report.failures.append(
                f"optimality gap: solution has {report.size} edges, optimum is {report.optimum}"
            )
    return report
