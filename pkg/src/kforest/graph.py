"""Multigraph with stable edge ids, forest bookkeeping and contraction.

Vertices are integers ``0 .. vertex_bound - 1``; contraction appends a new
supervertex and marks the merged vertices dead, so ids are never reused.
Edge ids are arbitrary positive integers and are likewise never renumbered.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ContractError, InputError, InvariantError


class UnionFind:
    """Disjoint sets over ``0 .. n-1`` with union by size and path halving."""

    def __init__(self, n: int = 0):
        self.parent = list(range(n))
        self.size = [1] * n

    def grow(self, n: int) -> None:
        for x in range(len(self.parent), n):
            self.parent.append(x)
            self.size.append(1)

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if already together."""
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


class MultiGraph:
    """Undirected loop-free multigraph.

    Self-loops offered to :meth:`add_edge` consume an edge id but are kept
    aside in :attr:`loops` instead of being stored as edges.
    """

    def __init__(self, n: int = 0):
        self._alive: list[bool] = [True] * n
        self._ends: dict[int, tuple[int, int]] = {}
        self._inc: list[set[int]] = [set() for _ in range(n)]
        self.loops: dict[int, int] = {}
        self._next_id = 1

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]], first_id: int = 1) -> "MultiGraph":
        g = cls(n)
        for offset, (u, v) in enumerate(pairs):
            g.add_edge(u, v, first_id + offset)
        return g

    # -- vertices -----------------------------------------------------------

    @property
    def vertex_bound(self) -> int:
        return len(self._alive)

    @property
    def n(self) -> int:
        return sum(self._alive)

    def vertices(self) -> list[int]:
        return [v for v, alive in enumerate(self._alive) if alive]

    def is_alive(self, v: int) -> bool:
        return 0 <= v < len(self._alive) and self._alive[v]

    def add_vertex(self) -> int:
        self._alive.append(True)
        self._inc.append(set())
        return len(self._alive) - 1

    def _check_vertex(self, v: int) -> None:
        if not self.is_alive(v):
            raise InputError(f"unknown vertex {v}")

    # -- edges --------------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._ends)

    def add_edge(self, u: int, v: int, edge_id: int | None = None) -> int | None:
        """Add edge ``u - v``. Returns its id, or None for a dropped self-loop."""
        self._check_vertex(u)
        self._check_vertex(v)
        if edge_id is None:
            edge_id = self._next_id
        if edge_id in self._ends or edge_id in self.loops:
            raise InputError(f"duplicate edge id {edge_id}")
        self._next_id = max(self._next_id, edge_id + 1)
        if u == v:
            self.loops[edge_id] = u
            return None
        self._ends[edge_id] = (u, v)
        self._inc[u].add(edge_id)
        self._inc[v].add(edge_id)
        return edge_id

    def remove_edge(self, e: int) -> tuple[int, int]:
        u, v = self._ends.pop(e)
        self._inc[u].discard(e)
        self._inc[v].discard(e)
        return u, v

    def has_edge(self, e: int) -> bool:
        return e in self._ends

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._ends[e]
        except KeyError:
            raise InputError(f"unknown edge id {e}") from None

    def edge_ids(self) -> list[int]:
        return sorted(self._ends)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(edge_id, u, v)`` in ascending id order."""
        ends = self._ends
        for e in sorted(ends):
            u, v = ends[e]
            yield e, u, v

    def incident(self, v: int) -> set[int]:
        self._check_vertex(v)
        return self._inc[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    # -- whole-graph helpers -------------------------------------------------

    def copy(self) -> "MultiGraph":
        g = MultiGraph.__new__(MultiGraph)
        g._alive = list(self._alive)
        g._ends = dict(self._ends)
        g._inc = [set(s) for s in self._inc]
        g.loops = dict(self.loops)
        g._next_id = self._next_id
        return g

    def subgraph(self, vertices: Iterable[int], edge_ids: Iterable[int] | None = None) -> "MultiGraph":
        """Subgraph on ``vertices`` keeping vertex and edge ids.

        Without ``edge_ids`` every edge induced by ``vertices`` is kept.
        """
        keep = set(vertices)
        for v in keep:
            self._check_vertex(v)
        g = MultiGraph(self.vertex_bound)
        g._alive = [v in keep for v in range(self.vertex_bound)]
        g._next_id = self._next_id
        chosen = self.edge_ids() if edge_ids is None else sorted(edge_ids)
        for e in chosen:
            u, v = self.endpoints(e)
            if u in keep and v in keep:
                g.add_edge(u, v, e)
            elif edge_ids is not None:
                raise InputError(f"edge {e} leaves the vertex set")
        return g

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = [False] * self.vertex_bound
        out = []
        for s in self.vertices():
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for e in self._inc[x]:
                    a, b = self._ends[e]
                    y = b if a == x else a
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comp.sort()
            out.append(comp)
        return out

    def same_as(self, other: "MultiGraph") -> bool:
        """Identical live vertex set, edge ids and endpoints."""
        return (
            self.vertices() == other.vertices()
            and self._ends == other._ends
            and self.loops == other.loops
        )

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


class ForestFamily:
    """Partial assignment ``edge id -> forest index in 1..k``."""

    def __init__(self, k: int, assignment: dict[int, int] | None = None):
        if k < 1:
            raise InputError("k must be at least 1")
        self.k = k
        self.assignment: dict[int, int] = {}
        for e, i in (assignment or {}).items():
            self.assign(e, i)

    @classmethod
    def from_forests(cls, forests: Iterable[Iterable[int]], k: int | None = None) -> "ForestFamily":
        forests = [list(f) for f in forests]
        fam = cls(k if k is not None else max(len(forests), 1))
        for i, edges in enumerate(forests, start=1):
            for e in edges:
                if e in fam.assignment:
                    raise InputError(f"edge {e} appears in two forests")
                fam.assign(e, i)
        return fam

    def assign(self, e: int, i: int) -> None:
        if not 1 <= i <= self.k:
            raise InputError(f"forest index {i} outside 1..{self.k}")
        self.assignment[e] = i

    def unassign(self, e: int) -> int | None:
        return self.assignment.pop(e, None)

    def get(self, e: int) -> int | None:
        return self.assignment.get(e)

    def __contains__(self, e: int) -> bool:
        return e in self.assignment

    def __len__(self) -> int:
        return len(self.assignment)

    @property
    def size(self) -> int:
        return len(self.assignment)

    def edges(self) -> set[int]:
        return set(self.assignment)

    def forest(self, i: int) -> list[int]:
        return sorted(e for e, j in self.assignment.items() if j == i)

    def forests(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for e in sorted(self.assignment):
            out[self.assignment[e] - 1].append(e)
        return out

    def copy(self) -> "ForestFamily":
        fam = ForestFamily(self.k)
        fam.assignment = dict(self.assignment)
        return fam

    def validate(self, g: MultiGraph) -> None:
        """Raise :class:`InvariantError` unless every forest is acyclic in ``g``."""
        for i, edges in enumerate(self.forests(), start=1):
            for e in edges:
                if not g.has_edge(e):
                    raise InvariantError(f"forest {i} holds unknown edge {e}")
            cycle = forest_cycle(g, edges)
            if cycle is not None:
                raise InvariantError(f"forest {i} has a cycle through edges {cycle}")

    def __eq__(self, other) -> bool:
        return isinstance(other, ForestFamily) and self.k == other.k and self.assignment == other.assignment

    def __repr__(self) -> str:
        return f"ForestFamily(k={self.k}, size={self.size})"


class Orientation:
    """Head choice per edge with a maintained indegree table."""

    def __init__(self):
        self.head: dict[int, int] = {}
        self.indeg: dict[int, int] = defaultdict(int)

    def set_head(self, e: int, v: int) -> None:
        old = self.head.get(e)
        if old is not None:
            self.indeg[old] -= 1
        self.head[e] = v
        self.indeg[v] += 1

    def remove(self, e: int) -> None:
        v = self.head.pop(e)
        self.indeg[v] -= 1

    def indegree(self, v: int) -> int:
        return self.indeg.get(v, 0)

    def max_indegree(self) -> int:
        return max(self.indeg.values(), default=0)

    def edges(self) -> set[int]:
        return set(self.head)

    def tail(self, g: MultiGraph, e: int) -> int:
        u, v = g.endpoints(e)
        return v if self.head[e] == u else u

    def recount(self) -> dict[int, int]:
        counts: dict[int, int] = defaultdict(int)
        for v in self.head.values():
            counts[v] += 1
        return dict(counts)

    def validate(self, g: MultiGraph) -> None:
        for e, h in self.head.items():
            if h not in g.endpoints(e):
                raise InvariantError(f"head {h} of edge {e} is not an endpoint")
        stored = {v: c for v, c in self.indeg.items() if c}
        if stored != self.recount():
            raise InvariantError("indegree table out of sync with heads")

    def __len__(self) -> int:
        return len(self.head)


@dataclass
class ContractionRecord:
    """Everything needed to undo one contraction and reattach its trees."""

    supervertex: int
    members: tuple[int, ...]
    trees: tuple[tuple[int, ...], ...]
    discarded: tuple[int, ...]
    inner: dict[int, tuple[int, int]] = field(repr=False)
    boundary: dict[int, tuple[int, int]] = field(repr=False)

    @property
    def tree_edges(self) -> int:
        return sum(len(t) for t in self.trees)


def forest_cycle(g: MultiGraph, edge_ids: Iterable[int]) -> list[int] | None:
    """Edge ids of a cycle within ``edge_ids``, or None if they form a forest."""
    uf = UnionFind(g.vertex_bound)
    adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for e in edge_ids:
        u, v = g.endpoints(e)
        if not uf.union(u, v):
            # tree path v -> u among the edges accepted so far, plus e
            prev = {v: None}
            queue = deque([v])
            while queue:
                x = queue.popleft()
                if x == u:
                    break
                for f, y in adj[x]:
                    if y not in prev:
                        prev[y] = (x, f)
                        queue.append(y)
            path = [e]
            x = u
            while prev[x] is not None:
                x, f = prev[x]
                path.append(f)
            return sorted(path)
        adj[u].append((e, v))
        adj[v].append((e, u))
    return None


def induced_edge_set(g: MultiGraph, s: Iterable[int], restrict: Iterable[int] | None = None) -> set[int]:
    """Ids of edges with both endpoints in ``s``, optionally intersected with ``restrict``."""
    s = set(s)
    out = set()
    for v in s:
        for e in g.incident(v):
            a, b = g.endpoints(e)
            if a in s and b in s:
                out.add(e)
    if restrict is not None:
        out &= set(restrict)
    return out


def spanning_rank(g: MultiGraph, edge_set: Iterable[int]) -> int:
    """Number of edges in a spanning forest of ``edge_set``."""
    uf = UnionFind(g.vertex_bound)
    rank = 0
    for e in edge_set:
        u, v = g.endpoints(e)
        rank += uf.union(u, v)
    return rank


def orient_forests(g: MultiGraph, f: ForestFamily) -> Orientation:
    """Orient every tree of every forest away from its least vertex.

    Each forest contributes indegree at most one per vertex, so the result
    has indegree at most ``k`` everywhere.
    """
    o = Orientation()
    for i, edges in enumerate(f.forests(), start=1):
        adj: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for e in edges:
            u, v = g.endpoints(e)
            adj[u].append((e, v))
            adj[v].append((e, u))
        seen: set[int] = set()
        for root in sorted(adj):
            if root in seen:
                continue
            seen.add(root)
            stack = [(root, None)]
            while stack:
                x, via = stack.pop()
                for e, y in adj[x]:
                    if e == via:
                        continue
                    if y in seen:
                        raise InvariantError(f"forest {i} contains a cycle through edge {e}")
                    seen.add(y)
                    o.set_head(e, y)
                    stack.append((y, e))
    return o


def contract(g: MultiGraph, f: ForestFamily, u: Iterable[int]) -> ContractionRecord:
    """Contract vertex set ``u`` into a new supervertex, mutating ``g`` and ``f``.

    Every forest restricted to the induced edges must be a spanning tree of
    ``u``. Induced edges leave the graph (tree edges go into the record, the
    rest are discarded); edges with one endpoint in ``u`` are re-attached to
    the supervertex under their old ids.
    """
    members = tuple(sorted(set(u)))
    if not members:
        raise ContractError("cannot contract an empty vertex set")
    for v in members:
        if not g.is_alive(v):
            raise ContractError(f"vertex {v} is not alive")
    inside = set(members)
    inner_ids = sorted(induced_edge_set(g, inside))

    trees: list[list[int]] = [[] for _ in range(f.k)]
    for e in inner_ids:
        i = f.get(e)
        if i is not None:
            trees[i - 1].append(e)
    local = {v: j for j, v in enumerate(members)}
    for i, tree in enumerate(trees, start=1):
        uf = UnionFind(len(members))
        joined = 0
        for e in tree:
            a, b = g.endpoints(e)
            joined += uf.union(local[a], local[b])
        if len(tree) != len(members) - 1 or joined != len(tree):
            raise ContractError(f"forest {i} is not a spanning tree of the contracted set")

    inner = {e: g.endpoints(e) for e in inner_ids}
    boundary = {}
    for v in members:
        for e in g.incident(v):
            if e not in inner:
                boundary[e] = g.endpoints(e)

    sv = g.add_vertex()
    for e in inner_ids:
        g.remove_edge(e)
        f.unassign(e)
    for e, (a, b) in boundary.items():
        g.remove_edge(e)
        g.add_edge(sv if a in inside else a, sv if b in inside else b, e)
    for v in members:
        g._alive[v] = False

    in_trees = {e for t in trees for e in t}
    return ContractionRecord(
        supervertex=sv,
        members=members,
        trees=tuple(tuple(t) for t in trees),
        discarded=tuple(e for e in inner_ids if e not in in_trees),
        inner=inner,
        boundary=boundary,
    )


def uncontract(g: MultiGraph, f: ForestFamily, rec: ContractionRecord) -> None:
    """Undo one contraction and add its trees back into ``f``."""
    sv = rec.supervertex
    if not g.is_alive(sv) or any(g.is_alive(v) for v in rec.members):
        raise InvariantError(f"contraction record for supervertex {sv} does not match the graph")
    for e in rec.boundary:
        if not g.has_edge(e) or sv not in g.endpoints(e):
            raise InvariantError(f"boundary edge {e} of supervertex {sv} is missing")
    if len(g.incident(sv)) != len(rec.boundary):
        raise InvariantError(f"supervertex {sv} gained edges after contraction")
    for v in rec.members:
        g._alive[v] = True
    for e, (a, b) in rec.boundary.items():
        g.remove_edge(e)
        g.add_edge(a, b, e)
    g._alive[sv] = False
    for e, (a, b) in rec.inner.items():
        g.add_edge(a, b, e)
    for i, tree in enumerate(rec.trees, start=1):
        for e in tree:
            f.assign(e, i)


def uncontract_all(g: MultiGraph, f: ForestFamily, records: list[ContractionRecord]) -> ForestFamily:
    """Replay ``records`` in reverse, restoring ``g`` and growing ``f`` in place."""
    for rec in reversed(records):
        uncontract(g, f, rec)
    return f
