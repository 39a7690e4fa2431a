"""Exact k-forest by matroid-union augmenting paths, and a partition certificate.

:class:`ExchangeState` keeps ``k`` edge-disjoint forests and grows their
union one edge at a time. An edge that cannot be inserted directly is
pushed in through a breadth-first search over the exchange graph: edge
``x`` may replace edge ``y`` of forest ``i`` when ``y`` lies on the tree path
in forest ``i`` between the endpoints of ``x``. Shortest exchange paths are
always valid, so every successful search grows the union by exactly one.
"""

from __future__ import annotations

from collections import defaultdict, deque
from typing import Iterable

from .errors import CapacityError, InputError, InvariantError
from .graph import ForestFamily, MultiGraph, Orientation, UnionFind

PARTITION_LIMIT = 12
_PROBE = object()


class ExchangeState:
    """Working forests over a fixed graph, with per-forest union-find.

    A swap inside forest ``i`` (remove an edge on the fundamental cycle of
    the incoming edge) leaves the components of forest ``i`` unchanged; only
    the final free insertion merges two components. The union-find
    structures therefore stay exact without ever deleting.

    Every forest is also kept rooted (parent, parent edge, depth per vertex)
    for path queries. Depths are only compared inside one tree, so a swap
    may re-root a tree at an arbitrary vertex; each swap re-hangs whichever
    side of the cut tree is smaller.
    """

    def __init__(self, g: MultiGraph, k: int, seed: ForestFamily | None = None):
        if k < 1:
            raise InputError("k must be at least 1")
        self.g = g
        self.k = k
        self.ends = {e: (u, v) for e, u, v in g.edges()}
        bound = g.vertex_bound
        self.assign: dict[int, int] = {}
        self.dsu = [UnionFind(bound) for _ in range(k + 1)]
        self.adj: list[dict[int, set[int]]] = [defaultdict(set) for _ in range(k + 1)]
        self.parent = [[-1] * bound for _ in range(k + 1)]
        self.pedge = [[-1] * bound for _ in range(k + 1)]
        self.depth = [[0] * bound for _ in range(k + 1)]
        # cls[v]: label of a known tight set holding v (v itself if none);
        # edges with both ends in one class never fit
        self.cls = list(range(bound))
        self.members: dict[int, list[int]] = {}
        self.augmentations = 0
        if seed is not None:
            if seed.k != k:
                raise InputError(f"seed family has k = {seed.k}, expected {k}")
            for e in sorted(seed.assignment):
                i = seed.assignment[e]
                if e not in self.ends:
                    raise InputError(f"seed edge {e} is not in the graph")
                u, v = self.ends[e]
                if not self.dsu[i].connected(u, v):
                    self._insert(e, i)
                else:
                    raise InputError(f"seed forest {i} has a cycle through edge {e}")

    @property
    def size(self) -> int:
        return len(self.assign)

    def family(self) -> ForestFamily:
        fam = ForestFamily(self.k)
        fam.assignment = dict(sorted(self.assign.items()))
        return fam

    def _other(self, e: int, x: int) -> int:
        u, v = self.ends[e]
        return v if u == x else u

    def _smaller_side(self, i: int, a: int, b: int) -> tuple[int, list[int]]:
        """Explore the trees of ``a`` and ``b`` in forest ``i`` in lockstep.

        The two must lie in different trees. Returns the start vertex of the
        tree that finished first together with all its vertices.
        """
        adj = self.adj[i]
        sides = [(a, [a], {a}), (b, [b], {b})]
        while True:
            for start, stack, seen in sides:
                if not stack:
                    return start, list(seen)
                x = stack.pop()
                for e in adj.get(x, ()):
                    y = self._other(e, x)
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)

    def _hang(self, i: int, low: int, high: int, via: int, members: list[int]) -> None:
        """Re-root the tree made of ``members`` at ``low`` and hang it below ``high``."""
        adj = self.adj[i]
        parent, pedge, depth = self.parent[i], self.pedge[i], self.depth[i]
        inside = set(members)
        parent[low], pedge[low], depth[low] = high, via, depth[high] + 1
        stack = [low]
        while stack:
            x = stack.pop()
            dx = depth[x] + 1
            for e in adj.get(x, ()):
                if e == pedge[x]:
                    continue
                y = self._other(e, x)
                if y in inside:
                    parent[y], pedge[y], depth[y] = x, e, dx
                    stack.append(y)

    def _insert(self, e: int, i: int) -> None:
        """Add ``e`` to forest ``i`` where it joins two different trees."""
        u, v = self.ends[e]
        low, members = self._smaller_side(i, u, v)
        high = v if low == u else u
        self.adj[i][u].add(e)
        self.adj[i][v].add(e)
        self._hang(i, low, high, e, members)
        self.dsu[i].union(u, v)
        self.assign[e] = i

    def _swap(self, i: int, out: int, into: int) -> None:
        """Replace ``out`` by ``into`` in forest ``i``; ``out`` is on ``into``'s tree path."""
        adj = self.adj[i]
        p, c = self.ends[out]
        if self.pedge[i][c] != out:
            p, c = c, p
        adj[p].discard(out)
        adj[c].discard(out)
        del self.assign[out]
        start, members = self._smaller_side(i, c, p)
        if start != c:
            # the root side gets re-hung, so the subtree keeps its data rooted at c
            self.parent[i][c], self.pedge[i][c] = -1, -1
        inside = set(members)
        a, b = self.ends[into]
        low, high = (a, b) if a in inside else (b, a)
        adj[a].add(into)
        adj[b].add(into)
        self._hang(i, low, high, into, members)
        self.assign[into] = i

    def _free_forest(self, u: int, v: int, skip: int | None) -> int | None:
        for i in range(1, self.k + 1):
            if i != skip and not self.dsu[i].connected(u, v):
                return i
        return None

    def _search(self, src, a: int, b: int) -> tuple[list, int] | None:
        """Shortest exchange path for a new element ``src`` with endpoints ``a``, ``b``.

        Returns the path (starting at ``src``) and the forest that takes its
        last element, or None when ``src`` is spanned by the union.
        """
        cls = self.cls
        if cls[a] == cls[b]:
            return None
        k, ends, assign = self.k, self.ends, self.assign
        pred: dict = {src: None}
        # up[i][x]: x's parent edge in forest i is labelled; jump to its parent
        up: list[dict[int, int]] = [{} for _ in range(k + 1)]
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if x == src:
                xa, xb, fx = a, b, None
            else:
                (xa, xb), fx = ends[x], assign[x]
            j = self._free_forest(xa, xb, fx)
            if j is not None:
                path = [x]
                while pred[path[-1]] is not None:
                    path.append(pred[path[-1]])
                path.reverse()
                return path, j
            for i in range(1, k + 1):
                if i == fx:
                    continue
                new = self._label_path(i, xa, xb, up[i])
                new.sort()
                for y in new:
                    if y not in pred:
                        pred[y] = x
                        # inside a tight class every exchange stays inside it
                        # and no forest has room, so y is a dead end
                        u, v = ends[y]
                        if cls[u] != cls[v]:
                            queue.append(y)
        self._close(a, b, pred)
        return None

    def _close(self, a: int, b: int, reached) -> None:
        """Record the vertices of a failed search when they form a tight set.

        The candidate is every endpoint of a reached element together with
        the classes those endpoints belong to. Its induced forest edge count
        is checked rather than assumed, so every class is always a tight set:
        it stays tight as the union grows, and tight sets sharing a vertex
        unite into a tight set. Only vertices outside the largest class are
        scanned (and relabelled); that class contributes ``k * (|C| - 1)``.
        """
        cls, members, k = self.cls, self.members, self.k
        labels: set[int] = set()
        loose: set[int] = set()
        verts = {a, b}
        for e in reached:
            if e is not _PROBE:
                verts.update(self.ends[e])
        for v in verts:
            if cls[v] in members:
                labels.add(cls[v])
            else:
                loose.add(v)
        big = max(labels, key=lambda c: len(members[c]), default=None)
        rest = set(loose)
        for c in labels:
            if c != big:
                rest.update(members[c])
        base = len(members[big]) if big is not None else 0
        total = base + len(rest)
        if total < 2:
            return
        twice = 2 * k * (base - 1) if big is not None else 0
        for i in range(1, k + 1):
            adj = self.adj[i]
            for v in rest:
                for e in adj.get(v, ()):
                    w = self._other(e, v)
                    if w in rest:
                        twice += 1
                    elif big is not None and cls[w] == big:
                        twice += 2
        if twice != 2 * k * (total - 1):
            return
        target = big if big is not None else a
        group = members.pop(big) if big is not None else []
        for c in labels:
            if c != big:
                del members[c]
        for v in rest:
            cls[v] = target
        group.extend(rest)
        members[target] = group

    def augment_edge(self, e: int) -> bool:
        """Try to add unassigned edge ``e``; returns True iff the union grew."""
        if e in self.assign:
            raise InputError(f"edge {e} is already assigned")
        if e not in self.ends:
            raise InputError(f"unknown edge id {e}")
        found = self._search(e, *self.ends[e])
        if found is None:
            return False
        self._apply(*found)
        return True

    def can_insert(self, u: int, v: int) -> bool:
        """Whether one more ``u - v`` edge would fit into the union (no state change)."""
        return self._search(_PROBE, u, v) is not None

    def _label_path(self, i: int, a: int, b: int, up: dict[int, int]) -> list[int]:
        """Unlabelled edges on the forest-``i`` path between ``a`` and ``b``.

        Labelled parent edges are contracted through ``up`` so each edge of
        a forest is walked at most once per search.
        """
        parent, pedge, depth = self.parent[i], self.pedge[i], self.depth[i]

        def top(x: int) -> int:
            root = x
            while root in up:
                root = up[root]
            while x in up and up[x] != root:
                up[x], x = root, up[x]
            return root

        x, y = top(a), top(b)
        out = []
        while x != y:
            if depth[x] < depth[y]:
                x, y = y, x
            out.append(pedge[x])
            up[x] = parent[x]
            x = top(parent[x])
        return out

    def _apply(self, path: list[int], last_forest: int) -> None:
        """Shift every edge on ``path`` into the forest of its successor.

        On a shortest exchange path no edge's cycle contains a later path
        edge of the same forest, so applying the swaps one at a time in path
        order keeps every intermediate family a forest. The free insertion
        goes last; swaps never change which trees its endpoints lie in.
        """
        for t in range(1, len(path)):
            out = path[t]
            self._swap(self.assign[out], out, path[t - 1])
        self._insert(path[-1], last_forest)
        if len(path) > 1:
            self.augmentations += 1


def augment_edge(st: ExchangeState, e: int) -> bool:
    return st.augment_edge(e)


def solve_kforest(g: MultiGraph, k: int, seed_family: ForestFamily | None = None) -> ForestFamily:
    """Maximum family of ``k`` edge-disjoint forests in ``g``.

    Edges are offered in ascending id order. An edge that fails to enter
    stays spanned by the union for good, so one pass suffices.
    """
    st = ExchangeState(g, k, seed_family)
    for e in g.edge_ids():
        if e not in st.assign:
            st.augment_edge(e)
    return st.family()


def bounded_indegree_forests(
    g: MultiGraph, o: Orientation, k: int, seed_family: ForestFamily | None = None
) -> ForestFamily:
    """Optimal k forests of a directed graph whose indegrees are already at most ``k``.

    With every indegree at most ``k`` the indegree bound on the forests can
    never bind, so this is the undirected problem. Inputs where the bound
    could bind are rejected.
    """
    edge_ids = set(g.edge_ids())
    if set(o.head) != edge_ids:
        raise InputError("orientation must cover exactly the edges of the graph")
    for e, h in o.head.items():
        if h not in g.endpoints(e):
            raise InputError(f"head {h} of edge {e} is not an endpoint")
    for v, d in o.indeg.items():
        if d > k:
            raise InputError(
                f"vertex {v} has indegree {d} > k = {k}; the active-bound problem is not supported"
            )
    return solve_kforest(g, k, seed_family)


def _set_partitions(items: list[int]) -> Iterable[list[list[int]]]:
    blocks: list[list[int]] = []

    def rec(j: int):
        if j == len(items):
            yield blocks
            return
        x = items[j]
        for b in blocks:
            b.append(x)
            yield from rec(j + 1)
            b.pop()
        blocks.append([x])
        yield from rec(j + 1)
        blocks.pop()

    return rec(0)


def partition_opt_certificate(g: MultiGraph, k: int) -> tuple[int, list[list[int]]]:
    """Optimal k-forest size as a minimum over vertex partitions.

    For a partition into parts ``V_1..V_t`` the value is the number of edges
    between parts plus ``k * sum(|V_i| - 1)``. The minimum over all partitions
    equals the optimum (matroid union theorem with closed sets). Returns the
    value and an optimal partition.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    vertices = g.vertices()
    n = len(vertices)
    if n > PARTITION_LIMIT:
        raise CapacityError(f"partition enumeration limited to {PARTITION_LIMIT} vertices, got {n}")
    if n == 0:
        return 0, []
    index = {v: j for j, v in enumerate(vertices)}
    # edges between vertex j and earlier vertices, as earlier indices
    back: list[list[int]] = [[] for _ in range(n)]
    for _, u, v in g.edges():
        a, b = sorted((index[u], index[v]))
        back[b].append(a)

    label = [0] * n
    best = [g.m + 1, None]

    def rec(j: int, blocks: int, crossing: int):
        # blocks opened later only lower k*(n - blocks), so this bounds below
        if crossing + k * (n - blocks - (n - j)) >= best[0]:
            return
        if j == n:
            best[0] = crossing + k * (n - blocks)
            best[1] = list(label)
            return
        for b in range(blocks + 1):
            label[j] = b
            cross = sum(1 for a in back[j] if label[a] != b)
            rec(j + 1, max(blocks, b + 1), crossing + cross)

    label[0] = 0
    rec(1, 1, 0)
    value, labels = best
    if labels is None:
        raise InvariantError("partition enumeration found no partition")
    parts: dict[int, list[int]] = defaultdict(list)
    for j, b in enumerate(labels):
        parts[b].append(vertices[j])
    return value, [parts[b] for b in sorted(parts)]
