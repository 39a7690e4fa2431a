"""Integer max flow by blocking flows on level graphs.

Arcs live in flat arrays. Arc ``a`` and its residual partner ``a ^ 1`` are
added together, so forward arcs have even indices. A preloaded flow is kept
as a warm start, and individual residual directions may be forbidden.
"""

from __future__ import annotations

from collections import deque

from .errors import InputError, StateError


class FlowNetwork:
    def __init__(self, n_nodes: int, source: int, sink: int):
        if not (0 <= source < n_nodes and 0 <= sink < n_nodes) or source == sink:
            raise InputError("source and sink must be distinct nodes of the network")
        self.n_nodes = n_nodes
        self.source = source
        self.sink = sink
        self.to: list[int] = []
        self.cap: list[int] = []
        self.res: list[int] = []
        self.blocked: list[bool] = []
        self.adj: list[list[int]] = [[] for _ in range(n_nodes)]
        self._solved = False

    @property
    def n_arcs(self) -> int:
        return len(self.to) // 2

    def add_arc(self, u: int, v: int, capacity: int) -> int:
        """Add arc ``u -> v``; returns its (even) index."""
        if capacity < 0:
            raise InputError("capacities must be non-negative")
        a = len(self.to)
        self.to += (v, u)
        self.cap += (capacity, 0)
        self.res += (capacity, 0)
        self.blocked += (False, False)
        self.adj[u].append(a)
        self.adj[v].append(a + 1)
        self._solved = False
        return a

    def tail(self, a: int) -> int:
        return self.to[a ^ 1]

    def flow(self, a: int) -> int:
        return self.cap[a] - self.res[a]

    def preload(self, a: int, amount: int) -> None:
        """Set the flow on forward arc ``a`` before solving."""
        if not 0 <= amount <= self.cap[a]:
            raise InputError(f"preloaded flow {amount} outside [0, {self.cap[a]}] on arc {a}")
        self.res[a] = self.cap[a] - amount
        self.res[a ^ 1] = 0 if self.blocked[a ^ 1] else amount
        self._solved = False

    def forbid_reverse(self, a: int) -> None:
        """Remove the residual direction that would cancel flow on arc ``a``."""
        self.blocked[a ^ 1] = True
        self.res[a ^ 1] = 0

    def excess(self) -> list[int]:
        net = [0] * self.n_nodes
        to = self.to
        for a in range(0, len(to), 2):
            f = self.cap[a] - self.res[a]
            if f:
                net[to[a ^ 1]] -= f
                net[to[a]] += f
        return net

    def validate_flow(self) -> None:
        for a in range(0, len(self.to), 2):
            if not 0 <= self.flow(a) <= self.cap[a]:
                raise InputError(f"flow on arc {a} violates its capacity")
        for v, ex in enumerate(self.excess()):
            if ex and v != self.source and v != self.sink:
                raise InputError(f"flow conservation violated at node {v}")

    def value(self) -> int:
        return -self.excess()[self.source]

    def _levels(self) -> list[int]:
        to, res, adj = self.to, self.res, self.adj
        level = [-1] * self.n_nodes
        level[self.source] = 0
        queue = deque([self.source])
        sink = self.sink
        while queue:
            x = queue.popleft()
            nxt = level[x] + 1
            for a in adj[x]:
                if res[a] > 0:
                    y = to[a]
                    if level[y] < 0:
                        level[y] = nxt
                        if y == sink:
                            return level
                        queue.append(y)
        return level

    def _blocking_flow(self, level: list[int]) -> int:
        to, res, adj, blocked = self.to, self.res, self.adj, self.blocked
        s, t = self.source, self.sink
        it = [0] * self.n_nodes
        pushed = 0
        stack = [s]
        path: list[int] = []
        while stack:
            x = stack[-1]
            if x == t:
                d = min(res[a] for a in path)
                for a in path:
                    res[a] -= d
                    if not blocked[a ^ 1]:
                        res[a ^ 1] += d
                pushed += d
                # retreat to the tail of the first saturated arc
                for j, a in enumerate(path):
                    if res[a] == 0:
                        del path[j:]
                        del stack[j + 1:]
                        break
                continue
            arcs = adj[x]
            i = it[x]
            want = level[x] + 1
            while i < len(arcs):
                a = arcs[i]
                if res[a] > 0 and level[to[a]] == want:
                    break
                i += 1
            it[x] = i
            if i < len(arcs):
                a = arcs[i]
                path.append(a)
                stack.append(to[a])
            else:
                level[x] = -1
                stack.pop()
                if path:
                    path.pop()
        return pushed

    def max_flow(self) -> int:
        """Augment to a maximum flow; returns the total value including any preload."""
        self.validate_flow()
        while True:
            level = self._levels()
            if level[self.sink] < 0:
                break
            self._blocking_flow(level)
        self._solved = True
        return self.value()

    def maximal_min_cut_source_side(self) -> set[int]:
        """Nodes that cannot reach the sink in the residual graph.

        This is the source side of the inclusion-maximal minimum cut.
        """
        if not self._solved:
            raise StateError("max_flow must run before extracting a cut")
        to, res, adj = self.to, self.res, self.adj
        reach = [False] * self.n_nodes
        reach[self.sink] = True
        queue = deque([self.sink])
        while queue:
            w = queue.popleft()
            for a in adj[w]:
                y = to[a]
                if not reach[y] and res[a ^ 1] > 0:
                    reach[y] = True
                    queue.append(y)
        return {v for v in range(self.n_nodes) if not reach[v]}

    def cut_capacity(self, side: set[int]) -> int:
        to = self.to
        return sum(
            self.cap[a]
            for a in range(0, len(to), 2)
            if to[a ^ 1] in side and to[a] not in side
        )


def max_flow(net: FlowNetwork) -> int:
    return net.max_flow()


def maximal_min_cut_source_side(net: FlowNetwork) -> set[int]:
    return net.maximal_min_cut_source_side()
