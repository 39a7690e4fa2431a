"""Seeded random instances."""

from __future__ import annotations

import random

from .errors import GenerationError, InputError
from .graph import MultiGraph

MAX_RETRIES = 50


def gnm(n: int, m: int, seed: int) -> MultiGraph:
    """Uniform multigraph with exactly ``m`` edges; self-loops are redrawn."""
    if n < 0 or m < 0:
        raise InputError("n and m must be non-negative")
    if m and n < 2:
        raise GenerationError("edges need at least two vertices")
    rng = random.Random(seed)
    g = MultiGraph(n)
    while g.m < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            g.add_edge(u, v)
    return g


def _wilson_tree(n: int, used: set[frozenset], rng: random.Random) -> list[tuple[int, int]] | None:
    """Uniform spanning tree of the complete graph minus ``used`` (loop-erased walks)."""
    nbrs = [[w for w in range(n) if w != v and frozenset((v, w)) not in used] for v in range(n)]
    if any(not nb for nb in nbrs) and n > 1:
        return None
    in_tree = [False] * n
    nxt = [-1] * n
    root = rng.randrange(n)
    in_tree[root] = True
    order = list(range(n))
    rng.shuffle(order)
    budget = 200 * n * n
    for start in order:
        v = start
        while not in_tree[v]:
            nxt[v] = rng.choice(nbrs[v])
            v = nxt[v]
            budget -= 1
            if budget < 0:
                return None
        v = start
        while not in_tree[v]:
            in_tree[v] = True
            v = nxt[v]
    return [(v, nxt[v]) for v in range(n) if v != root]


def ktrees(n: int, k: int, seed: int) -> MultiGraph:
    """Union of ``k`` edge-disjoint spanning trees of ``K_n``, edges shuffled.

    Each tree is uniform among spanning trees of the complete graph minus
    the earlier trees. The optimum of the result is ``k * (n - 1)``.
    """
    if n < 1 or k < 1:
        raise InputError("n and k must be positive")
    if n > 1 and n < 2 * k:
        raise GenerationError(f"K_{n} cannot hold {k} edge-disjoint spanning trees")
    rng = random.Random(seed)
    for _ in range(MAX_RETRIES):
        used: set[frozenset] = set()
        pairs: list[tuple[int, int]] = []
        for _ in range(k):
            tree = _wilson_tree(n, used, rng)
            if tree is None:
                break
            used.update(frozenset(p) for p in tree)
            pairs.extend(tree)
        else:
            rng.shuffle(pairs)
            return MultiGraph.from_edges(n, pairs)
    raise GenerationError(f"no {k} edge-disjoint spanning trees found after {MAX_RETRIES} attempts")
