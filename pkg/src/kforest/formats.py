"""Text formats for graphs and solutions.

Graph file::

    c <comment>
    p kforest <n> <m> <k>
    e <u> <v>          (m lines, 1-indexed endpoints; edge id = line order)

Solution file::

    s kforest <size>
    a <edge_id> <forest_index>     (size lines)
"""

from __future__ import annotations

import logging
from typing import Iterable, TextIO

from .errors import ParseError
from .graph import ForestFamily, MultiGraph

log = logging.getLogger(__name__)


def _ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def _lines(source: str | Iterable[str]) -> Iterable[str]:
    return source.splitlines() if isinstance(source, str) else source


def parse_graph(source: str | Iterable[str] | TextIO) -> tuple[MultiGraph, int]:
    """Read a graph file from text or an iterable of lines. Returns ``(graph, k)``."""
    g = None
    n = m = k = 0
    count = 0
    for lineno, line in enumerate(_lines(source), start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        tag = fields[0]
        if tag == "p":
            if g is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(fields) != 5 or fields[1] != "kforest":
                raise ParseError("problem line must be 'p kforest <n> <m> <k>'", lineno)
            n, m, k = _ints(fields[2:], lineno)
            if n < 0 or m < 0 or k < 1:
                raise ParseError("need n >= 0, m >= 0, k >= 1", lineno)
            g = MultiGraph(n)
        elif tag == "e":
            if g is None:
                raise ParseError("edge line before problem line", lineno)
            if len(fields) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            u, v = _ints(fields[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"endpoint outside 1..{n}", lineno)
            count += 1
            if count > m:
                raise ParseError(f"more than the declared {m} edges", lineno)
            if g.add_edge(u - 1, v - 1, count) is None:
                log.warning("line %d: self-loop on vertex %d dropped", lineno, u)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if g is None:
        raise ParseError("missing problem line")
    if count != m:
        raise ParseError(f"declared {m} edges but found {count}")
    return g, k


def format_graph(g: MultiGraph, k: int, comments: Iterable[str] = ()) -> str:
    """Graph file text. Ids must be ``1..m'`` counting dropped self-loops."""
    items = {e: (u, v) for e, u, v in g.edges()}
    items.update({e: (v, v) for e, v in g.loops.items()})
    ids = sorted(items)
    if ids != list(range(1, len(ids) + 1)):
        raise ValueError("edge ids must be consecutive from 1 to be written")
    if g.vertices() != list(range(g.vertex_bound)):
        raise ValueError("only uncontracted graphs can be written")
    out = [f"c {c}" for c in comments]
    out.append(f"p kforest {g.vertex_bound} {len(ids)} {k}")
    out.extend(f"e {items[e][0] + 1} {items[e][1] + 1}" for e in ids)
    return "\n".join(out) + "\n"


def parse_solution(source: str | Iterable[str] | TextIO) -> list[tuple[int, int]]:
    """Raw ``(edge_id, forest)`` pairs; repeats are kept for the verifier to flag."""
    size = None
    pairs: list[tuple[int, int]] = []
    for lineno, line in enumerate(_lines(source), start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "s":
            if size is not None or len(fields) != 3 or fields[1] != "kforest":
                raise ParseError("solution line must be a single 's kforest <size>'", lineno)
            (size,) = _ints(fields[2:], lineno)
        elif fields[0] == "a":
            if size is None:
                raise ParseError("assignment before solution line", lineno)
            if len(fields) != 3:
                raise ParseError("assignment must be 'a <edge_id> <forest_index>'", lineno)
            e, i = _ints(fields[1:], lineno)
            pairs.append((e, i))
        else:
            raise ParseError(f"unknown line type {fields[0]!r}", lineno)
    if size is None:
        raise ParseError("missing solution line")
    if size != len(pairs):
        raise ParseError(f"declared size {size} but found {len(pairs)} assignments")
    return pairs


def format_solution(fam: ForestFamily) -> str:
    out = [f"s kforest {len(fam)}"]
    out.extend(f"a {e} {i}" for e, i in sorted(fam.assignment.items()))
    return "\n".join(out) + "\n"
