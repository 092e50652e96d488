"""Simple directed graphs, edge-list I/O and degree tables."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, TextIO

COMMENT_PREFIXES = ("%", "#")


class EdgeListParseError(ValueError):
    def __init__(self, lineno: int, line: str, reason: str):
        super().__init__(f"line {lineno}: {reason}: {line.rstrip()!r}")
        self.lineno = lineno
        self.line = line


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable simple digraph. Antiparallel pairs are allowed, loops are not."""

    nodes: frozenset[int] = frozenset()
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(self.edges))
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) in a simple digraph")
            if u not in self.nodes or v not in self.nodes:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the node set")
        for u in self.nodes:
            if not isinstance(u, int) or u < 0:
                raise ValueError(f"node id {u!r} is not a non-negative integer")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], nodes: Iterable[int] = ()) -> "DirectedGraph":
        edges = frozenset(edges)
        all_nodes = set(nodes)
        for u, v in edges:
            all_nodes.add(u)
            all_nodes.add(v)
        return cls(frozenset(all_nodes), edges)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def isolated_nodes(self) -> list[int]:
        touched = {u for e in self.edges for u in e}
        return sorted(self.nodes - touched)

    def relabel(self, mapping: dict[int, int]) -> "DirectedGraph":
        return DirectedGraph(
            frozenset(mapping[u] for u in self.nodes),
            frozenset((mapping[u], mapping[v]) for u, v in self.edges),
        )


class Degree(NamedTuple):
    out_degree: int
    in_degree: int


@dataclass
class ParsedEdgeList:
    graph: DirectedGraph
    self_loops_dropped: int = 0
    duplicates_collapsed: int = 0
    lines_read: int = 0
    extra: dict = field(default_factory=dict)


def parse_edge_list(source: str | TextIO | Iterable[str]) -> ParsedEdgeList:
    """Read a KONECT-style edge list.

    Lines starting with ``%`` or ``#`` are comments. Each data line holds a
    source and a target id; trailing columns (weights, timestamps) are
    ignored. A line with a single id declares an isolated node, which is how
    :func:`write_edge_list` preserves degree-(0, 0) nodes.

    Self-loops are dropped and repeated pairs collapsed; both are counted in
    the returned :class:`ParsedEdgeList`. Endpoints of dropped self-loops stay
    in the node set.
    """
    if isinstance(source, str):
        source = io.StringIO(source)

    nodes: set[int] = set()
    edges: set[tuple[int, int]] = set()
    loops = dups = nlines = 0
    for lineno, line in enumerate(source, start=1):
        nlines += 1
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIXES):
            continue
        tokens = stripped.split()
        try:
            ids = [int(t) for t in tokens[:2]]
        except ValueError:
            raise EdgeListParseError(lineno, line, "expected integer node ids") from None
        if any(x < 0 for x in ids):
            raise EdgeListParseError(lineno, line, "negative node id")
        if len(ids) == 1:
            nodes.add(ids[0])
            continue
        u, v = ids
        nodes.add(u)
        nodes.add(v)
        if u == v:
            loops += 1
        elif (u, v) in edges:
            dups += 1
        else:
            edges.add((u, v))
    return ParsedEdgeList(DirectedGraph(frozenset(nodes), frozenset(edges)), loops, dups, nlines)


def read_edge_list(path) -> ParsedEdgeList:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh)


def write_edge_list(g: DirectedGraph) -> str:
    """Serialize as ``u<TAB>v`` lines sorted by (u, v), then isolated nodes one per line."""
    lines = [f"{u}\t{v}\n" for u, v in sorted(g.edges)]
    lines += [f"{u}\n" for u in g.isolated_nodes()]
    return "".join(lines)


def degrees(g: DirectedGraph) -> dict[int, Degree]:
    out = dict.fromkeys(g.nodes, 0)
    inn = dict.fromkeys(g.nodes, 0)
    for u, v in g.edges:
        out[u] += 1
        inn[v] += 1
    return {u: Degree(out[u], inn[u]) for u in g.nodes}
