"""Random digraph generators used by the test and acceptance suites."""

from __future__ import annotations

import random
from collections import Counter

from .graph import DirectedGraph

POWERLAW_DEGREES = (1, 2, 3, 4, 5, 6, 8, 10, 12, 14, 16, 20, 24, 32)


def gnp_digraph(n: int, p: float, seed: int | random.Random = 0) -> DirectedGraph:
    """Each of the n*(n-1) ordered pairs is an edge with probability p. Isolated nodes are kept."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    edges = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p}
    return DirectedGraph(frozenset(range(n)), frozenset(edges))


def powerlaw_degree_sequence(n: int, exponent: float = 2.0, max_degree: int = 12, min_class: int = 6) -> list[int]:
    """Degree sequence with class sizes proportional to ``d ** -exponent``.

    Every degree value gets at least ``min_class`` nodes, so the tail is
    heavy in degree but never thin in node count. The sum is made even.
    """
    values = [d for d in POWERLAW_DEGREES if d <= max_degree]
    weights = [d**-exponent for d in values]
    total = sum(weights)
    degs = []
    for d, w in zip(values, weights):
        degs += [d] * max(min_class, round(n * w / total))
    if sum(degs) % 2:
        degs.append(1)
    return degs


def _simple_matching(degs: list[int], rng: random.Random, max_rounds: int = 10_000) -> set[tuple[int, int]]:
    stubs = [u for u, d in enumerate(degs) for _ in range(d)]
    rng.shuffle(stubs)
    pairs = [[stubs[2 * t], stubs[2 * t + 1]] for t in range(len(stubs) // 2)]

    def key(e):
        return (e[0], e[1]) if e[0] < e[1] else (e[1], e[0])

    for _ in range(max_rounds):
        seen = Counter(key(e) for e in pairs)
        bad = [t for t, e in enumerate(pairs) if e[0] == e[1] or seen[key(e)] > 1]
        if not bad:
            return {key(e) for e in pairs}
        # degree-preserving double edge swaps on the offending pairs
        for t in bad:
            s = rng.randrange(len(pairs))
            (a, b), (c, d) = pairs[t], pairs[s]
            if rng.random() < 0.5:
                pairs[t], pairs[s] = [a, d], [c, b]
            else:
                pairs[t], pairs[s] = [a, c], [b, d]
    raise RuntimeError("could not rewire the configuration model into a simple graph")


def reciprocal_powerlaw_digraph(
    n: int, seed: int | random.Random = 0, exponent: float = 2.0, max_degree: int = 12, min_class: int = 6
) -> DirectedGraph:
    """Heavy-tailed digraph in which every edge is reciprocated.

    An undirected configuration-model graph (rewired until simple) is turned
    into a digraph with both orientations of each edge, so each node's
    out-degree equals its in-degree and the DCM is diagonal. The node count
    is close to, not exactly, ``n``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    degs = powerlaw_degree_sequence(n, exponent, max_degree, min_class)
    und = _simple_matching(degs, rng)
    edges = {(u, v) for u, v in und} | {(v, u) for u, v in und}
    return DirectedGraph(frozenset(range(len(degs))), frozenset(edges))
