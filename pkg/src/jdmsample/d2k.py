"""Realizing a target JDM/DCM pair as a simple directed graph."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import InvariantBreach
from .graph import DirectedGraph
from .matrices import DegreeMatrix, extract_dcm, extract_jdm, line_sums


class Violation(NamedTuple):
    condition: str  # "out-stubs", "in-stubs" or "capacity"
    i: int
    j: int | None
    lhs: int
    rhs: int


@dataclass(frozen=True)
class D2KCheck:
    ok: bool
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_d2k(a: DegreeMatrix, b: DegreeMatrix) -> D2KCheck:
    """Check whether some simple digraph has JDM ``a`` and DCM ``b``.

    Three families of conditions, each reported with both sides:

    * out-stubs: ``sum_j a_ij == i * |V_i,out|`` for every i >= 1
    * in-stubs: ``sum_i a_ij == j * |V_j,in|`` for every j >= 1
    * capacity: ``a_ij + b_ij <= |V_i,out| * |V_j,in|``
    """
    la, lb = line_sums(a), line_sums(b)
    bad = []
    for i in sorted(set(la.rows) | set(lb.rows)):
        if i >= 1 and la.rows[i] != i * lb.rows[i]:
            bad.append(Violation("out-stubs", i, None, la.rows[i], i * lb.rows[i]))
    for j in sorted(set(la.cols) | set(lb.cols)):
        if j >= 1 and la.cols[j] != j * lb.cols[j]:
            bad.append(Violation("in-stubs", j, None, la.cols[j], j * lb.cols[j]))
    cells = set(a.entries) | {(i, j) for i, j in b.entries if i >= 1 and j >= 1}
    for i, j in sorted(cells):
        lhs = a[i, j] + b[i, j]
        rhs = lb.rows[i] * lb.cols[j]
        if lhs > rhs:
            bad.append(Violation("capacity", i, j, lhs, rhs))
    return D2KCheck(not bad, bad)


class ConstructionStuck(InvariantBreach):
    pass


MAX_ATTEMPTS = 16


def construct_graph(a: DegreeMatrix, b: DegreeMatrix, seed: int = 0) -> DirectedGraph:
    """Build a simple digraph whose JDM is ``a`` and whose DCM is ``b``.

    Nodes get fresh ids ``0..N-1``, handed out in DCM cell order. Class pairs
    are filled largest first; within a pair each edge joins the source with
    the most remaining out-stubs to the admissible target with the most
    remaining in-stubs. The seed only shuffles tie-break ranks.

    When every candidate pair is a loop or an existing edge, an edge already
    placed is moved between two nodes of the same out-class (or in-class),
    which leaves the JDM intact and frees a usable pair. Should that fail the
    build restarts with fresh ranks; running out of restarts raises
    :class:`ConstructionStuck`.
    """
    check = check_d2k(a, b)
    if not check:
        raise ValueError(f"targets are not realizable: {check.violations[:5]}")

    out_target: list[int] = []
    in_target: list[int] = []
    for (i, j), cnt in b.entries.items():
        out_target += [i] * cnt
        in_target += [j] * cnt

    rng = random.Random(seed)
    for _ in range(MAX_ATTEMPTS):
        rank = list(range(len(out_target)))
        rng.shuffle(rank)
        try:
            edges = _Builder(out_target, in_target, rank).run(a)
        except ConstructionStuck:
            continue
        g = DirectedGraph(frozenset(range(len(out_target))), frozenset(edges))
        if extract_jdm(g) != a or extract_dcm(g) != b:
            raise InvariantBreach("constructed graph does not reproduce the target matrices")
        return g
    raise ConstructionStuck(f"construction stuck after {MAX_ATTEMPTS} attempts")


class _Builder:
    def __init__(self, out_target, in_target, rank):
        self.out_res = list(out_target)
        self.in_res = list(in_target)
        self.out_of = out_target
        self.in_of = in_target
        self.rank = rank
        self.succ: list[set[int]] = [set() for _ in out_target]
        self.pred: list[set[int]] = [set() for _ in out_target]
        self.out_class: dict[int, list[int]] = {}
        self.in_class: dict[int, list[int]] = {}
        for u, (i, j) in enumerate(zip(out_target, in_target)):
            self.out_class.setdefault(i, []).append(u)
            self.in_class.setdefault(j, []).append(u)

    def run(self, a: DegreeMatrix) -> set[tuple[int, int]]:
        for (i, j), count in sorted(a.entries.items(), key=lambda kv: (-kv[1], kv[0])):
            self._fill_pair(i, j, count)
        if any(self.out_res) or any(self.in_res):
            raise InvariantBreach("stubs left over after all class pairs were filled")
        return {(u, v) for u, vs in enumerate(self.succ) for v in vs}

    def _add(self, u, v):
        self.succ[u].add(v)
        self.pred[v].add(u)

    def _remove(self, u, v):
        self.succ[u].discard(v)
        self.pred[v].discard(u)

    def _heaps(self, i, j):
        src = [(-self.out_res[u], self.rank[u], u) for u in self.out_class[i] if self.out_res[u] > 0]
        tgt = [(-self.in_res[v], self.rank[v], v) for v in self.in_class[j] if self.in_res[v] > 0]
        heapq.heapify(src)
        heapq.heapify(tgt)
        return src, tgt

    def _fill_pair(self, i, j, count):
        out_res, in_res, rank, succ = self.out_res, self.in_res, self.rank, self.succ
        src, tgt = self._heaps(i, j)
        for _ in range(count):
            deferred = []
            done = False
            while src and not done:
                s_item = heapq.heappop(src)
                u = s_item[2]
                skipped = []
                v = None
                while tgt:
                    t_item = heapq.heappop(tgt)
                    if t_item[2] != u and t_item[2] not in succ[u]:
                        v = t_item[2]
                        break
                    skipped.append(t_item)
                for t_item in skipped:
                    heapq.heappush(tgt, t_item)
                if v is None:
                    deferred.append(s_item)
                    continue
                self._add(u, v)
                out_res[u] -= 1
                in_res[v] -= 1
                if out_res[u]:
                    heapq.heappush(src, (-out_res[u], rank[u], u))
                if in_res[v]:
                    heapq.heappush(tgt, (-in_res[v], rank[v], v))
                done = True
            for s_item in deferred:
                heapq.heappush(src, s_item)
            if not done:
                u, v = self._repair(i, j, sorted(src), sorted(tgt))
                out_res[u] -= 1
                in_res[v] -= 1
                src, tgt = self._heaps(i, j)

    def _repair(self, i, j, src, tgt):
        # Every (u, v) with free stubs is a loop or already an edge. Each move
        # below only relocates existing edges between nodes of the same class,
        # so the JDM of what is placed so far is unchanged, and it ends with
        # u and v each spending one stub on a new (i, j) edge.
        for _, _, u in src:
            for _, _, v in tgt:
                if self._switch_out(i, u, v) or self._switch_in(j, u, v):
                    return u, v
        raise ConstructionStuck("no admissible switch for the class pair")

    def _switch_out(self, i, u, v):
        # move (x, w) to (u, w), then add (x, v)
        succ = self.succ
        for x in self.out_class[i]:
            if x == u or x == v or v in succ[x]:
                continue
            for w in succ[x]:
                if w != u and w not in succ[u]:
                    self._remove(x, w)
                    self._add(u, w)
                    self._add(x, v)
                    return True
        return False

    def _switch_in(self, j, u, v):
        # move (z, y) to (z, v), then add (u, y)
        succ, pred = self.succ, self.pred
        for y in self.in_class[j]:
            if y == v or y == u or y in succ[u]:
                continue
            for z in pred[y]:
                if z != v and v not in succ[z]:
                    self._remove(z, y)
                    self._add(z, v)
                    self._add(u, y)
                    return True
        return False
