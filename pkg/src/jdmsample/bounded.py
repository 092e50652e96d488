"""Nonnegative integer matrices with given line sums and a uniform entry cap.

This is the adjustment matrix D of the sampler: rows and columns are keyed
by degree value, every entry lies in ``[0, cap]``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import InvariantBreach


def _as_keyed(sums: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
    if isinstance(sums, Mapping):
        return {int(k): int(v) for k, v in sums.items()}
    return {i: int(v) for i, v in enumerate(sums)}


@dataclass(frozen=True)
class BoundedMatrixInstance:
    row_sums: dict[int, int]
    col_sums: dict[int, int]
    cap: int

    def __init__(self, row_sums, col_sums, cap: int):
        if cap < 0:
            raise ValueError(f"entry cap must be non-negative, got {cap}")
        object.__setattr__(self, "row_sums", _as_keyed(row_sums))
        object.__setattr__(self, "col_sums", _as_keyed(col_sums))
        object.__setattr__(self, "cap", int(cap))


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    reason: str | None = None
    witness: dict | None = None

    def __bool__(self):
        return self.ok


def graphical(inst: BoundedMatrixInstance) -> Feasibility:
    """Decide whether a matrix with entries in [0, cap] and the given line sums exists.

    Besides equal totals, the t largest column sums must fit into what the
    rows can deliver to t columns: ``sum_i min(r_i, t * cap)``. That is the
    min-cut bound of the transportation network, so it is also sufficient.
    """
    rows = list(inst.row_sums.values())
    cols = sorted(inst.col_sums.values(), reverse=True)
    negative = {k: v for k, v in inst.row_sums.items() if v < 0}
    negative_cols = {k: v for k, v in inst.col_sums.items() if v < 0}
    if negative or negative_cols:
        return Feasibility(False, "negative-delta", {"rows": negative, "cols": negative_cols})
    total_r, total_c = sum(rows), sum(cols)
    if total_r != total_c:
        return Feasibility(
            False, "stub-imbalance", {"row_total": total_r, "col_total": total_c, "imbalance": total_r - total_c}
        )
    prefix = 0
    for t, c in enumerate(cols, start=1):
        prefix += c
        supply = sum(min(r, t * inst.cap) for r in rows)
        if prefix > supply:
            return Feasibility(False, "prefix-violation", {"t": t, "column_prefix": prefix, "row_capacity": supply})
    return Feasibility(True)


def construct(inst: BoundedMatrixInstance) -> dict[tuple[int, int], int]:
    """Build one feasible matrix greedily; returns the nonzero cells.

    Rows are taken in descending sum order. A row hands out its sum one unit
    at a time, always to the column with the largest residual whose cell is
    still below the cap (ties: ascending key). Filling whole cells at once
    can strand a remainder, e.g. rows (6, 6), cols (4, 4, 4), cap 3.
    The result is checked before it is returned.
    """
    feas = graphical(inst)
    if not feas:
        raise ValueError(f"construct called on an infeasible instance ({feas.reason}: {feas.witness})")

    col_res = dict(inst.col_sums)
    out: dict[tuple[int, int], int] = {}
    for i in sorted(inst.row_sums, key=lambda k: (-inst.row_sums[k], k)):
        need = inst.row_sums[i]
        if need == 0 or inst.cap == 0:
            continue
        heap = [(-c, j) for j, c in col_res.items() if c > 0]
        heapq.heapify(heap)
        row: dict[int, int] = {}
        while need and heap:
            _, j = heapq.heappop(heap)
            row[j] = row.get(j, 0) + 1
            col_res[j] -= 1
            need -= 1
            if col_res[j] > 0 and row[j] < inst.cap:
                heapq.heappush(heap, (-col_res[j], j))
        for j, v in row.items():
            out[(i, j)] = v
    _post_check(inst, out)
    return out


def _post_check(inst: BoundedMatrixInstance, d: dict[tuple[int, int], int]) -> None:
    rows = dict.fromkeys(inst.row_sums, 0)
    cols = dict.fromkeys(inst.col_sums, 0)
    for (i, j), v in d.items():
        if not 0 <= v <= inst.cap or i not in rows or j not in cols:
            raise InvariantBreach(f"construction invariant breach at ({i}, {j}) = {v}")
        rows[i] += v
        cols[j] += v
    if rows != inst.row_sums or cols != inst.col_sums:
        raise InvariantBreach("construction invariant breach: line sums differ")


ENUMERATION_LIMIT = 10**7


def enumerate_feasible(inst: BoundedMatrixInstance) -> bool:
    """Exhaustive search for a witness matrix. For tests on tiny instances.

    Rows are filled one at a time with every admissible vector; the search
    is memoized on (row, remaining column sums) so each state is visited
    once.
    """
    rows = tuple(inst.row_sums.values())
    cols = tuple(inst.col_sums.values())
    p = inst.cap
    if (p + 1) ** (len(rows) * len(cols)) > ENUMERATION_LIMIT:
        raise ValueError("instance too large for exhaustive enumeration")
    if any(v < 0 for v in rows + cols):
        return False

    def row_vectors(target, limits):
        # all vectors x with 0 <= x_j <= min(p, limits_j) and sum(x) == target
        if not limits:
            if target == 0:
                yield ()
            return
        head, tail = limits[0], limits[1:]
        for x in range(min(p, head, target) + 1):
            for rest in row_vectors(target - x, tail):
                yield (x,) + rest

    @lru_cache(maxsize=None)
    def solve(r, col_res):
        if r == len(rows):
            return not any(col_res)
        for vec in row_vectors(rows[r], col_res):
            if solve(r + 1, tuple(c - x for c, x in zip(col_res, vec))):
                return True
        return False

    return solve(0, cols)
