"""Integerized linear rescaling and the adjustment problem derived from it."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import Infeasible, InvariantBreach
from .matrices import DCM, JDM, Cell, DegreeMatrix, consistency_check, line_sums


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


_ROUNDERS: dict[str, Callable[[Fraction], int]] = {
    "floor": math.floor,
    "ceil": math.ceil,
    "round": _round_half_up,
}

# mode -> (JDM rounding, DCM rounding)
ROUNDING_MODES = {
    "paper": ("floor", "ceil"),
    "floor-floor": ("floor", "floor"),
    "ceil-ceil": ("ceil", "ceil"),
    "round-round": ("round", "round"),
}


def parse_k(value) -> Fraction:
    """Exact sample coefficient from ``"5/2"``, ``"2.5"``, an int or a Fraction."""
    if isinstance(value, float):
        raise TypeError("pass k as a string, int or Fraction; floats are inexact")
    try:
        k = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse sample coefficient {value!r}") from exc
    if k <= 0:
        raise ValueError(f"sample coefficient must be positive, got {k}")
    return k


@dataclass(frozen=True)
class RescaledMatrices:
    a_prime: DegreeMatrix
    b_prime: DegreeMatrix
    a_ring: dict[Cell, Fraction]
    b_ring: dict[Cell, Fraction]
    k: Fraction
    rounding: str = "paper"


def rescale(a: DegreeMatrix, b: DegreeMatrix, k, rounding: str = "paper") -> RescaledMatrices:
    """Divide every entry by k exactly, then floor the JDM and ceil the DCM.

    Other rounding pairs are available through ``rounding`` but only the
    default pair carries the consistency guarantees the pipeline relies on.
    """
    k = parse_k(k)
    if rounding not in ROUNDING_MODES:
        raise ValueError(f"unknown rounding mode {rounding!r}")
    if rounding != "paper":
        warnings.warn(
            f"rounding mode {rounding!r}: consistency and capacity guarantees only hold for 'paper'",
            stacklevel=2,
        )
    if a.kind != JDM or b.kind != DCM:
        raise ValueError("rescale expects (JDM, DCM)")
    check = consistency_check(a, b)
    if not check:
        raise ValueError(
            f"inconsistent JDM/DCM: row residuals {check.row_residuals}, col residuals {check.col_residuals}"
        )
    round_a, round_b = (_ROUNDERS[r] for r in ROUNDING_MODES[rounding])
    a_ring = {cell: Fraction(c) / k for cell, c in a.entries.items()}
    b_ring = {cell: Fraction(c) / k for cell, c in b.entries.items()}
    a_prime = DegreeMatrix({cell: round_a(x) for cell, x in a_ring.items()}, JDM)
    b_prime = DegreeMatrix({cell: round_b(x) for cell, x in b_ring.items()}, DCM)
    return RescaledMatrices(a_prime, b_prime, a_ring, b_ring, k, rounding)


@dataclass(frozen=True)
class AdjustmentProblem:
    """Line sums and uniform entry cap for the matrix D added to A'.

    ``r_delta[i]`` is the number of out-stubs the rescaled DCM promises for
    out-degree i minus the edges A' already places there; ``c_delta`` is the
    same for in-stubs. ``p`` is the smallest slack ``l_ij - a'_ij`` over every
    class pair, and ``argmin`` is the (lexicographically first) pair that
    attains it.
    """

    r_delta: dict[int, int]
    c_delta: dict[int, int]
    p: int
    argmin: Cell | None
    r_b: dict[int, int]
    c_b: dict[int, int]
    a_prime: DegreeMatrix
    b_prime: DegreeMatrix

    def l(self, i: int, j: int) -> int:
        return self.r_b.get(i, 0) * self.c_b.get(j, 0) - self.b_prime[i, j]

    def pairs(self) -> list[Cell]:
        rows = [i for i in sorted(self.r_b) if i >= 1]
        cols = [j for j in sorted(self.c_b) if j >= 1]
        cells = {(i, j) for i in rows for j in cols}
        cells.update(self.a_prime.entries)
        return sorted(cells)

    def l_matrix(self) -> dict[Cell, int]:
        """Materialize L over all class pairs (quadratic in the number of degrees)."""
        return {cell: self.l(*cell) for cell in self.pairs()}

    def to_dict(self) -> dict:
        return {
            "r_delta": [[i, d] for i, d in self.r_delta.items()],
            "c_delta": [[j, d] for j, d in self.c_delta.items()],
            "p": self.p,
            "argmin": list(self.argmin) if self.argmin else None,
        }


def _min_slack(r_b: dict[int, int], c_b: dict[int, int], a_prime: DegreeMatrix, b_prime: DegreeMatrix):
    """min over class pairs of r_b(i)*c_b(j) - b'_ij - a'_ij, without building L.

    Pairs where both A' and B' are zero have slack r_b(i)*c_b(j); per row the
    best of those is found by walking columns in ascending c_b order and
    skipping the supported ones.
    """
    rows = sorted(i for i, r in r_b.items() if i >= 1 and r > 0)
    cols = sorted(j for j, c in c_b.items() if j >= 1 and c > 0)
    support_by_row: dict[int, set[int]] = {}
    explicit = set(a_prime.entries) | {(i, j) for (i, j) in b_prime.entries if i >= 1 and j >= 1}
    for i, j in explicit:
        support_by_row.setdefault(i, set()).add(j)

    best = None  # (value, i, j)

    def offer(value, i, j):
        nonlocal best
        if best is None or (value, i, j) < best:
            best = (value, i, j)

    for i, j in explicit:
        offer(r_b.get(i, 0) * c_b.get(j, 0) - b_prime[i, j] - a_prime[i, j], i, j)

    cols_by_c = sorted(cols, key=lambda j: (c_b[j], j))
    for i in rows:
        skip = support_by_row.get(i, ())
        for j in cols_by_c:
            if j in skip:
                continue
            # first unsupported column in (c, j) order is this row's minimum
            offer(r_b[i] * c_b[j], i, j)
            break
    if best is None:
        return None, None
    return best[0], (best[1], best[2])


def derive_adjustment(rm: RescaledMatrices) -> AdjustmentProblem:
    """Compute r_delta, c_delta and the cap p; raise ``Infeasible`` if p < 0."""
    a_sums = line_sums(rm.a_prime)
    b_sums = line_sums(rm.b_prime)
    r_b = {i: s for i, s in sorted(b_sums.rows.items())}
    c_b = {j: s for j, s in sorted(b_sums.cols.items())}

    row_keys = sorted({i for i in r_b if i >= 1} | {i for i in a_sums.rows if i >= 1})
    col_keys = sorted({j for j in c_b if j >= 1} | {j for j in a_sums.cols if j >= 1})
    r_delta = {i: i * b_sums.rows[i] - a_sums.rows[i] for i in row_keys}
    c_delta = {j: j * b_sums.cols[j] - a_sums.cols[j] for j in col_keys}

    if rm.rounding == "paper":
        neg = {i: d for i, d in r_delta.items() if d < 0} | {("col", j): d for j, d in c_delta.items() if d < 0}
        if neg:
            raise InvariantBreach(f"negative stub deficit under floor/ceil rounding: {neg}")

    p, argmin = _min_slack(r_b, c_b, rm.a_prime, rm.b_prime)
    if p is None:
        p = 0
    problem = AdjustmentProblem(r_delta, c_delta, p, argmin, r_b, c_b, rm.a_prime, rm.b_prime)
    if p < 0:
        i, j = argmin
        err = Infeasible(
            "negative-cap",
            f"adjustment cap negative at ({i}, {j}): p = {p}",
            {"i": i, "j": j, "p": p, "l": problem.l(i, j), "a_prime": rm.a_prime[i, j]},
        )
        err.problem = problem
        raise err
    return problem
