"""Degree distributions of a graph and deviation bounds for rescaled samples.

Everything is an exact :class:`~fractions.Fraction`; floats only appear when
a report is serialized.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .graph import DirectedGraph
from .matrices import DCM, JDM, Cell, DegreeMatrix, extract_dcm, extract_jdm, sparsity_coefficients

DISTRIBUTIONS = ("in_degree", "out_degree", "degree_correlation", "joint_degree")


def fmt(x) -> float | None:
    """Render to 12 significant digits for JSON/TSV output."""
    if x is None:
        return None
    return float(f"{float(x):.12g}")


@dataclass(frozen=True)
class DistributionSet:
    in_degree: dict[int, Fraction]
    out_degree: dict[int, Fraction]
    degree_correlation: dict[Cell, Fraction]
    joint_degree: dict[Cell, Fraction]
    node_count: int
    edge_count: int

    def to_tsv(self) -> str:
        lines = []
        for name in DISTRIBUTIONS:
            for key, val in sorted(getattr(self, name).items()):
                key = key if isinstance(key, tuple) else (key,)
                lines.append("\t".join([name, *map(str, key), repr(fmt(val))]))
        return "".join(line + "\n" for line in lines)


def distributions_from_matrices(a: DegreeMatrix, b: DegreeMatrix) -> DistributionSet:
    nodes = b.total
    edges = a.total
    if nodes == 0:
        raise ValueError("distributions of an empty graph are undefined")
    out_deg: Counter = Counter()
    in_deg: Counter = Counter()
    for (i, j), c in b.entries.items():
        out_deg[i] += c
        in_deg[j] += c
    return DistributionSet(
        in_degree={k: Fraction(c, nodes) for k, c in sorted(in_deg.items())},
        out_degree={k: Fraction(c, nodes) for k, c in sorted(out_deg.items())},
        degree_correlation={cell: Fraction(c, nodes) for cell, c in b.entries.items()},
        joint_degree={cell: Fraction(c, edges) for cell, c in a.entries.items()} if edges else {},
        node_count=nodes,
        edge_count=edges,
    )


def distributions(g: DirectedGraph) -> DistributionSet:
    if g.num_nodes == 0:
        raise ValueError("distributions of an empty graph are undefined")
    return distributions_from_matrices(extract_jdm(g), extract_dcm(g))


def distribution_distance(d1: DistributionSet, d2: DistributionSet) -> dict[str, dict[str, Fraction]]:
    """L1 and total-variation distance per distribution over the union of supports."""
    out = {}
    for name in DISTRIBUTIONS:
        p, q = getattr(d1, name), getattr(d2, name)
        l1 = sum((abs(p.get(k, 0) - q.get(k, 0)) for k in set(p) | set(q)), Fraction(0))
        out[name] = {"l1": l1, "tv": l1 / 2}
    return out


CORRELATION = "correlation"
JOINT = "joint"

INSIDE = "inside"
OUTSIDE = "outside"
DEGENERATE = "degenerate"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Interval:
    lower: Fraction | None
    upper: Fraction | None

    @property
    def degenerate(self) -> bool:
        return self.lower is None or self.upper is None or self.lower >= self.upper

    def contains(self, x) -> bool:
        # endpoints count as inside
        return self.lower <= x <= self.upper

    def within(self, other: "Interval") -> bool:
        return other.lower <= self.lower and self.upper <= other.upper


def _interval(num_lo, den_lo, num_hi, den_hi) -> Interval:
    lower = max(Fraction(0), num_lo / den_lo) if den_lo > 0 else None
    upper = num_hi / den_hi if den_hi > 0 else None
    return Interval(lower, upper)


@dataclass(frozen=True)
class BoundEntry:
    i: int
    j: int
    distribution: str
    refined: Interval | None
    unrefined: Interval | None
    use_refined: bool = True
    achieved: Fraction | None = None
    verdict: str | None = None

    @property
    def interval(self) -> Interval | None:
        return self.refined if self.use_refined else self.unrefined

    def to_dict(self) -> dict:
        iv = self.interval
        return {
            "i": self.i,
            "j": self.j,
            "distribution": self.distribution,
            "lower": fmt(iv.lower) if iv else None,
            "upper": fmt(iv.upper) if iv else None,
            "achieved": fmt(self.achieved),
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class DeviationReport:
    entries: list[BoundEntry]
    params: dict = field(default_factory=dict)

    def counts(self) -> dict[str, int]:
        return dict(Counter(e.verdict for e in self.entries if e.verdict))

    @property
    def all_inside(self) -> bool:
        """No entry lies outside its (non-degenerate) interval."""
        return all(e.verdict != OUTSIDE for e in self.entries)

    def by_verdict(self, verdict: str) -> list[BoundEntry]:
        return [e for e in self.entries if e.verdict == verdict]

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "counts": self.counts(),
            "entries": [e.to_dict() for e in self.entries],
        }


def _support(ring: Mapping[Cell, Fraction], kind: str) -> DegreeMatrix:
    return DegreeMatrix({cell: 1 for cell, v in ring.items() if v > 0}, kind)


def deviation_bounds(
    a_ring: Mapping[Cell, Fraction],
    b_ring: Mapping[Cell, Fraction],
    p: int,
    refined: bool = True,
) -> DeviationReport:
    """Per-entry intervals for the sample's degree-correlation and joint-degree fractions.

    ``a_ring``/``b_ring`` are the exact rescaled JDM/DCM (entries a/k, b/k)
    and ``p`` the adjustment cap. For each nonzero cell the interval is::

        correlation: ( b/(S_b + M_b - 1),             (b + 1)/(S_b + 1) )
        joint:       ( (a - 1)/(S_a + M_a*p - p - 1), (a + p)/(S_a + p - M_a + 1) )

    where S is the matrix total and M the number of cells that may carry
    rounding error. Unrefined, M is the full logical shape (rows * cols);
    refined, M is (nonzeros in column j) * (nonzeros in row i). Lower ends are
    clamped at 0. A bound with a non-positive denominator, or with
    lower >= upper, is degenerate.
    """
    if p < 0:
        raise ValueError("adjustment cap must be non-negative")
    entries: list[BoundEntry] = []
    params: dict = {"p": p, "refined": refined}
    for ring, kind, dist in ((b_ring, DCM, CORRELATION), (a_ring, JDM, JOINT)):
        support = _support(ring, kind)
        if not support.entries:
            continue
        total = sum(ring.values(), Fraction(0))
        rows, cols = support.shape
        sc = sparsity_coefficients(support)
        params[f"{dist}_shape"] = [rows, cols]
        params[f"{dist}_total"] = fmt(total)
        full = rows * cols
        for (i, j) in support.entries:
            x = ring[(i, j)]
            # rows * (1 - s_C(j)) and cols * (1 - s_R(i)); exact integers
            m_ref = rows * (1 - sc.col(j))
            n_ref = cols * (1 - sc.row(i))
            ivs = []
            for m_cells in (full, m_ref * n_ref):
                if dist == CORRELATION:
                    ivs.append(_interval(x, total + m_cells - 1, x + 1, total + 1))
                else:
                    ivs.append(_interval(x - 1, total + m_cells * p - p - 1, x + p, total + p - m_cells + 1))
            entries.append(BoundEntry(i, j, dist, refined=ivs[1], unrefined=ivs[0], use_refined=refined))
    return DeviationReport(entries, params)


def verify_bounds(sample: DistributionSet, report: DeviationReport) -> DeviationReport:
    """Attach achieved values and verdicts. Boundary values count as inside."""
    achieved = {CORRELATION: sample.degree_correlation, JOINT: sample.joint_degree}
    out = []
    seen = set()
    for e in report.entries:
        value = achieved[e.distribution].get((e.i, e.j), Fraction(0))
        seen.add((e.distribution, e.i, e.j))
        iv = e.interval
        if iv.degenerate:
            verdict = DEGENERATE
        else:
            verdict = INSIDE if iv.contains(value) else OUTSIDE
        out.append(replace(e, achieved=value, verdict=verdict))
    for dist, values in achieved.items():
        for (i, j), value in sorted(values.items()):
            if (dist, i, j) not in seen and value:
                out.append(BoundEntry(i, j, dist, None, None, achieved=value, verdict=UNBOUNDED))
    return DeviationReport(out, dict(report.params))
