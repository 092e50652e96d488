"""Joint degree matrix (JDM) and degree correlation matrix (DCM).

Both are stored sparsely as ``{(row_degree, col_degree): count}``. Rows are
out-degrees and columns in-degrees. A JDM counts edges by (source out-degree,
target in-degree); a DCM counts nodes by (out-degree, in-degree).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .graph import DirectedGraph, degrees

JDM = "JDM"
DCM = "DCM"

Cell = tuple[int, int]


@dataclass(frozen=True, eq=False)
class DegreeMatrix:
    entries: Mapping[Cell, int]
    kind: str

    def __post_init__(self):
        if self.kind not in (JDM, DCM):
            raise ValueError(f"unknown matrix kind {self.kind!r}")
        clean = {}
        lo = 1 if self.kind == JDM else 0
        for (i, j), c in self.entries.items():
            if c < 0:
                raise ValueError(f"negative count {c} at ({i}, {j})")
            if i < lo or j < lo:
                raise ValueError(f"{self.kind} index ({i}, {j}) below {lo}")
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __eq__(self, other):
        if not isinstance(other, DegreeMatrix):
            return NotImplemented
        return self.kind == other.kind and self.entries == other.entries

    def __hash__(self):
        return hash((self.kind, tuple(self.entries.items())))

    def __getitem__(self, cell: Cell) -> int:
        return self.entries.get(cell, 0)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def __repr__(self):
        return f"DegreeMatrix({self.kind}, {dict(self.entries)})"

    @property
    def m(self) -> int:
        """Largest row degree with a nonzero entry (0 when empty)."""
        return max((i for i, _ in self.entries), default=0)

    @property
    def n(self) -> int:
        return max((j for _, j in self.entries), default=0)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        """Logical dense shape: degrees 1..m x 1..n for a JDM, 0..m x 0..n for a DCM."""
        if not self.entries:
            return (0, 0)
        extra = 0 if self.kind == JDM else 1
        return (self.m + extra, self.n + extra)

    def row_indices(self) -> range:
        return range(1 if self.kind == JDM else 0, self.m + 1) if self.entries else range(0)

    def col_indices(self) -> range:
        return range(1 if self.kind == JDM else 0, self.n + 1) if self.entries else range(0)

    def to_tsv(self) -> str:
        return "".join(f"{i}\t{j}\t{c}\n" for (i, j), c in self.entries.items())

    @classmethod
    def from_tsv(cls, text: str, kind: str) -> "DegreeMatrix":
        entries = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith(("%", "#")):
                continue
            i, j, c = (int(t) for t in line.split()[:3])
            entries[(i, j)] = entries.get((i, j), 0) + c
        return cls(entries, kind)

    def to_list(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in self.entries.items()]

    @classmethod
    def from_list(cls, rows: Iterable[Iterable[int]], kind: str) -> "DegreeMatrix":
        return cls({(int(i), int(j)): int(c) for i, j, c in rows}, kind)


def extract_jdm(g: DirectedGraph) -> DegreeMatrix:
    deg = degrees(g)
    counts = Counter((deg[u].out_degree, deg[v].in_degree) for u, v in g.edges)
    return DegreeMatrix(counts, JDM)


def extract_dcm(g: DirectedGraph) -> DegreeMatrix:
    counts = Counter(degrees(g).values())
    return DegreeMatrix({tuple(d): c for d, c in counts.items()}, DCM)


@dataclass(frozen=True)
class LineSums:
    rows: Counter
    cols: Counter


def line_sums(entries: Mapping[Cell, int] | DegreeMatrix) -> LineSums:
    """Row and column sums; missing degrees read as 0."""
    if isinstance(entries, DegreeMatrix):
        entries = entries.entries
    rows: Counter = Counter()
    cols: Counter = Counter()
    for (i, j), c in entries.items():
        rows[i] += c
        cols[j] += c
    return LineSums(rows, cols)


@dataclass(frozen=True)
class ConsistencyResult:
    ok: bool
    row_residuals: dict[int, int]
    col_residuals: dict[int, int]

    def __bool__(self):
        return self.ok


def consistency_check(a: DegreeMatrix | Mapping[Cell, int], b: DegreeMatrix | Mapping[Cell, int]) -> ConsistencyResult:
    """Stub-count consistency between a JDM and a DCM.

    For every degree i >= 1 the JDM row sum must equal i times the number of
    DCM nodes with out-degree i, and likewise for columns and in-degrees.
    Only nonzero residuals (JDM side minus DCM side) are reported.
    """
    ls_a, ls_b = line_sums(a), line_sums(b)
    row_res = {}
    for i in sorted(set(ls_a.rows) | set(ls_b.rows)):
        if i >= 1 and (r := ls_a.rows[i] - i * ls_b.rows[i]):
            row_res[i] = r
    col_res = {}
    for j in sorted(set(ls_a.cols) | set(ls_b.cols)):
        if j >= 1 and (r := ls_a.cols[j] - j * ls_b.cols[j]):
            col_res[j] = r
    return ConsistencyResult(not row_res and not col_res, row_res, col_res)


@dataclass(frozen=True)
class SparsityReport:
    n: int
    e: int
    nnz_dcm: int
    nnz_jdm: int

    @property
    def pct_dcm(self) -> Fraction:
        return Fraction(self.nnz_dcm, self.n)

    @property
    def pct_jdm(self) -> Fraction:
        return Fraction(self.nnz_jdm, self.e)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "n": self.n,
            "e": self.e,
            "nnz_dcm": self.nnz_dcm,
            "nnz_jdm": self.nnz_jdm,
            "pct_dcm": float(f"{float(self.pct_dcm):.4g}"),
            "pct_jdm": float(f"{float(self.pct_jdm):.4g}"),
        }


def sparsity_report(g: DirectedGraph) -> SparsityReport:
    if g.num_nodes == 0 or g.num_edges == 0:
        raise ValueError("undefined percentages: graph has no nodes or no edges")
    return SparsityReport(g.num_nodes, g.num_edges, extract_dcm(g).nnz, extract_jdm(g).nnz)


@dataclass(frozen=True)
class SparsityCoefficients:
    """Fraction of zero cells per row and per column over the logical shape."""

    rows: dict[int, Fraction]
    cols: dict[int, Fraction]
    shape: tuple[int, int]
    row_nnz: Counter
    col_nnz: Counter

    def row(self, i: int) -> Fraction:
        return self.rows.get(i, Fraction(1))

    def col(self, j: int) -> Fraction:
        return self.cols.get(j, Fraction(1))


def sparsity_coefficients(a: DegreeMatrix) -> SparsityCoefficients:
    m, n = a.shape
    if m == 0 or n == 0:
        raise ValueError("sparsity coefficients need a non-empty matrix")
    row_nnz: Counter = Counter()
    col_nnz: Counter = Counter()
    for i, j in a.entries:
        row_nnz[i] += 1
        col_nnz[j] += 1
    rows = {i: Fraction(n - row_nnz[i], n) for i in a.row_indices()}
    cols = {j: Fraction(m - col_nnz[j], m) for j in a.col_indices()}
    return SparsityCoefficients(rows, cols, (m, n), row_nnz, col_nnz)
