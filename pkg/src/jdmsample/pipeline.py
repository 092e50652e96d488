"""End-to-end sampling: rescale, adjust, realize."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .bounded import BoundedMatrixInstance, Feasibility, construct, graphical
from .d2k import check_d2k, construct_graph
from .errors import Infeasible, InvariantBreach
from .graph import DirectedGraph
from .matrices import JDM, DegreeMatrix, consistency_check, extract_dcm, extract_jdm
from .metrics import DeviationReport, distributions, distributions_from_matrices, deviation_bounds, verify_bounds
from .rescale import AdjustmentProblem, RescaledMatrices, derive_adjustment, parse_k, rescale


@dataclass
class SampleRun:
    a: DegreeMatrix
    b: DegreeMatrix
    k: Fraction
    seed: int
    rounding: str = "paper"
    refined: bool = True
    rescaled: RescaledMatrices | None = None
    adjustment: AdjustmentProblem | None = None
    feasibility: Feasibility | None = None
    d: dict = field(default_factory=dict)
    a_target: DegreeMatrix | None = None
    b_target: DegreeMatrix | None = None
    graph: DirectedGraph | None = None
    deviation: DeviationReport | None = None
    diagnosis: Infeasible | None = None

    @property
    def ok(self) -> bool:
        return self.graph is not None

    def to_dict(self) -> dict:
        rm, adj = self.rescaled, self.adjustment
        doc = {
            "k": str(self.k),
            "seed": self.seed,
            "rounding": self.rounding,
            "refined_bounds": self.refined,
            "outcome": "success" if self.ok else "infeasible",
            "jdm": self.a.to_list(),
            "dcm": self.b.to_list(),
        }
        if rm is not None:
            doc["a_prime"] = rm.a_prime.to_list()
            doc["b_prime"] = rm.b_prime.to_list()
        if adj is not None:
            doc["adjustment"] = adj.to_dict()
        if self.diagnosis is not None:
            doc["diagnosis"] = self.diagnosis.to_dict()
        if self.ok:
            doc["d"] = [[i, j, v] for (i, j), v in sorted(self.d.items())]
            doc["a_target"] = self.a_target.to_list()
            doc["b_target"] = self.b_target.to_list()
            doc["sample_nodes"] = self.graph.num_nodes
            doc["sample_edges"] = self.graph.num_edges
            doc["deviation"] = self.deviation.to_dict()
        return doc


def sample(a: DegreeMatrix, b: DegreeMatrix, k, seed: int = 0, rounding: str = "paper", refined: bool = True) -> SampleRun:
    """Sample a graph whose JDM/DCM are the given ones shrunk by a factor k.

    An infeasible k is not an error: the run comes back with ``ok == False``
    and ``diagnosis`` says which stage failed and why.
    """
    k = parse_k(k)
    if not consistency_check(a, b):
        raise ValueError("JDM and DCM are inconsistent")
    run = SampleRun(a, b, k, seed, rounding, refined)
    run.rescaled = rescale(a, b, k, rounding)
    try:
        run.adjustment = derive_adjustment(run.rescaled)
    except Infeasible as exc:
        run.adjustment = getattr(exc, "problem", None)
        run.diagnosis = exc
        return run

    adj = run.adjustment
    inst = BoundedMatrixInstance(adj.r_delta, adj.c_delta, adj.p)
    run.feasibility = graphical(inst)
    if not run.feasibility:
        run.diagnosis = Infeasible(
            run.feasibility.reason,
            f"adjustment matrix not realizable ({run.feasibility.reason})",
            run.feasibility.witness,
        )
        return run
    run.d = construct(inst)

    a_target = dict(run.rescaled.a_prime.entries)
    for cell, v in run.d.items():
        a_target[cell] = a_target.get(cell, 0) + v
    run.a_target = DegreeMatrix(a_target, JDM)
    run.b_target = run.rescaled.b_prime

    check = check_d2k(run.a_target, run.b_target)
    if not check:
        # the line-sum and cap construction guarantees these conditions
        raise InvariantBreach(f"realizability violated after adjustment: {check.violations[:5]}")

    run.graph = construct_graph(run.a_target, run.b_target, seed)
    achieved = distributions(run.graph)
    expected = distributions_from_matrices(run.a_target, run.b_target)
    if achieved.in_degree != expected.in_degree or achieved.out_degree != expected.out_degree:
        raise InvariantBreach("sample degree distributions differ from the target DCM marginals")

    report = deviation_bounds(run.rescaled.a_ring, run.rescaled.b_ring, adj.p, refined=refined)
    report.params["k"] = str(k)
    run.deviation = verify_bounds(achieved, report)
    return run


def sample_graph_input(g: DirectedGraph, k, seed: int = 0, rounding: str = "paper", refined: bool = True) -> SampleRun:
    if g.num_nodes == 0:
        raise ValueError("cannot sample an empty graph")
    return sample(extract_jdm(g), extract_dcm(g), k, seed, rounding, refined)
