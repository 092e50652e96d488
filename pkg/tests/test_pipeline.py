import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jdmsample.d2k import check_d2k
from jdmsample.graph import DirectedGraph
from jdmsample.matrices import DCM, JDM, DegreeMatrix, extract_dcm, extract_jdm
from jdmsample.metrics import distributions, distributions_from_matrices
from jdmsample.pipeline import sample, sample_graph_input

from conftest import digraphs

PATH3 = DirectedGraph.from_edges([(1, 2), (2, 3), (1, 3)])


def test_k1_reproduces_matrices():
    run = sample_graph_input(PATH3, 1)
    assert run.ok and run.d == {}
    assert extract_jdm(run.graph) == extract_jdm(PATH3)
    assert extract_dcm(run.graph) == extract_dcm(PATH3)
    assert run.graph.num_nodes == 3


def test_halving_three_parallel_edges():
    # three disjoint edges u -> v; k = 2 rounds to one edge plus one unit of D
    a = DegreeMatrix({(1, 1): 3}, JDM)
    b = DegreeMatrix({(1, 0): 3, (0, 1): 3}, DCM)
    run = sample(a, b, 2)
    assert run.adjustment.r_delta == {1: 1}
    assert run.adjustment.p == 3
    assert run.d == {(1, 1): 1}
    assert run.a_target.entries == {(1, 1): 2}
    assert run.graph.num_nodes == 4 and run.graph.num_edges == 2


def test_halving_four_parallel_edges():
    a = DegreeMatrix({(1, 1): 4}, JDM)
    b = DegreeMatrix({(1, 0): 4, (0, 1): 4}, DCM)
    run = sample(a, b, 2)
    assert run.adjustment.p == 2 and run.d == {}
    assert run.graph.num_edges == 2


def test_infeasible_is_a_diagnosis_not_an_exception():
    g = DirectedGraph.from_edges([(1, 2), (1, 3), (1, 4), (5, 1)])
    run = sample_graph_input(g, 2)
    assert not run.ok
    assert run.diagnosis.stage == "stub-imbalance"
    assert run.to_dict()["outcome"] == "infeasible"


def test_negative_cap_diagnosis():
    g = DirectedGraph.from_edges([(u, v) for u in range(4) for v in range(4) if u != v])
    run = sample_graph_input(g, 2)
    assert run.diagnosis.stage == "negative-cap"
    assert run.adjustment is not None and run.adjustment.p < 0


def test_errors():
    with pytest.raises(ValueError):
        sample_graph_input(DirectedGraph.from_edges([]), 2)
    with pytest.raises(ValueError):
        sample(DegreeMatrix({(1, 1): 2}, JDM), DegreeMatrix({(1, 1): 1}, DCM), 1)


@given(digraphs(max_nodes=14))
def test_exact_at_k1(g):
    if not g.nodes:
        return
    run = sample_graph_input(g, 1)
    assert run.ok and run.d == {}
    assert extract_jdm(run.graph) == extract_jdm(g)
    assert extract_dcm(run.graph) == extract_dcm(g)
    assert distributions(run.graph) == distributions(g)


@settings(max_examples=80, deadline=None)
@given(digraphs(min_nodes=1, max_nodes=20), st.sampled_from(["3/2", "2", "5/2", "3", "5"]), st.integers(0, 50))
def test_successful_runs_keep_their_promises(g, k, seed):
    run = sample_graph_input(g, k, seed=seed)
    if not run.ok:
        assert run.diagnosis.stage in {"negative-cap", "stub-imbalance", "prefix-violation"}
        return
    # the realizability conditions hold for the adjusted targets
    assert check_d2k(run.a_target, run.b_target)
    assert extract_jdm(run.graph) == run.a_target
    assert extract_dcm(run.graph) == run.b_target
    got = distributions(run.graph)
    want = distributions_from_matrices(run.a_target, run.b_target)
    assert got.in_degree == want.in_degree and got.out_degree == want.out_degree
    b = extract_dcm(g)
    scaled = Fraction(b.total) / Fraction(k)
    assert scaled <= run.graph.num_nodes <= scaled + b.nnz
    assert run.graph.num_nodes == sum(math.ceil(Fraction(c) / Fraction(k)) for _, c in b)
    assert run.graph.num_edges == run.a_target.total


@settings(max_examples=20, deadline=None)
@given(digraphs(min_nodes=1, max_nodes=14), st.integers(0, 9))
def test_deterministic(g, seed):
    r1 = sample_graph_input(g, 2, seed=seed)
    r2 = sample_graph_input(g, 2, seed=seed)
    assert r1.to_dict() == r2.to_dict()
    assert r1.graph == r2.graph
