import random
from fractions import Fraction

import pytest
from hypothesis import given

from jdmsample.graph import DirectedGraph
from jdmsample.matrices import (
    DCM,
    JDM,
    DegreeMatrix,
    consistency_check,
    extract_dcm,
    extract_jdm,
    line_sums,
    sparsity_coefficients,
    sparsity_report,
)

from conftest import digraphs

PATH3 = DirectedGraph.from_edges([(1, 2), (2, 3), (1, 3)])


def brute_jdm(g):
    # per-edge tally straight from the definition
    out = {u: sum(1 for x, _ in g.edges if x == u) for u in g.nodes}
    inn = {v: sum(1 for _, y in g.edges if y == v) for v in g.nodes}
    tally = {}
    for u, v in g.edges:
        tally[(out[u], inn[v])] = tally.get((out[u], inn[v]), 0) + 1
    return tally


def test_jdm_of_three_edges():
    assert extract_jdm(PATH3).entries == {(2, 1): 1, (1, 2): 1, (2, 2): 1}
    assert extract_jdm(PATH3).entries == brute_jdm(PATH3)


def test_jdm_edge_cases():
    assert extract_jdm(DirectedGraph.from_edges([])).entries == {}
    assert extract_jdm(DirectedGraph.from_edges([(3, 4)])).entries == {(1, 1): 1}


def test_dcm_examples():
    assert extract_dcm(PATH3).entries == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    assert extract_dcm(DirectedGraph.from_edges([], nodes=[1, 2, 3])).entries == {(0, 0): 3}
    assert extract_dcm(DirectedGraph.from_edges([(3, 4)])).entries == {(1, 0): 1, (0, 1): 1}


def test_line_sums():
    s = line_sums(extract_jdm(PATH3))
    assert dict(s.rows) == {1: 1, 2: 2} and dict(s.cols) == {1: 1, 2: 2}
    s = line_sums(DegreeMatrix({}, JDM))
    assert not s.rows and not s.cols
    s = line_sums({(3, 1): 4})
    assert dict(s.rows) == {3: 4} and dict(s.cols) == {1: 4}


def test_consistency():
    assert consistency_check(extract_jdm(PATH3), extract_dcm(PATH3))
    bad = consistency_check(DegreeMatrix({(1, 1): 2}, JDM), DegreeMatrix({(1, 0): 1, (0, 1): 1}, DCM))
    assert not bad
    assert bad.row_residuals == {1: 1}
    assert consistency_check(DegreeMatrix({}, JDM), DegreeMatrix({}, DCM))


def test_matrix_validation():
    with pytest.raises(ValueError):
        DegreeMatrix({(0, 1): 1}, JDM)
    with pytest.raises(ValueError):
        DegreeMatrix({(1, 1): -1}, DCM)
    assert DegreeMatrix({(1, 1): 0}, JDM).entries == {}


def test_tsv_and_list_round_trip():
    a = extract_jdm(PATH3)
    assert DegreeMatrix.from_tsv(a.to_tsv(), JDM) == a
    assert DegreeMatrix.from_list(a.to_list(), JDM) == a


def test_shapes():
    assert extract_jdm(PATH3).shape == (2, 2)
    # the DCM has a zero row and column
    assert extract_dcm(PATH3).shape == (3, 3)


def test_sparsity_report_small():
    rep = sparsity_report(DirectedGraph.from_edges([(1, 2)]))
    assert (rep.n, rep.e, rep.nnz_dcm, rep.nnz_jdm) == (2, 1, 2, 1)
    assert rep.pct_dcm == 1 and rep.pct_jdm == 1
    rep = sparsity_report(PATH3)
    assert (rep.n, rep.e, rep.nnz_dcm, rep.nnz_jdm) == (3, 3, 3, 3)
    assert rep.to_dict()["schema_version"] == 1


def test_sparsity_report_empty():
    with pytest.raises(ValueError, match="undefined percentages"):
        sparsity_report(DirectedGraph.from_edges([]))


def test_sparsity_coefficients_examples():
    sc = sparsity_coefficients(extract_jdm(PATH3))
    assert (sc.row(1), sc.row(2), sc.col(1), sc.col(2)) == (Fraction(1, 2), 0, Fraction(1, 2), 0)
    # row 1 is (0, 5, 0, 0) over four columns
    sc = sparsity_coefficients(DegreeMatrix({(1, 2): 5, (2, 4): 1}, JDM))
    assert sc.row(1) == Fraction(3, 4)
    dense = DegreeMatrix({(1, 1): 1, (1, 2): 1, (2, 1): 1, (2, 2): 1}, JDM)
    assert sparsity_coefficients(dense).row(1) == 0


@given(digraphs())
def test_totals_match_graph(g):
    assert extract_jdm(g).total == g.num_edges
    assert extract_dcm(g).total == g.num_nodes
    assert extract_jdm(g).entries == brute_jdm(g)


@given(digraphs())
def test_extracted_matrices_are_consistent(g):
    assert consistency_check(extract_jdm(g), extract_dcm(g))


@given(digraphs())
def test_relabeling_leaves_matrices_unchanged(g):
    ids = sorted(g.nodes)
    perm = ids[:]
    random.Random(len(ids)).shuffle(perm)
    h = g.relabel(dict(zip(ids, [x + 1000 for x in perm])))
    assert extract_jdm(h) == extract_jdm(g)
    assert extract_dcm(h) == extract_dcm(g)


@given(digraphs(min_nodes=2))
def test_sparsity_coefficients_in_unit_interval(g):
    a = extract_jdm(g)
    if not a.entries:
        return
    sc = sparsity_coefficients(a)
    m, n = sc.shape
    for i in a.row_indices():
        assert 0 <= sc.row(i) <= 1
        assert sc.row(i) == Fraction(n - sc.row_nnz[i], n)
    for i1 in a.row_indices():
        for i2 in a.row_indices():
            # more zeros in a row means a larger coefficient
            if sc.row_nnz[i1] < sc.row_nnz[i2]:
                assert sc.row(i1) > sc.row(i2)
