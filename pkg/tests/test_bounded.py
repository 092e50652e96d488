import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jdmsample.bounded import BoundedMatrixInstance, construct, enumerate_feasible, graphical


def inst(rows, cols, p):
    return BoundedMatrixInstance(rows, cols, p)


def as_grid(d, nrows, ncols):
    return [[d.get((i, j), 0) for j in range(ncols)] for i in range(nrows)]


def check_output(instance, d):
    rows = {i: 0 for i in instance.row_sums}
    cols = {j: 0 for j in instance.col_sums}
    for (i, j), v in d.items():
        assert 0 <= v <= instance.cap
        rows[i] += v
        cols[j] += v
    assert rows == instance.row_sums and cols == instance.col_sums


@pytest.mark.parametrize(
    "rows, cols, p, expected",
    [
        ((0,), (0,), 0, True),
        ((3,), (1, 1), 1, False),
        ((2, 2), (2, 2), 1, True),
        ((2, 0), (1, 1), 1, True),
        ((2, 0), (2, 0), 1, False),
        ((1,), (1,), 0, False),
        ((1,), (1,), 1, True),
    ],
)
def test_graphical_examples(rows, cols, p, expected):
    assert bool(graphical(inst(rows, cols, p))) is expected
    assert enumerate_feasible(inst(rows, cols, p)) is expected


def test_graphical_reasons():
    f = graphical(inst((3,), (1, 1), 1))
    assert f.reason == "stub-imbalance" and f.witness["imbalance"] == 1
    f = graphical(inst((2, 0), (2, 0), 1))
    assert f.reason == "prefix-violation"
    assert f.witness == {"t": 1, "column_prefix": 2, "row_capacity": 1}
    assert graphical(inst((-1,), (-1,), 1)).reason == "negative-delta"


def test_negative_cap_rejected():
    with pytest.raises(ValueError):
        inst((1,), (1,), -1)


def test_construct_examples():
    assert as_grid(construct(inst((2, 1), (2, 1), 2)), 2, 2) == [[2, 0], [0, 1]]
    assert construct(inst((0, 0), (0, 0), 3)) == {}
    assert as_grid(construct(inst((2, 2), (2, 2), 1)), 2, 2) == [[1, 1], [1, 1]]


def test_construct_does_not_strand_a_remainder():
    # filling whole cells first would give rows [3, 3, 0] and [1, 1, 4 > cap]
    d = construct(inst((6, 6), (4, 4, 4), 3))
    check_output(inst((6, 6), (4, 4, 4), 3), d)


def test_construct_uses_degree_keys():
    instance = inst({1: 2, 3: 0, 4: 1}, {2: 2, 5: 1}, 2)
    d = construct(instance)
    check_output(instance, d)
    assert set(i for i, _ in d) <= {1, 4}


def test_construct_rejects_infeasible():
    with pytest.raises(ValueError):
        construct(inst((2, 0), (2, 0), 1))


def test_enumeration_size_guard():
    with pytest.raises(ValueError):
        enumerate_feasible(inst([1] * 8, [1] * 8, 10))


small = st.lists(st.integers(0, 6), min_size=1, max_size=3)


@given(small, small, st.integers(0, 3))
def test_graphical_matches_enumeration(rows, cols, p):
    assert bool(graphical(inst(rows, cols, p))) == enumerate_feasible(inst(rows, cols, p))


@given(small, small, st.integers(0, 4), st.integers(0, 3))
def test_graphical_monotone_in_cap(rows, cols, p, extra):
    if graphical(inst(rows, cols, p)):
        assert graphical(inst(rows, cols, p + extra))


@given(st.integers(0, 2**32))
def test_construct_on_random_feasible_instances(seed):
    rng = random.Random(seed)
    nr, nc, p = rng.randint(1, 8), rng.randint(1, 8), rng.randint(1, 10)
    grid = [[rng.randint(0, p) for _ in range(nc)] for _ in range(nr)]
    instance = inst([sum(r) for r in grid], [sum(c) for c in zip(*grid)], p)
    assert graphical(instance)
    check_output(instance, construct(instance))
