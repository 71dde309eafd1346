import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reggelab import tableaux


@st.composite
def partitions(draw, max_part=4):
    rows = sorted((draw(st.integers(0, max_part)) for _ in range(3)), reverse=True)
    return tuple(rows)


@st.composite
def weights(draw, total):
    a = draw(st.integers(0, total))
    b = draw(st.integers(0, total - a))
    return a, b, total - a - b


def shapes_of_size(n, max_part):
    return [p for p in itertools.product(range(max_part + 1), repeat=3) if sum(p) == n and p[0] >= p[1] >= p[2]]


def test_as_partition_pads():
    assert tableaux.as_partition((3, 1)) == (3, 1, 0)
    with pytest.raises(ValueError):
        tableaux.as_partition((1, 2))
    with pytest.raises(ValueError):
        tableaux.as_partition((1, 1, 1, 1))


def test_pieri_example():
    assert tableaux.pieri((1, 0, 0), 1) == [(2, 0, 0), (1, 1, 0)]


def test_pieri_zero_boxes():
    assert tableaux.pieri((2, 1, 0), 0) == [(2, 1, 0)]


def test_littlewood_richardson_example():
    assert tableaux.lr_contains((1, 0, 0), (1, 1, 0), (2, 1, 0)) == 1
    assert tableaux.lr_contains((1, 1, 0), (1, 0, 0), (2, 1, 0)) == 1
    assert tableaux.lr_contains((1, 0, 0), (1, 1, 0), (3, 0, 0)) == 0


def test_littlewood_richardson_multiplicity_two():
    assert tableaux.lr_contains((2, 1, 0), (2, 1, 0), (3, 2, 1)) == 2


@given(partitions(), st.integers(0, 3))
def test_pieri_agrees_with_littlewood_richardson(lam, a):
    expected = set(tableaux.pieri(lam, a))
    for nu in shapes_of_size(sum(lam) + a, max(lam) + a):
        assert (nu in expected) == (tableaux.lr_contains(lam, (a, 0, 0), nu) == 1)


def test_gt_count_example():
    assert tableaux.gt_count((2, 1, 0), (1, 1, 1)) == 2
    assert tableaux.gt_count((2, 1, 0), (3, 0, 0)) == 0


@given(st.integers(0, 4).flatmap(lambda q: st.tuples(st.integers(q, 5), st.just(q))), st.data())
def test_gt_count_is_symmetric_in_the_weight(pq, data):
    p, q = pq
    mu = data.draw(weights(p + q))
    counts = {tableaux.gt_count((p, q, 0), perm) for perm in itertools.permutations(mu)}
    assert len(counts) == 1


@given(st.integers(0, 4).flatmap(lambda q: st.tuples(st.integers(q, 5), st.just(q))), st.data())
def test_gt_patterns_interlace_and_have_weight(pq, data):
    p, q = pq
    mu = data.draw(weights(p + q))
    for pattern in tableaux.gt_patterns((p, q, 0), mu):
        assert pattern.is_interlacing()
        assert pattern.weight() == mu


@given(st.integers(0, 4).flatmap(lambda q: st.tuples(st.integers(q, 5), st.just(q))), st.data())
def test_gt_dual(pq, data):
    p, q = pq
    mu = data.draw(weights(p + q))
    if max(mu) > p:
        return
    patterns = tableaux.gt_patterns((p, q, 0), mu)
    duals = [tableaux.gt_dual(pattern, p) for pattern in patterns]
    for dual in duals:
        assert dual.top == (p, p - q, 0)
        assert dual.weight() == tuple(p - x for x in mu)
    assert len(set(duals)) == len(patterns)
    assert len(duals) == tableaux.gt_count((p, p - q, 0), tuple(p - x for x in mu))


def test_gt_dual_rejects_bad_input():
    pattern = tableaux.GTPattern((2, 1, 0), (2, 1), 1)
    with pytest.raises(tableaux.InterlacingViolation):
        tableaux.gt_dual(pattern, 1)
    with pytest.raises(tableaux.InterlacingViolation):
        tableaux.gt_dual(tableaux.GTPattern((2, 1, 0), (0, 0), 0), 3)
