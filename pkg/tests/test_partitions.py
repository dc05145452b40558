import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagburnside.partitions import (
    InvalidPairError,
    Partition,
    b_stat,
    b_stat_conjugate,
    block_starts,
    dominance_leq,
    e_set_size,
    hook_count,
    multiplicity,
    orbit_dim,
    partitions_of,
    r_index,
    remove_box_set,
    syt_enumerate,
)


def P(*parts):
    return Partition(parts)


def test_validation_and_parse():
    with pytest.raises(ValueError):
        P(1, 2)
    with pytest.raises(ValueError):
        P(2, 0)
    assert Partition.parse("2,1,1") == P(2, 1, 1)
    assert str(P(3, 2, 2)) == "3,2,2"
    assert P(3, 1).conjugate() == P(2, 1, 1)


def test_partition_counts():
    # p(n) for n = 1..10
    assert [len(partitions_of(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_remove_box_set_examples():
    assert set(remove_box_set(P(2, 1))) == {P(1, 1), P(2)}
    assert remove_box_set(P(5)) == [P(4)]
    assert remove_box_set(P(2, 2)) == [P(2, 1)]


@pytest.mark.parametrize("n", range(1, 9))
def test_each_removal_is_one_corner(n):
    for lam in partitions_of(n):
        out = remove_box_set(lam)
        assert len(out) == len(set(out))
        corners = sum(1 for i in range(len(lam)) if i == len(lam) - 1 or lam[i] > lam[i + 1])
        assert len(out) == corners
        for mu in out:
            assert mu.n == n - 1


def test_r_index_examples():
    assert r_index(P(2, 1), P(2)) == 2
    assert r_index(P(2, 2), P(2, 1)) == 2
    assert r_index(P(3, 1), P(2, 1)) == 1
    with pytest.raises(InvalidPairError):
        r_index(P(3, 1), P(1, 1, 1, 1))


def test_multiplicity_examples():
    assert multiplicity(P(2, 2), P(2, 1)) == 2
    assert multiplicity(P(2, 1), P(1, 1)) == 1
    assert multiplicity(P(1, 1, 1), P(1, 1)) == 3


def test_block_starts_examples():
    assert list(block_starts(P(2, 1))) == [1, 3]
    assert list(block_starts(P(4))) == [1]
    assert list(block_starts(P(3, 2, 2))) == [1, 4, 6]


def test_e_set_size_examples():
    assert e_set_size(P(2, 1), P(2), 2) == 2
    assert e_set_size(P(2, 1), P(1, 1), 2) == 1
    for n in range(1, 6):
        for q in (2, 3, 7):
            assert e_set_size(P(*[1] * n), P(*[1] * (n - 1)) if n > 1 else Partition(()), q) == q**n - 1


def test_b_stat_examples():
    assert b_stat(P(6)) == 0
    assert b_stat(P(1, 1, 1, 1)) == 6
    assert b_stat(P(2, 1)) == 1


@pytest.mark.parametrize("n", range(1, 9))
def test_b_two_ways(n):
    assert all(b_stat(lam) == b_stat_conjugate(lam) for lam in partitions_of(n))


def test_dominance_examples():
    assert dominance_leq(P(1, 1, 1), P(3))
    assert dominance_leq(P(2, 2), P(3, 1))
    assert not dominance_leq(P(3, 1), P(2, 2))
    with pytest.raises(ValueError):
        dominance_leq(P(2), P(2, 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_b_reverses_dominance(n):
    parts = partitions_of(n)
    for lam in parts:
        for mu in parts:
            if dominance_leq(mu, lam):
                assert b_stat(mu) >= b_stat(lam)


def test_hook_count_examples():
    assert hook_count(P(7)) == 1
    assert hook_count(P(2, 1)) == 2
    assert hook_count(P(2, 1, 1)) == 3
    assert hook_count(P(3, 1, 1)) == 6


def test_syt_examples():
    assert [t.rows for t in syt_enumerate(P(1, 1, 1))] == [((1,), (2,), (3,))]
    assert sorted(t.rows for t in syt_enumerate(P(2, 1))) == [((1, 2), (3,)), ((1, 3), (2,))]
    assert sum(hook_count(lam) ** 2 for lam in partitions_of(4)) == 24


@pytest.mark.parametrize("n", range(1, 9))
def test_syt_enumeration_matches_hook_formula(n):
    total = 0
    for lam in partitions_of(n):
        tabs = syt_enumerate(lam)
        assert all(t.is_standard() and t.shape == lam for t in tabs)
        assert len(set(tabs)) == len(tabs) == hook_count(lam)
        total += len(tabs) ** 2
    assert total == math.factorial(n)


def test_orbit_dim_examples():
    assert orbit_dim(P(5)) == 20
    assert orbit_dim(P(1, 1, 1, 1)) == 0
    assert orbit_dim(P(2, 1)) == 4


@pytest.mark.parametrize("n", range(1, 11))
def test_b_and_orbit_dimension(n):
    for lam in partitions_of(n):
        assert 2 * b_stat(lam) + orbit_dim(lam) == n * n - n


@st.composite
def partitions(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(partitions_of(n)))


@given(partitions())
def test_conjugation_is_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().n == lam.n


@given(partitions())
def test_dominance_reverses_under_conjugation(lam):
    for mu in partitions_of(lam.n):
        assert dominance_leq(mu, lam) == dominance_leq(lam.conjugate(), mu.conjugate())
