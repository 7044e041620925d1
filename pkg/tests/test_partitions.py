from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qblowup.partitions import (Partition, enumerate_partitions, n_exponents, n_factor, n_factor_character,
                                pairs_up_to, partitions_of)

Q1, Q2 = Fr(5, 7), Fr(9, 13)


def test_enumerate_examples():
    assert enumerate_partitions(0) == (Partition(()),)
    assert enumerate_partitions(2) == (Partition(()), Partition((1,)), Partition((1, 1)), Partition((2,)))
    assert len(partitions_of(5)) == 7
    with pytest.raises(ValueError):
        enumerate_partitions(-1)


def test_partition_counts():
    # p(n) for n = 0..10
    assert [len(partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_pair_counts():
    # number of ordered pairs with total size n: 1, 2, 5, 10, 20
    sizes = [lp.size + lm.size for lp, lm in pairs_up_to(4)]
    assert [sizes.count(n) for n in range(5)] == [1, 2, 5, 10, 20]


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


@pytest.mark.parametrize("n", range(7))
def test_transpose_is_an_involution(n):
    for lam in partitions_of(n):
        assert lam.transpose().transpose() == lam
        assert lam.transpose().size == n


def test_n_factor_examples():
    v = Fr(3, 11)
    e, one = Partition(()), Partition((1,))
    assert n_factor(e, e, v, Q1, Q2) == 1
    assert n_factor(e, one, v, Q1, Q2) == 1 - v
    assert n_factor(one, e, v, Q1, Q2) == 1 - v * Q1 * Q2
    assert n_factor_character(one, e, v, Q1, Q2) == 1 - v * Q1 * Q2


small = st.integers(0, 4).flatmap(lambda n: st.sampled_from(partitions_of(n)))


@settings(max_examples=80, deadline=None)
@given(small, small, st.fractions(min_value=Fr(1, 9), max_value=9, max_denominator=101))
def test_two_forms_agree(lam, mu, v):
    # the cross-ratio form needs chi_x != chi_y, which holds for generic v
    if v in (Fr(1), Q1, Q2):
        return
    assert n_factor(lam, mu, v, Q1, Q2) == n_factor_character(lam, mu, v, Q1, Q2)


@settings(max_examples=60, deadline=None)
@given(small, small)
def test_product_form_matches_cancelled_character(lam, mu):
    assert sorted(n_exponents(lam, mu)) == sorted(oracles.nek_weights(tuple(lam), tuple(mu)))


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_n_factor_degree_in_v(lam, mu):
    # N is a polynomial in v of degree |lam| + |mu|: the finite difference of
    # that order is constant and the next one vanishes
    deg = lam.size + mu.size
    xs = [Fr(k + 2, 3) for k in range(deg + 2)]
    ys = [n_factor(lam, mu, x, Q1, Q2) for x in xs]
    diffs = ys
    for _ in range(deg + 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    assert diffs == [0]
