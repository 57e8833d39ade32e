from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hlab.characters import (
    central_character,
    character_frobenius,
    character_table,
    character_value,
)
from hlab.errors import CapacityError
from hlab.partitions import Partition, dim_sym, enumerate_partitions, sign

P = Partition.from_parts


def test_examples_d3():
    t = character_table(3)
    assert t.value(P([2, 1]), P([3])) == -1
    assert all(t.value(P([3]), a) == 1 for a in enumerate_partitions(3))
    assert t.value(P([1, 1, 1]), P([2, 1])) == -1


def test_central_character_examples():
    assert central_character(P([3]), P([3])) == 2
    assert central_character(P([2, 1]), P([2, 1])) == 0
    for d in range(1, 8):
        for lam in enumerate_partitions(d):
            assert central_character(Partition.ones(d), lam) == 1


@pytest.mark.parametrize("d", range(1, 10))
def test_orthogonality(d):
    assert character_table(d).check_orthogonality()


@pytest.mark.parametrize("d", range(1, 6))
def test_against_frobenius_oracle(d):
    t = character_table(d)
    for lam in t.partitions:
        for alpha in t.partitions:
            assert t.value(lam, alpha) == character_frobenius(lam, alpha)


def test_first_column_is_dimension():
    for d in range(1, 10):
        t = character_table(d)
        for lam in t.partitions:
            assert t.value(lam, Partition.ones(d)) == dim_sym(lam)


def test_sign_twist():
    for d in range(1, 10):
        t = character_table(d)
        for lam in t.partitions:
            for alpha in t.partitions:
                assert t.value(lam.conjugate(), alpha) == sign(alpha) * t.value(lam, alpha)


def test_first_order_content_consistency():
    for d in range(2, 10):
        alpha = P([2] + [1] * (d - 2))
        for lam in enumerate_partitions(d):
            assert central_character(alpha, lam) == sum(lam.contents())


def test_central_characters_integral_d9():
    for d in range(1, 10):
        for a in enumerate_partitions(d):
            for lam in enumerate_partitions(d):
                assert isinstance(central_character(a, lam), int)


def test_capacity():
    with pytest.raises(CapacityError):
        character_table(40)


@settings(max_examples=40)
@given(st.integers(1, 7).flatmap(lambda d: st.tuples(st.sampled_from(enumerate_partitions(d)), st.sampled_from(enumerate_partitions(d)))))
def test_value_matches_table(pair):
    lam, alpha = pair
    assert character_value(lam, alpha) == character_table(lam.size).value(lam, alpha)
