from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from hlab.partitions import (
    Partition,
    as_partition,
    centralizer_order,
    class_size,
    dim_gl,
    dim_sym,
    enumerate_partitions,
    sign,
    stats,
)
from hlab.symfunc import count_standard_tableaux, semistandard_tableaux

P = Partition.from_parts

partitions_upto_8 = st.integers(1, 8).flatmap(lambda d: st.sampled_from(enumerate_partitions(d)))


def test_enumerate_counts_and_order():
    assert len(enumerate_partitions(4)) == 5
    assert enumerate_partitions(4) == [P([4]), P([3, 1]), P([2, 2]), P([2, 1, 1]), P([1, 1, 1, 1])]
    assert set(enumerate_partitions(4, max_rows=2)) == {P([4]), P([3, 1]), P([2, 2])}
    assert enumerate_partitions(1) == [P([1])]
    # partition numbers p(d) from the standard table
    assert [len(enumerate_partitions(d)) for d in range(1, 13)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]


def test_enumerate_is_reverse_lex():
    for d in range(1, 10):
        parts = enumerate_partitions(d)
        assert parts == sorted(parts, reverse=True)


def test_enumerate_rejects_negative():
    with pytest.raises(ValueError):
        enumerate_partitions(-1)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))
    assert as_partition("(2,1)") == P([2, 1])
    assert as_partition([1, 2]) == P([2, 1])


def test_stats_examples():
    s = stats(P([2, 1]))
    assert s.dim_sym == 2
    assert sorted(s.contents) == [-1, 0, 1]
    assert s.class_size == 3


def test_dim_sym_matches_tableau_count():
    for d in range(1, 8):
        for lam in enumerate_partitions(d):
            assert dim_sym(lam) == count_standard_tableaux(lam)


def test_dim_gl_examples():
    assert dim_gl(P([2, 1]), 3) == 8
    assert dim_gl(P([1, 1]), 1) == 0
    for d in range(1, 8):
        assert dim_gl(P([d]), 1) == 1


def test_dim_gl_matches_semistandard_count():
    for d in range(1, 6):
        for lam in enumerate_partitions(d):
            for N in range(1, 5):
                assert dim_gl(lam, N) == sum(1 for _ in semistandard_tableaux(lam, N))


def test_dim_gl_is_integral():
    for d in range(1, 9):
        for lam in enumerate_partitions(d):
            for N in range(1, 7):
                assert isinstance(dim_gl(lam, N), Fraction)
                assert dim_gl(lam, N).denominator == 1


def test_plancherel_mass():
    for d in range(1, 10):
        assert sum(dim_sym(lam) ** 2 for lam in enumerate_partitions(d)) == math.factorial(d)


def test_schur_weyl():
    for d in range(1, 9):
        for N in range(1, 5):
            total = sum(dim_sym(lam) * dim_gl(lam, N) for lam in enumerate_partitions(d, max_rows=N))
            assert total == N**d


def test_class_sizes_against_permutations():
    for d in range(1, 10):
        assert sum(class_size(a) for a in enumerate_partitions(d)) == math.factorial(d)
    # brute-force cycle types of S(5)
    from hlab.hurwitz import cycle_type

    counts: dict[Partition, int] = {}
    for p in permutations(range(5)):
        c = cycle_type(p)
        counts[c] = counts.get(c, 0) + 1
    assert counts == {a: class_size(a) for a in enumerate_partitions(5)}


def test_centralizer_and_sign():
    assert centralizer_order(P([2, 2, 1])) == 8
    assert sign(P([2, 1])) == -1
    assert sign(P([3])) == 1


@given(partitions_upto_8)
def test_conjugation_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(partitions_upto_8)
def test_conjugate_contents_negate(lam):
    assert sorted(lam.conjugate().contents()) == sorted(-c for c in lam.contents())


@given(partitions_upto_8)
def test_hook_length_formula(lam):
    assert dim_sym(lam) * math.prod(lam.hooks()) == math.factorial(lam.size)
