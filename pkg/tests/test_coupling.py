from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hlab.coupling import (
    coupling_char,
    coupling_norm,
    coupling_string,
    fieldless_specializations,
    hciz_degeneration_check,
    lis_probability,
    lis_probability_brute,
    longest_increasing,
    ones,
    string_coefficients,
    truncation_bound,
    u_of,
    v_of,
)
from hlab.expansion import stable_tail_bound
from hlab.hurwitz import disconnected_table, steps_of, walk_count_char
from hlab.characters import central_character
from hlab.partitions import Partition, dim_sym, enumerate_partitions
from hlab.symfunc import content_eval, omega_inverse, power_sum_eval

F = Fraction
P = Partition.from_parts


def rand_spectrum(rng: random.Random, N: int) -> tuple[Fraction, ...]:
    return tuple(F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(N))


def test_char_examples():
    for d in range(1, 6):
        a, b = F(3, 2), F(-2, 5)
        assert coupling_char(1, d, 1, [[a * b]]).value == (a * b) ** d / math.factorial(d)
    assert coupling_char(2, 3, 2).value == 64
    assert coupling_char(0, 1, 1).value == 1


def test_m1_single_eigenvalue_against_quadrature():
    # int exp(sqrt(z)(a u + b/u)) du over the circle, coefficient of z^d/d!
    a, b = 0.7, -1.3
    K = 64
    for d in range(1, 6):
        # [z^d] = [w^(2d)] with w = sqrt(z); the circle integral picks u^0
        total = 0j
        for k in range(K):
            u = cmath.exp(2j * math.pi * k / K)
            total += (a * u + b / u) ** (2 * d) / math.factorial(2 * d)
        quad = (total / K).real * math.factorial(d)
        exact = float(coupling_char(1, d, 1, [[F(a) * F(b)]]).value)
        assert quad == pytest.approx(exact, rel=1e-12)


@pytest.mark.parametrize("N", range(1, 5))
def test_string_equals_char_randomized(N):
    rng = random.Random(1000 + N)
    for m in (0, 1, 2):
        for d in range(1, 6):
            for _ in range(5):
                sp = [rand_spectrum(rng, N) for _ in range(m)]
                assert coupling_string(m, d, N, sp).value == coupling_char(m, d, N, sp).value


def test_norm_examples():
    assert coupling_norm(2, 3, 2) == 64
    assert coupling_norm(1, 3, 2) == F(160, 3)
    for N in range(1, 5):
        for d in range(1, N + 1):
            assert coupling_norm(1, d, N) == N ** (2 * d)


def test_lis_examples():
    assert lis_probability(3, 2) == F(5, 6)
    assert all(lis_probability(d, N) == 1 for d in range(1, 7) for N in range(d, 8))
    assert lis_probability(4, 1) == F(1, 24)
    assert longest_increasing([3, 1, 2, 5, 4]) == 3


def test_lis_brute_force():
    for d in range(1, 8):
        for N in range(1, 5):
            assert lis_probability(d, N) == lis_probability_brute(d, N)


def test_fieldless():
    for N in range(1, 5):
        for d in range(1, N + 1):
            L, E = fieldless_specializations(d, N)
            assert L == E == N ** (2 * d)
    assert fieldless_specializations(3, 2)[0] == F(160, 3)
    assert fieldless_specializations(2, 3)[1] == 81


def test_hciz_degeneration():
    assert hciz_degeneration_check(2, 2, (1, 0))
    assert coupling_char(2, 2, 2, [(1, 0), (1, 1)]).value == 4
    assert coupling_char(2, 3, 3, [(1, F(1, 2), F(-1, 2)), ones(3)]).value == 27
    rng = random.Random(7)
    for N in range(1, 4):
        for d in range(1, 5):
            assert hciz_degeneration_check(d, N, rand_spectrum(rng, N))


def test_norm_ratio_monotone():
    for N in range(1, 5):
        ratios = [coupling_norm(1, d, N) / N ** (2 * d) for d in range(1, 9)]
        assert all(b <= a for a, b in zip(ratios, ratios[1:]))
        assert all(r < 1 for r in ratios[N:])


def test_extraction_chain():
    # coefficient of p_(1^d)(B) in the two-field expansion, at A = ones, is the one-field value;
    # keeping the p_(1^d)(A) multiples of the one-field expansion gives the fieldless value
    for N in range(1, 4):
        for d in range(1, 5):
            ones_d = Partition.ones(d)
            two = string_coefficients(2, d, N)
            one = string_coefficients(1, d, N)
            extracted = sum(
                (c * power_sum_eval(a, ones(N)) for (a, b), c in two.items() if b == ones_d), F(0)
            )
            assert extracted * N**d == coupling_char(1, d, N).value
            fieldless = one.get((ones_d, Partition()), F(0)) * N**d
            assert fieldless == coupling_char(0, d, N).value


def test_graphical_expansion_coefficients():
    # for d <= N the (alpha, beta) coefficient is sum_r (-1/N)^r W^r(alpha, beta);
    # the truncation error is controlled diagram by diagram
    R = 30
    for N in range(2, 5):
        for d in range(1, N + 1):
            coeffs = string_coefficients(2, d, N)
            tails = {}
            for lam in enumerate_partitions(d):
                ev = content_eval(lam, R)
                partial = sum(F(-1, N) ** r * ev.f[r] for r in range(R + 1))
                tails[lam] = abs(partial - omega_inverse(lam, N)) * F(dim_sym(lam) ** 2, math.factorial(d))
            for a in enumerate_partitions(d):
                for b in enumerate_partitions(d):
                    exact = coeffs.get((a, b), F(0))
                    partial = sum(F(-1, N) ** r * walk_count_char(a, b, r) for r in range(R + 1))
                    tol = sum(abs(central_character(a, lam) * central_character(b, lam)) * t for lam, t in tails.items())
                    assert abs(partial - exact) <= tol
                    if d == 1:
                        assert partial == exact


def test_stable_genus_truncation():
    rng = random.Random(11)
    G = 4
    for N in range(1, 5):
        for d in range(1, N + 1):
            table = disconnected_table(2, d, G)
            for _ in range(3):
                sp = [tuple(F(rng.randint(-6, 6), 6) for _ in range(N)) for _ in range(2)]
                exact = coupling_char(2, d, N, sp).value
                approx = F(0)
                for g in range(-d + 1, G + 1):
                    for a in enumerate_partitions(d):
                        for b in enumerate_partitions(d):
                            h = table.get(d, g, a, b)
                            if h:
                                sign = (-1) ** (len(a) + len(b))
                                term = F(sign * h, N ** (len(a) + len(b))) * F(N) ** (2 - 2 * g)
                                approx += term * power_sum_eval(a, sp[0]) * power_sum_eval(b, sp[1])
                bound = 4**d * stable_tail_bound(d, N, G)
                assert abs(exact - approx) <= bound


def test_truncation_bound():
    assert u_of(1e-12) == pytest.approx(1.0)
    assert v_of(1e-300) > 100
    tb = truncation_bound(F(1, 20), F(1, 4), 3)
    assert tb.tail_low <= tb.tail_high and tb.holds
    with pytest.raises(ValueError):
        truncation_bound(F(1, 4) / F(math.e), F(1, 4), 3)


@settings(max_examples=25, deadline=None)
@given(
    st.integers(1, 3),
    st.integers(1, 4),
    st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=6, max_size=6),
)
def test_string_equals_char_property(N, d, raw):
    sp = [tuple(raw[:N]), tuple(raw[3 : 3 + N])]
    assert coupling_string(2, d, N, sp).value == coupling_char(2, d, N, sp).value
    assert coupling_string(1, d, N, sp[:1]).value == coupling_char(1, d, N, sp[:1]).value
