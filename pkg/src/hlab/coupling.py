"""Exact coupling coefficients of the unitary matrix integrals at finite N.

The three theories are indexed by the number ``m`` of external fields:

* ``m = 2``: ``int exp(z N Tr A U B U^-1) dU``, spectra ``a`` and ``b``;
* ``m = 1``: ``int exp(sqrt(z) N Tr(A U + B U^-1)) dU``, one spectrum, the
  eigenvalues of ``AB`` (so ``B`` may be taken to be the identity);
* ``m = 0``: the fieldless series ``sum_lam Omega^-1 dim^2 / d!`` scaled by
  ``N^(2d)``, which has no spectra.

Each coupling coefficient ``I^d`` is the coefficient of ``z^d / d!``.  The
character form sums over diagrams with at most ``N`` rows; the string form
expands in power sums with Plancherel averages of central characters.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import permutations
from typing import Sequence

from .characters import central_character
from .partitions import Partition, dim_gl, dim_sym, enumerate_partitions
from .symfunc import omega_inverse, power_sum_eval, schur_table

DEFAULT_T = Fraction(1, 4)


def ones(N: int) -> tuple[Fraction, ...]:
    return (Fraction(1),) * N


def _spectra(m: int, N: int, spectra) -> tuple[tuple[Fraction, ...], ...]:
    if m not in (0, 1, 2):
        raise ValueError("m must be 0, 1 or 2")
    if spectra is None:
        spectra = (ones(N),) * m
    spectra = tuple(tuple(Fraction(x) for x in s) for s in spectra)
    if len(spectra) != m:
        raise ValueError(f"m = {m} takes {m} spectra, got {len(spectra)}")
    for s in spectra:
        if len(s) != N:
            raise ValueError(f"spectrum of length {len(s)} does not match N = {N}")
    return spectra


@dataclass(frozen=True)
class CouplingValue:
    m: int
    d: int
    N: int
    spectra: tuple[tuple[Fraction, ...], ...]
    value: Fraction


@cache
def _plancherel(lam: Partition) -> Fraction:
    return Fraction(dim_sym(lam) ** 2, math.factorial(lam.size))


def coupling_char(m: int, d: int, N: int, spectra=None) -> CouplingValue:
    """Character form of the degree-d coupling coefficient."""
    spectra = _spectra(m, N, spectra)
    lams = enumerate_partitions(d, max_rows=N)
    scale = Fraction(N) ** (2 * d) / math.factorial(d)
    total = Fraction(0)
    if m == 0:
        for lam in lams:
            total += omega_inverse(lam, N) * dim_sym(lam) ** 2
        total *= scale
    elif m == 1:
        s = schur_table(d, spectra[0])
        for lam in lams:
            total += s[lam] * Fraction(dim_sym(lam) ** 2) / dim_gl(lam, N)
        total *= scale
    else:
        sa, sb = schur_table(d, spectra[0]), schur_table(d, spectra[1])
        for lam in lams:
            total += sa[lam] * sb[lam] * dim_sym(lam) / dim_gl(lam, N)
        total *= Fraction(N) ** d
    return CouplingValue(m, d, N, spectra, total)


@cache
def string_coefficients(m: int, d: int, N: int) -> dict[tuple[Partition, Partition], Fraction]:
    """Coefficients of ``p_alpha(a) p_beta(b)`` in the degree-d coupling coefficient.

    Keys follow the pair convention of :mod:`hlab.series`: ``(alpha, beta)``
    for ``m = 2``, ``(alpha, ())`` for ``m = 1`` and ``((), ())`` for ``m = 0``.
    Only diagrams with at most ``N`` rows contribute.
    """
    lams = enumerate_partitions(d, max_rows=N)
    weight = {lam: omega_inverse(lam, N) * _plancherel(lam) for lam in lams}
    empty = Partition()
    if m == 0:
        return {(empty, empty): Fraction(N) ** (2 * d) * sum(weight.values())}
    parts = enumerate_partitions(d)
    omega = {(a, lam): central_character(a, lam) for a in parts for lam in lams}
    out = {}
    if m == 1:
        for a in parts:
            c = Fraction(N) ** d * sum(omega[a, lam] * weight[lam] for lam in lams)
            if c:
                out[(a, empty)] = c
        return out
    for a in parts:
        for b in parts:
            c = sum(omega[a, lam] * weight[lam] * omega[b, lam] for lam in lams)
            if c:
                out[(a, b)] = c
    return out


def coupling_string(m: int, d: int, N: int, spectra=None) -> CouplingValue:
    """String form: power sums against Plancherel averages of central characters."""
    spectra = _spectra(m, N, spectra)
    total = Fraction(0)
    for (a, b), c in string_coefficients(m, d, N).items():
        term = c
        if m >= 1:
            term *= power_sum_eval(a, spectra[0])
        if m == 2:
            term *= power_sum_eval(b, spectra[1])
        total += term
    return CouplingValue(m, d, N, spectra, total)


def lis_probability(d: int, N: int) -> Fraction:
    """Plancherel mass of diagrams with at most N rows."""
    return sum((_plancherel(lam) for lam in enumerate_partitions(d, max_rows=N)), Fraction(0))


def longest_increasing(seq: Sequence[int]) -> int:
    """Patience sorting length of the longest strictly increasing subsequence."""
    piles: list[int] = []
    for x in seq:
        k = bisect.bisect_left(piles, x)
        if k == len(piles):
            piles.append(x)
        else:
            piles[k] = x
    return len(piles)


def lis_probability_brute(d: int, N: int) -> Fraction:
    """Fraction of permutations of d whose longest increasing run is at most N."""
    if d > 9:
        raise ValueError("direct enumeration is limited to d <= 9")
    good = sum(1 for p in permutations(range(d)) if longest_increasing(p) <= N)
    return Fraction(good, math.factorial(d))


def coupling_norm(m: int, d: int, N: int) -> Fraction:
    """Sup norm on the unit polydisc, attained at all-ones spectra.

    Every monomial in the character form has a nonnegative coefficient, so the
    supremum is the all-ones value.
    """
    return coupling_char(m, d, N).value


def fieldless_specializations(d: int, N: int) -> tuple[Fraction, Fraction]:
    """All-ones values of the one-field and two-field coefficients."""
    L = Fraction(N) ** (2 * d) * lis_probability(d, N)
    E = Fraction(N) ** (2 * d)
    return L, E


def hciz_degeneration_check(d: int, N: int, spectrum) -> bool:
    """With B the identity, the coefficient collapses to N^d p_1(a)^d."""
    a = tuple(Fraction(x) for x in spectrum)
    lhs = coupling_char(2, d, N, (a, ones(N))).value
    return lhs == Fraction(N) ** d * sum(a) ** d


@dataclass(frozen=True)
class TruncationBound:
    """Tail of ``sum_d rho^d N^(2d) / d!`` beyond ``d = t N^2`` against its bound.

    ``tail_low`` is an exact partial sum; ``tail_high`` adds a rigorous
    geometric bound on what remains.
    """

    rho: Fraction
    t: Fraction
    N: int
    u_val: float
    v_val: float
    bound: float
    tail_low: Fraction
    tail_high: Fraction

    @property
    def holds(self) -> bool:
        return float(self.tail_high) < self.bound


def u_of(x: float, t: float = float(DEFAULT_T)) -> float:
    return 1.0 / (1.0 - math.e * x / t)


def v_of(x: float, t: float = float(DEFAULT_T)) -> float:
    return t * math.log(t / (math.e * x))


def truncation_bound(rho, t=DEFAULT_T, N: int = 1, extra_terms: int = 60) -> TruncationBound:
    rho, t = Fraction(rho), Fraction(t)
    if rho <= 0 or t <= 0:
        raise ValueError("rho and t must be positive")
    if float(rho) >= float(t) / math.e:
        raise ValueError("need rho < t / e")
    u, v = u_of(float(rho), float(t)), v_of(float(rho), float(t))
    bound = u * math.exp(-v * N * N)
    x = rho * N * N
    start = math.floor(t * N * N) + 1
    term = x**start / math.factorial(start)
    partial = Fraction(0)
    k = start
    # sum until the ratio x/(k+1) is below 1/2, then at least extra_terms more
    while True:
        partial += term
        k += 1
        term = term * x / k
        if k - start >= extra_terms and x / (k + 1) <= Fraction(1, 2):
            break
    q = x / (k + 1)
    remainder = term / (1 - q)
    return TruncationBound(rho, t, N, u, v, bound, partial, partial + remainder)
