"""Genus-truncated free energies and topological normalizations.

The genus-g free energy at finite N is assembled from connected Hurwitz
numbers,

    F_Ng^d = sum_{alpha, beta} (-1)^(l(alpha)+l(beta)) N^-(l(alpha)+l(beta))
             H_g(alpha, beta) p_alpha(a) p_beta(b),

(with the obvious one-field and fieldless versions), and the k-th order
normalization divides the coupling series by ``exp(sum_{g<=k} N^(2-2g) F_Ng)``.
All series are z-exponential (:class:`hlab.series.ExpSeries`).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .coupling import DEFAULT_T, coupling_char, ones, string_coefficients
from .hurwitz import connected_table, key_length, mode_key, mode_pairs, pair_sign
from .partitions import Partition, dim_sym, enumerate_partitions
from .series import ExpSeries, LaurentGenusSeries, PairCoefficient, exp, log
from .symfunc import f_r, power_sum_eval, stirling2, stirling_specialization

DEFAULT_GAMMA = Fraction(1, 54)
DEFAULT_XI = Fraction(1, 100)


def _spectra(m: int, N: int, spectra) -> tuple[tuple[Fraction, ...], ...]:
    if spectra is None:
        return (ones(N),) * m
    spectra = tuple(tuple(Fraction(x) for x in s) for s in spectra)
    if len(spectra) != m or any(len(s) != N for s in spectra):
        raise ValueError(f"need {m} spectra of length {N}")
    return spectra


def evaluate_pair(pc: PairCoefficient, spectra) -> Fraction:
    """Substitute spectra into a Fraction-valued pair coefficient."""
    total = Fraction(0)
    for (a, b), c in pc.terms.items():
        term = Fraction(c)
        if pc.mode >= 1:
            term *= power_sum_eval(a, spectra[0])
        if pc.mode == 2:
            term *= power_sum_eval(b, spectra[1])
        total += term
    return total


def l1_bound(pc: PairCoefficient, N: int) -> Fraction:
    """sum |coefficient| * N^(number of parts): an upper bound for the polydisc sup."""
    return sum((abs(Fraction(c)) * Fraction(N) ** (len(a) + len(b)) for (a, b), c in pc.terms.items()), Fraction(0))


# -- free energies ----------------------------------------------------------


@dataclass(frozen=True)
class GenusFreeEnergy:
    """Genus-g free energy coefficients ``F_Ng^d`` (against ``z^d / d!``).

    ``coeffs[d]`` is symbolic in the power sums; ``values[d]`` is filled when
    spectra were supplied.
    """

    m: int
    N: int
    g: int
    d_max: int
    coeffs: dict[int, PairCoefficient]
    values: dict[int, Fraction] | None = None


def free_energy_symbolic(m: int, N: int, g: int, d_max: int) -> dict[int, PairCoefficient]:
    table = connected_table(m, d_max, g) if g >= 0 else None
    out = {}
    for d in range(1, d_max + 1):
        terms = {}
        if table is not None:
            for alpha, beta in mode_pairs(m, d):
                h = table.get(d, g, alpha, beta)
                if h:
                    ell = key_length(m, alpha, beta)
                    terms[mode_key(m, alpha, beta)] = pair_sign(m, alpha, beta) * Fraction(h, N**ell)
        out[d] = PairCoefficient(terms, m)
    return out


def genus_free_energy(m: int, N: int, g: int, d_max: int, spectra=None, evaluate: bool = False) -> GenusFreeEnergy:
    coeffs = free_energy_symbolic(m, N, g, d_max)
    values = None
    if spectra is not None or evaluate:
        sp = _spectra(m, N, spectra)
        values = {d: evaluate_pair(c, sp) for d, c in coeffs.items()}
    return GenusFreeEnergy(m, N, g, d_max, coeffs, values)


def _scalar_one(m: int) -> PairCoefficient:
    return PairCoefficient.scalar(Fraction(1), m)


def coupling_series_symbolic(m: int, N: int, d_max: int) -> ExpSeries:
    terms = {d: PairCoefficient(string_coefficients(m, d, N), m) for d in range(1, d_max + 1)}
    return ExpSeries(terms, _scalar_one(m), 1, d_max)


def truncated_free_energy_symbolic(m: int, N: int, k: int, d_max: int) -> ExpSeries:
    """sum_{g<=k} N^(2-2g) F_Ng as a symbolic series with zero constant term."""
    terms = {d: PairCoefficient({}, m) for d in range(1, d_max + 1)}
    for g in range(0, k + 1):
        weight = Fraction(N) ** (2 - 2 * g)
        for d, c in free_energy_symbolic(m, N, g, d_max).items():
            terms[d] = terms[d] + c * weight
    return ExpSeries(terms, _scalar_one(m), 0, d_max)


def _scalar_series(values: dict[int, Fraction], const) -> ExpSeries:
    return ExpSeries(values, Fraction(1), const, max(values, default=0))


def coupling_series(m: int, N: int, d_max: int, spectra=None) -> ExpSeries:
    sp = _spectra(m, N, spectra)
    return _scalar_series({d: coupling_char(m, d, N, sp).value for d in range(1, d_max + 1)}, 1)


def truncated_free_energy(m: int, N: int, k: int, d_max: int, spectra=None) -> ExpSeries:
    sp = _spectra(m, N, spectra)
    sym = truncated_free_energy_symbolic(m, N, k, d_max)
    return _scalar_series({d: evaluate_pair(sym.coefficient(d), sp) for d in range(1, d_max + 1)}, 0)


def _negate(S: ExpSeries) -> ExpSeries:
    return ExpSeries({d: -c for d, c in S.terms.items()}, S.one, -S.const, S.d_max)


# -- normalized couplings ---------------------------------------------------


@dataclass(frozen=True)
class NormalizedCoupling:
    m: int
    N: int
    k: int
    d: int
    value: Fraction


def phi_series(m: int, N: int, k: int, d_max: int, spectra=None) -> ExpSeries:
    I = coupling_series(m, N, d_max, spectra)
    E_inv = exp(_negate(truncated_free_energy(m, N, k, d_max, spectra)))
    return I * E_inv


def phi_coefficients(m: int, N: int, k: int, d_max: int, spectra=None) -> list[NormalizedCoupling]:
    """Phi_Nk^d for d = 1..d_max: binomial convolution of I with exp(-truncated F)."""
    phi = phi_series(m, N, k, d_max, spectra)
    return [NormalizedCoupling(m, N, k, d, phi.coefficient(d)) for d in range(1, d_max + 1)]


def phi_symbolic(m: int, N: int, k: int, d_max: int) -> ExpSeries:
    I = coupling_series_symbolic(m, N, d_max)
    return I * exp(_negate(truncated_free_energy_symbolic(m, N, k, d_max)))


# -- cancellation -----------------------------------------------------------


@dataclass(frozen=True)
class CancellationReport:
    d: int
    g: int
    sums: dict[Partition, int]

    @property
    def holds(self) -> bool:
        return all(v == 0 for v in self.sums.values())


def cancellation_check(d: int, g: int) -> CancellationReport:
    """sum_beta (-1)^l(beta) H_g(alpha, beta) for every alpha of size d."""
    if (d, g) == (1, 0):
        raise ValueError("(d, g) = (1, 0) is the single surviving term")
    if g < 0:
        raise ValueError("connected numbers need g >= 0")
    table = connected_table(2, d, g)
    parts = enumerate_partitions(d)
    sums = {a: sum((-1) ** len(b) * table.get(d, g, a, b) for b in parts) for a in parts}
    return CancellationReport(d, g, sums)


# -- stable critical identity -----------------------------------------------


def restricted_disconnected(d_max: int, g_min: int, genus_max: int) -> ExpSeries:
    """exp of the fieldless connected series restricted to genus g_min..genus_max.

    Returns the hbar-graded series; the degree-d entry at exponent 2g-2 is the
    number of disconnected covers all of whose components have genus >= g_min.
    """
    table = connected_table(0, d_max, genus_max)
    empty = (Partition(), Partition())
    terms = {}
    for d in range(1, d_max + 1):
        coeffs = {2 * g - 2: table.get(d, g) for g in range(g_min, genus_max + 1)}
        terms[d] = PairCoefficient({empty: LaurentGenusSeries(coeffs, 2 * genus_max - 2)}, 0)
    one = PairCoefficient.scalar(LaurentGenusSeries.one(), 0)
    return exp(ExpSeries(terms, one, 0, d_max))


def stable_tail_bound(d: int, N: int, G: int) -> Fraction:
    """Bound on sum_{g>G} N^(2-2g) H_g^{.d} for d <= N.

    Uses H_g^{.d} <= S(d-1+r, d-1) <= (d-1)^(d-1+r)/(d-1)! with r = 2g-2+2d.
    """
    if d > N:
        raise ValueError("the geometric tail needs d <= N")
    if d == 1:
        return Fraction(0)
    q = Fraction(d - 1, N) ** 2
    return Fraction(N * N * (d - 1) ** (3 * d - 3), math.factorial(d - 1)) * q ** (G + 1) / (1 - q)


@dataclass(frozen=True)
class StableCheck:
    N: int
    k: int
    d: int
    G: int
    phi: Fraction
    truncated: Fraction
    tail_bound: Fraction

    @property
    def holds(self) -> bool:
        return abs(self.phi - self.truncated) <= self.tail_bound


def stable_critical_check(N: int, k: int, d: int, G: int | None = None) -> StableCheck:
    """Compare the fieldless Phi_Nk^d with its genus k+1..G disconnected sum."""
    if d > N:
        raise ValueError("stable range needs d <= N")
    G = k + 6 if G is None else G
    phi = phi_coefficients(0, N, k, d)[d - 1].value
    series = restricted_disconnected(d, k + 1, G).coefficient(d).get(((), ()), LaurentGenusSeries.zero())
    truncated = sum(
        (series.coefficient(2 * g - 2) * Fraction(N) ** (2 - 2 * g) for g in range(k + 1, G + 1)),
        Fraction(0),
    )
    return StableCheck(N, k, d, G, phi, truncated, stable_tail_bound(d, N, G))


# -- scans ------------------------------------------------------------------


@dataclass(frozen=True)
class ScanReport:
    m: int
    k: int
    xi: Fraction
    rows: list[tuple[int, int, Fraction, Fraction]]  # (N, d_max, s, N^(2k-2) s)

    @property
    def scaled(self) -> list[Fraction]:
        return [row[3] for row in self.rows]

    @property
    def non_increasing(self) -> bool:
        s = self.scaled
        return all(b <= a for a, b in zip(s, s[1:]))

    @property
    def bounded_by(self) -> Fraction:
        return max(self.scaled, default=Fraction(0))


def concentration_scan(
    m: int,
    k: int,
    N_range: Sequence[int],
    xi=DEFAULT_XI,
    t=DEFAULT_T,
    policy: str = "ones",
) -> ScanReport:
    """s(N) = sum_{d <= tN^2} xi^d/d! * UB(Phi_Nk^d).

    ``policy="ones"`` evaluates exactly at all-ones spectra (the fieldless
    theory has no spectra); ``policy="l1"`` uses the coefficient l1 bound of
    the symbolic normalized coefficient, an upper bound on the polydisc sup.
    """
    xi, t = Fraction(xi), Fraction(t)
    rows = []
    for N in N_range:
        d_max = max(1, math.floor(t * N * N))
        if policy == "ones" or m == 0:
            phi = phi_series(m, N, k, d_max)
            ub = {d: abs(phi.coefficient(d)) for d in range(1, d_max + 1)}
        elif policy == "l1":
            phi = phi_symbolic(m, N, k, d_max)
            ub = {d: l1_bound(phi.coefficient(d), N) for d in range(1, d_max + 1)}
        else:
            raise ValueError(f"unknown policy {policy!r}")
        s = sum((xi**d / math.factorial(d) * ub[d] for d in ub), Fraction(0))
        rows.append((N, d_max, s, Fraction(N) ** (2 * k - 2) * s))
    return ScanReport(m, k, xi, rows)


def gross_witten_scan(N_range: Sequence[int], xi=DEFAULT_XI, t=DEFAULT_T) -> list[tuple[int, Fraction]]:
    """|sum_{d<=tN^2} xi^d/d! (L_N * e^{-N^2 z})^d| for each N.

    At all-ones spectra the truncated exponential collapses to e^{N^2 z}, so
    this is the one-field normalized series with no field dependence.
    """
    out = []
    xi, t = Fraction(xi), Fraction(t)
    for N in N_range:
        d_max = max(1, math.floor(t * N * N))
        L = coupling_series(1, N, d_max)
        e = _scalar_series({d: Fraction(-N * N) ** d for d in range(1, d_max + 1)}, 1)
        phi = L * e
        out.append((N, abs(sum((xi**d / math.factorial(d) * phi.coefficient(d) for d in range(1, d_max + 1)), Fraction(0)))))
    return out


@dataclass(frozen=True)
class PlancherelReport:
    N: int
    d: int
    r_max: int
    stirling_chain: bool
    hockey_stick: bool
    row_cost: list[Fraction]
    full_cost: list[Fraction]
    row_total: Fraction | None = None
    full_total: Fraction | None = None
    paper_bound: Fraction | None = None

    @property
    def row_within_bound(self) -> bool | None:
        return None if self.paper_bound is None else self.row_total < self.paper_bound

    @property
    def full_within_double(self) -> bool | None:
        return None if self.paper_bound is None else self.full_total < 2 * self.paper_bound


def _bad(lam: Partition, N: int) -> bool:
    return lam[0] > N or len(lam) > N


def plancherel_mechanism_bounds(N: int, d: int, r_max: int, k: int = 0, xi=DEFAULT_XI, t=DEFAULT_T) -> PlancherelReport:
    """Cost of completing truncated Plancherel averages in the unstable window.

    ``row_cost[r]`` keeps only the single row diagram ``(N+1)``;
    ``full_cost[r]`` sums ``|f_r| dim^2/d!`` over every diagram with a row or
    column longer than ``N``.  At ``d = N + 1`` both are accumulated over
    ``r <= 2k - 2 + 2d`` with weight ``N^-r`` and compared with the binomial
    bound ``xi^d / (d!)^2 * binom(3N + 2k + 1, N + 1)``.
    """
    xi, t = Fraction(xi), Fraction(t)
    if not N < d <= math.floor(t * N * N):
        raise ValueError(f"d = {d} is outside the unstable window ({N}, {math.floor(t * N * N)}]")
    chain = all(
        stirling_specialization(N, r) == stirling2(N + r, N) <= N**r * math.comb(N + r, N)
        for r in range(r_max + 1)
    )
    hockey = all(
        sum(math.comb(N + r, N) for r in range(R + 1)) == math.comb(N + R + 1, N + 1)
        for R in range(r_max + 1)
    )
    fact = math.factorial(d)
    bad = [lam for lam in enumerate_partitions(d) if _bad(lam, N)]
    row = Partition((N + 1,))

    def costs(R: int) -> tuple[list[Fraction], list[Fraction]]:
        row_c, full_c = [], []
        for r in range(R + 1):
            row_c.append(Fraction(abs(f_r(row, r)), fact) if d == N + 1 else Fraction(0))
            full_c.append(sum((Fraction(abs(f_r(lam, r)) * dim_sym(lam) ** 2, fact) for lam in bad), Fraction(0)))
        return row_c, full_c

    row_cost, full_cost = costs(r_max)
    row_total = full_total = bound = None
    if d == N + 1:
        R = 2 * k - 2 + 2 * d
        rc, fc = costs(R)
        pref = xi**d / fact
        row_total = pref * sum((c / Fraction(N) ** r for r, c in enumerate(rc)), Fraction(0))
        full_total = pref * sum((c / Fraction(N) ** r for r, c in enumerate(fc)), Fraction(0))
        bound = xi**d / fact**2 * math.comb(3 * N + 2 * k + 1, N + 1)
    return PlancherelReport(N, d, r_max, chain, hockey, row_cost, full_cost, row_total, full_total, bound)


# -- large-N trend ----------------------------------------------------------


def quantile_spectrum(profile: Sequence[Fraction], N: int) -> tuple[Fraction, ...]:
    """Eigenvalues phi((2j-1)/(2N)), j = 1..N, for the polynomial phi with given coefficients."""
    out = []
    for j in range(1, N + 1):
        x = Fraction(2 * j - 1, 2 * N)
        out.append(sum((c * x**i for i, c in enumerate(profile)), Fraction(0)))
    return tuple(out)


def random_profile(rng: random.Random) -> tuple[Fraction, ...]:
    """Random strictly monotone quadratic on [0, 1], scaled so |phi| <= 1.

    Monotonicity keeps the quantile eigenvalues pairwise distinct; a constant
    spectrum is a degenerate point where every higher free energy cancels.
    """
    while True:
        c0, c1, c2 = (Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(3))
        # phi'(x) = c1 + 2 c2 x keeps one strict sign on [0, 1]
        if c1 * (c1 + 2 * c2) > 0:
            break
    scale = abs(c0) + abs(c1) + abs(c2)
    return (c0 / scale, c1 / scale, c2 / scale)


def trend_spectra(m: int, seed: int) -> Callable[[int], tuple]:
    """Quantile spectra for a fixed seed: N-dependent, with coherent moments."""
    rng = random.Random(seed)
    profiles = [random_profile(rng) for _ in range(m)]
    return lambda N: tuple(quantile_spectrum(p, N) for p in profiles)


@dataclass(frozen=True)
class TrendReport:
    m: int
    d: int
    k: int
    rows: list[tuple[int, Fraction, Fraction]]  # (N, R(N), N^(2k-2) |R(N)|)

    @property
    def identically_zero(self) -> bool:
        return all(row[1] == 0 for row in self.rows)

    @property
    def strictly_decreasing(self) -> bool:
        s = [row[2] for row in self.rows]
        return all(b < a for a, b in zip(s, s[1:]))


def large_N_remainder(m: int, d: int, k: int, N: int, spectra=None) -> Fraction:
    """F_N^d - sum_{g<=k} N^(2-2g) F_Ng^d, with F_N the log of the exact couplings."""
    F = log(coupling_series(m, N, d, spectra))
    trunc = truncated_free_energy(m, N, k, d, spectra)
    return F.coefficient(d) - trunc.coefficient(d)


def large_N_trend(
    m: int,
    d: int,
    k: int,
    N_range: Sequence[int],
    spectra: Callable[[int], tuple] | None = None,
) -> TrendReport:
    """Scaled remainders N^(2k-2)|R(N)| across N.

    ``spectra`` maps N to the spectra used at that N (all-ones if omitted).
    """
    if d > min(N_range):
        raise ValueError("need d <= N throughout the scan")
    rows = []
    for N in N_range:
        sp = spectra(N) if spectra is not None else None
        R = large_N_remainder(m, d, k, N, sp)
        rows.append((N, R, Fraction(N) ** (2 * k - 2) * abs(R)))
    return TrendReport(m, d, k, rows)
