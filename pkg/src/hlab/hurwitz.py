"""Walk counts on the transposition Cayley graph of S(d) and Hurwitz numbers.

A *monotone* walk multiplies a starting permutation on the right by
transpositions ``(i j)``, ``i < j``, whose labels ``j`` weakly increase.  The
number of such ``r``-step walks from the class ``alpha`` into the class
``beta`` is the Plancherel average

    W^r(alpha, beta) = sum_lam omega_alpha(lam) f_r(lam) omega_beta(lam) dim(lam)^2 / d!

where ``f_r`` is the complete symmetric function of the contents.  Classical
walks (no label condition) replace ``f_r`` by the r-th power of the central
character of the transposition class.

Genus reindexing uses ``r = 2g - 2 + len(alpha) + len(beta)``.  Connected
numbers come from the logarithm of the exponential generating series.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import permutations
from typing import Literal

from .characters import central_character
from .errors import CapacityError, TruncationError
from .partitions import Partition, class_size, dim_sym, enumerate_partitions
from .series import ExpSeries, LaurentGenusSeries, PairCoefficient, log
from .symfunc import content_eval

Flavor = Literal["monotone", "classical"]

BRUTE_MAX_D = 6
BRUTE_MAX_R = 8


def _check_flavor(flavor: str) -> None:
    if flavor not in ("monotone", "classical"):
        raise ValueError(f"unknown flavor {flavor!r}")


def _pair(alpha, beta) -> tuple[Partition, Partition, int]:
    alpha, beta = Partition.from_parts(alpha), Partition.from_parts(beta)
    if alpha.size != beta.size:
        raise ValueError(f"size mismatch: |{alpha}| != |{beta}|")
    return alpha, beta, alpha.size


def parity_allows(alpha: Partition, beta: Partition, r: int) -> bool:
    """Permutation parity: r + (d - len(alpha)) + (d - len(beta)) must be even."""
    return (r + len(alpha) + len(beta)) % 2 == 0


def genus_of(alpha: Partition, beta: Partition, r: int) -> int:
    twice = r + 2 - len(alpha) - len(beta)
    if twice % 2:
        raise ValueError("odd Euler characteristic")
    return twice // 2


def steps_of(alpha: Partition, beta: Partition, g: int) -> int:
    return 2 * g - 2 + len(alpha) + len(beta)


# -- character formula ------------------------------------------------------


@cache
def _plancherel(lam: Partition) -> Fraction:
    return Fraction(dim_sym(lam) ** 2, math.factorial(lam.size))


def _f(lam: Partition, r: int) -> int:
    # content_eval is cached per (lam, r_max); round r_max up to share work
    r_max = max(48, 1 << (r.bit_length()))
    return content_eval(lam, r_max).f[r]


def walk_count_char(alpha, beta, r: int, flavor: Flavor = "monotone") -> int:
    """Number of r-step walks from class alpha to class beta, by characters."""
    _check_flavor(flavor)
    alpha, beta, d = _pair(alpha, beta)
    if r < 0:
        raise ValueError("r must be nonnegative")
    return _walk_char(alpha, beta, r, flavor)


@cache
def _walk_char(alpha: Partition, beta: Partition, r: int, flavor: str) -> int:
    d = alpha.size
    if not parity_allows(alpha, beta, r):
        return 0
    if flavor == "classical" and d == 1:
        # no transpositions in S(1)
        return 1 if r == 0 else 0
    trans = Partition((2,) + (1,) * (d - 2)) if d >= 2 else None
    total = Fraction(0)
    for lam in enumerate_partitions(d):
        wa = central_character(alpha, lam)
        if wa == 0:
            continue
        wb = central_character(beta, lam)
        if wb == 0:
            continue
        if flavor == "monotone":
            mid = _f(lam, r)
        else:
            mid = central_character(trans, lam) ** r
        total += wa * mid * wb * _plancherel(lam)
    if total.denominator != 1 or total < 0:
        raise ArithmeticError(f"walk count {total} is not a nonnegative integer")
    return total.numerator


# -- brute-force oracle -----------------------------------------------------


def cycle_type(perm: tuple[int, ...]) -> Partition:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        n, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            n += 1
        parts.append(n)
    return Partition.from_parts(parts)


def _blocks_from_perm(perm: tuple[int, ...]) -> tuple[int, ...]:
    # block label of each point = smallest point in its cycle
    label = list(range(len(perm)))
    for start in range(len(perm)):
        x, low, cyc = start, start, []
        while True:
            cyc.append(x)
            low = min(low, x)
            x = perm[x]
            if x == start:
                break
        for y in cyc:
            label[y] = low
    return tuple(label)


def _merge(blocks: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    a, b = blocks[i], blocks[j]
    if a == b:
        return blocks
    lo, hi = min(a, b), max(a, b)
    return tuple(lo if x == hi else x for x in blocks)


def walk_count_brute(
    alpha,
    beta,
    r: int,
    flavor: Flavor = "monotone",
    connected: bool = False,
) -> int:
    """Exhaustive count of walks, aggregated layer by layer.

    The state after each step is the current permutation, the last label used
    (monotone only) and, when ``connected`` is set, the orbit partition of the
    group generated so far.  Walks reaching the same state are merged with a
    multiplicity, which keeps the search exhaustive without listing each walk.
    """
    _check_flavor(flavor)
    alpha, beta, d = _pair(alpha, beta)
    if d > BRUTE_MAX_D or r > BRUTE_MAX_R:
        raise CapacityError(f"brute force is limited to d <= {BRUTE_MAX_D}, r <= {BRUTE_MAX_R}")
    if r < 0:
        raise ValueError("r must be nonnegative")
    monotone = flavor == "monotone"
    layer: dict[tuple, int] = defaultdict(int)
    for perm in permutations(range(d)):
        if cycle_type(perm) != alpha:
            continue
        blocks = _blocks_from_perm(perm) if connected else ()
        layer[(perm, 1, blocks)] += 1
    for _ in range(r):
        nxt: dict[tuple, int] = defaultdict(int)
        for (perm, last, blocks), count in layer.items():
            for j in range(last if monotone else 1, d):
                for i in range(j):
                    p = list(perm)
                    p[i], p[j] = p[j], p[i]
                    nb = _merge(blocks, i, j) if connected else ()
                    nxt[(tuple(p), j if monotone else 1, nb)] += count
        layer = nxt
    total = 0
    for (perm, _, blocks), count in layer.items():
        if cycle_type(perm) != beta:
            continue
        if connected and len(set(blocks)) != 1:
            continue
        total += count
    return total


# -- generating series ------------------------------------------------------


def mode_key(mode: int, alpha: Partition, beta: Partition) -> tuple[tuple, tuple]:
    if mode == 2:
        return (alpha, beta)
    if mode == 1:
        return (alpha, ())
    return ((), ())


def mode_pairs(mode: int, d: int) -> list[tuple[Partition, Partition]]:
    parts = enumerate_partitions(d)
    ones = Partition.ones(d)
    if mode == 2:
        return [(a, b) for a in parts for b in parts]
    if mode == 1:
        return [(a, ones) for a in parts]
    if mode == 0:
        return [(ones, ones)]
    raise ValueError("mode must be 0, 1 or 2")


def pair_sign(mode: int, alpha: Partition, beta: Partition) -> int:
    n = len(alpha) + len(beta) if mode == 2 else len(alpha) + alpha.size if mode == 1 else 0
    return -1 if n % 2 else 1


def key_length(mode: int, alpha: Partition, beta: Partition) -> int:
    return len(alpha) + len(beta) if mode == 2 else len(alpha) if mode == 1 else 0


def disconnected_series(mode: int, d_max: int, genus_max: int) -> ExpSeries:
    """Exponential series whose degree-d term sums sign * hbar^len * sum_g hbar^(2g-2) H_g.

    Each degree-d entry is exact for genus ``-d+1 .. genus_max`` and carries the
    matching truncation order.
    """
    terms = {}
    for d in range(1, d_max + 1):
        entries = {}
        for alpha, beta in mode_pairs(mode, d):
            ell = key_length(mode, alpha, beta)
            sgn = pair_sign(mode, alpha, beta)
            coeffs = {}
            for g in range(-d + 1, genus_max + 1):
                r = steps_of(alpha, beta, g)
                if r < 0:
                    continue
                w = walk_count_char(alpha, beta, r)
                if w:
                    coeffs[ell + 2 * g - 2] = sgn * w
            entries[mode_key(mode, alpha, beta)] = LaurentGenusSeries(coeffs, ell + 2 * genus_max - 2)
        terms[d] = PairCoefficient(entries, mode)
    one = PairCoefficient.scalar(LaurentGenusSeries.one(), mode)
    return ExpSeries(terms, one, 1, d_max)


@dataclass(frozen=True)
class HurwitzTable:
    """Monotone Hurwitz numbers indexed by ``(d, g, alpha, beta)``.

    In mode 1 ``beta`` is ``1^d``; in mode 0 both are ``1^d``.  Missing
    entries inside the declared range are zero.
    """

    mode: int
    connected: bool
    d_max: int
    genus_max: int
    entries: dict = field(default_factory=dict)

    def get(self, d: int, g: int, alpha=None, beta=None) -> int:
        if d > self.d_max or g > self.genus_max:
            raise TruncationError(f"(d={d}, g={g}) lies outside the table")
        ones = Partition.ones(d)
        alpha = ones if alpha is None or self.mode == 0 else Partition.from_parts(alpha)
        beta = ones if beta is None or self.mode != 2 else Partition.from_parts(beta)
        return self.entries.get((d, g, alpha, beta), 0)

    def genus_range(self, d: int) -> range:
        lo = 0 if self.connected else -d + 1
        return range(lo, self.genus_max + 1)


@cache
def disconnected_table(mode: int, d_max: int, genus_max: int) -> HurwitzTable:
    entries = {}
    for d in range(1, d_max + 1):
        for alpha, beta in mode_pairs(mode, d):
            for g in range(-d + 1, genus_max + 1):
                r = steps_of(alpha, beta, g)
                if r < 0:
                    continue
                w = walk_count_char(alpha, beta, r)
                if w:
                    entries[(d, g, alpha, beta)] = w
    return HurwitzTable(mode, False, d_max, genus_max, entries)


@cache
def connected_table(mode: int, d_max: int, genus_max: int) -> HurwitzTable:
    """Connected numbers read off the logarithm of the disconnected series.

    The disconnected data is generated up to genus ``genus_max + d_max - 1``,
    which is what the logarithm needs to pin down connected genus
    ``genus_max`` at degree ``d_max``.
    """
    F = log(disconnected_series(mode, d_max, genus_max + d_max - 1))
    entries = {}
    for d in range(1, d_max + 1):
        coeff = F.coefficient(d)
        for alpha, beta in mode_pairs(mode, d):
            ell = key_length(mode, alpha, beta)
            sgn = pair_sign(mode, alpha, beta)
            series = coeff.get(mode_key(mode, alpha, beta), LaurentGenusSeries.zero())
            for g in range(-d + 1, genus_max + 1):
                value = sgn * series.coefficient(ell + 2 * g - 2)
                if g < 0:
                    if value != 0:
                        raise ArithmeticError(f"negative-genus connected number at {d, g, alpha, beta}")
                    continue
                if value.denominator != 1 or value < 0:
                    raise ArithmeticError(f"connected number {value} is not a nonnegative integer")
                if value:
                    entries[(d, g, alpha, beta)] = value.numerator
    return HurwitzTable(mode, True, d_max, genus_max, entries)


def connected_walk_count_char(alpha, beta, r: int, flavor: Flavor = "monotone") -> int:
    """Transitive walk counts through the logarithm, graded by step count.

    Monotone walks split over orbits without interleaving choices, so the
    series is ordinary in the step variable; classical walks interleave
    freely, so steps carry the weight 1/r!.
    """
    _check_flavor(flavor)
    alpha, beta, d = _pair(alpha, beta)
    return _connected_walks(d, r, flavor)[(alpha, beta)]


@cache
def _connected_walks(d_max: int, r_max: int, flavor: str) -> dict:
    weight = (lambda r: Fraction(1)) if flavor == "monotone" else (lambda r: Fraction(1, math.factorial(r)))
    terms = {}
    for d in range(1, d_max + 1):
        entries = {}
        for alpha, beta in mode_pairs(2, d):
            coeffs = {r: walk_count_char(alpha, beta, r, flavor) * weight(r) for r in range(r_max + 1)}
            entries[(alpha, beta)] = LaurentGenusSeries(coeffs, r_max)
        terms[d] = PairCoefficient(entries, 2)
    one = PairCoefficient.scalar(LaurentGenusSeries.one(), 2)
    F = log(ExpSeries(terms, one, 1, d_max))
    out = {}
    for alpha, beta in mode_pairs(2, d_max):
        series = F.coefficient(d_max).get((alpha, beta), LaurentGenusSeries.zero())
        value = series.coefficient(r_max) / weight(r_max)
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(f"connected walk count {value} is not a nonnegative integer")
        out[(alpha, beta)] = value.numerator
    return out


# -- inequalities and asymptotics ------------------------------------------


@dataclass(frozen=True)
class SortingReport:
    d: int
    g: int
    connected: bool
    double_sum: int
    single_sum_scaled: int
    simple_scaled: int

    @property
    def sums(self) -> tuple[int, int, int]:
        return (self.double_sum, self.single_sum_scaled, self.simple_scaled)

    @property
    def vacuous(self) -> bool:
        """No covers of this degree and genus exist (all three sums vanish)."""
        return not any(self.sums)

    @property
    def holds(self) -> bool:
        return self.double_sum < self.single_sum_scaled < self.simple_scaled


def sorting_inequalities(d: int, g: int, connected: bool = True) -> SortingReport:
    """Sums of double, single (scaled by 2^d) and simple (scaled by 4^d) numbers."""
    ones = Partition.ones(d)
    parts = enumerate_partitions(d)
    if connected:
        if g < 0:
            raise ValueError("connected numbers need g >= 0")
        table = connected_table(2, d, g)

        def h(a, b):
            return table.get(d, g, a, b)
    else:
        if g < -d + 1:
            raise ValueError("disconnected numbers need g >= 1 - d")

        def h(a, b):
            r = steps_of(a, b, g)
            return walk_count_char(a, b, r) if r >= 0 else 0

    double = sum(h(a, b) for a in parts for b in parts)
    single = sum(h(a, ones) for a in parts)
    simple = h(ones, ones)
    return SortingReport(d, g, connected, double, 2**d * single, 4**d * simple)


def large_genus_asymptote(d: int, g: int) -> Fraction:
    return Fraction(2 * (d - 1) ** (3 * d - 3), math.factorial(d - 1) * math.factorial(d)) * (d - 1) ** (2 * g)


def large_genus_ratio(d: int, g: int) -> Fraction:
    """Disconnected simple number over its large-genus asymptote, exactly."""
    if d < 2:
        raise ValueError("the asymptote degenerates at d = 1")
    ones = Partition.ones(d)
    h = walk_count_char(ones, ones, steps_of(ones, ones, g))
    return h / large_genus_asymptote(d, g)


def radius_trend(d_max: int) -> list[float]:
    """(H_0^d / d!)^(1/d) for d = 1..d_max from connected simple numbers."""
    table = connected_table(0, d_max, 0)
    return [(table.get(d, 0) / math.factorial(d)) ** (1 / d) for d in range(1, d_max + 1)]


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def minimal_factorization_count(beta) -> tuple[int, int]:
    """Minimal monotone walks from the identity into the class beta.

    Returns the walk count and ``|C_beta| * prod_i Cat(beta_i - 1)``; the two
    agree, i.e. each fixed permutation of type beta has a Catalan product of
    minimal monotone factorizations.  With a single cycle this is the
    connected genus-zero number from ``1^d`` to ``(d)`` divided by ``(d-1)!``.
    """
    beta = Partition.from_parts(beta)
    d = beta.size
    count = walk_count_char(Partition.ones(d), beta, d - len(beta))
    return count, class_size(beta) * math.prod(catalan(b - 1) for b in beta)
