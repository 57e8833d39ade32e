"""Symmetric-function evaluations used by the string form.

Content alphabets give the complete (``f_r``) and elementary (``e_r``)
evaluations; spectra give power sums and Schur polynomials.  Everything here
is exact over :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Sequence

from .characters import character_table
from .errors import SingularEvaluationError
from .partitions import Partition, centralizer_order, enumerate_partitions

Spectrum = Sequence[Fraction]


def _complete(alphabet: Sequence[int], r_max: int) -> list[int]:
    # h_r over a growing alphabet: h_r(X + x) = h_r(X) + x h_{r-1}(X + x)
    h = [1] + [0] * r_max
    for x in alphabet:
        for r in range(1, r_max + 1):
            h[r] += x * h[r - 1]
    return h


def _elementary(alphabet: Sequence[int], r_max: int) -> list[int]:
    e = [1] + [0] * r_max
    for x in alphabet:
        for r in range(r_max, 0, -1):
            e[r] += x * e[r - 1]
    return e


@dataclass(frozen=True)
class ContentEvaluation:
    """``f[r]`` and ``e[r]`` on the content alphabet, for ``r <= r_max``."""

    partition: Partition
    f: tuple[int, ...]
    e: tuple[int, ...]

    @property
    def r_max(self) -> int:
        return len(self.f) - 1


def content_eval(lam: Partition, r_max: int) -> ContentEvaluation:
    if r_max < 0:
        raise ValueError("r_max must be nonnegative")
    lam = Partition(lam)
    f, e = _content_eval(lam, r_max)
    return ContentEvaluation(lam, f, e)


@cache
def _content_eval(lam: Partition, r_max: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    contents = lam.contents()
    return tuple(_complete(contents, r_max)), tuple(_elementary(contents, r_max))


def f_r(lam: Partition, r: int) -> int:
    """Complete homogeneous symmetric function of degree r on the contents."""
    return _f_cached(Partition(lam), r)


@cache
def _f_cached(lam: Partition, r: int) -> int:
    return _complete(lam.contents(), r)[r]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind by the triangular recurrence."""
    return _stirling_row(n)[k] if 0 <= k <= n else 0


@cache
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1) + (0,)
    return tuple(
        (k * prev[k] if k else 0) + (prev[k - 1] if k else 0) for k in range(n + 1)
    )


def stirling_specialization(N: int, r: int) -> int:
    """f_r(1, ..., N), which equals S(N + r, N)."""
    if N < 1:
        raise ValueError("N must be positive")
    if r < 0:
        raise ValueError("r must be nonnegative")
    return _complete(range(1, N + 1), r)[r]


def omega(lam: Partition, hbar: Fraction) -> Fraction:
    """Omega_hbar(lam) = prod over cells of (1 + hbar c)."""
    return math.prod((1 + Fraction(hbar) * c for c in Partition(lam).contents()), start=Fraction(1))


def omega_inverse(lam: Partition, N: int) -> Fraction:
    """prod over cells of 1 / (1 + c / N); raises if some content equals -N."""
    return _omega_inverse(Partition(lam), N)


@cache
def _omega_inverse(lam: Partition, N: int) -> Fraction:
    num, den = 1, 1
    for c in lam.contents():
        if N + c == 0:
            raise SingularEvaluationError(f"content {c} of {lam} cancels N = {N}")
        num *= N
        den *= N + c
    return Fraction(num, den)


def power_sum(k: int, s: Spectrum) -> Fraction:
    return sum((Fraction(x) ** k for x in s), Fraction(0))


def power_sum_eval(alpha: Partition, s: Spectrum) -> Fraction:
    """p_alpha(s) = prod_i sum_j s_j^{alpha_i}."""
    sums: dict[int, Fraction] = {}
    out = Fraction(1)
    for k in alpha:
        if k not in sums:
            sums[k] = power_sum(k, s)
        out *= sums[k]
    return out


def schur_eval(lam: Partition, s: Spectrum) -> Fraction:
    """s_lam(s) through the expansion sum_alpha chi^lam_alpha p_alpha / z_alpha."""
    lam = Partition(lam)
    if len(lam) > len(s):
        return Fraction(0)
    table = character_table(lam.size)
    row = table.row(lam)
    sums: dict[int, Fraction] = {}
    total = Fraction(0)
    for alpha, chi in zip(table.partitions, row):
        if chi == 0:
            continue
        p = Fraction(1)
        for k in alpha:
            if k not in sums:
                sums[k] = power_sum(k, s)
            p *= sums[k]
        total += Fraction(chi, centralizer_order(alpha)) * p
    return total


def schur_table(d: int, s: Spectrum) -> dict[Partition, Fraction]:
    """All s_lam(s) for lam of size d, sharing the power sums."""
    table = character_table(d)
    sums = {k: power_sum(k, s) for k in range(1, d + 1)}
    p = {a: math.prod((sums[k] for k in a), start=Fraction(1)) for a in table.partitions}
    out = {}
    for lam, row in zip(table.partitions, table.chi):
        if len(lam) > len(s):
            out[lam] = Fraction(0)
            continue
        out[lam] = sum(
            (Fraction(chi, centralizer_order(a)) * p[a] for a, chi in zip(table.partitions, row) if chi),
            Fraction(0),
        )
    return out


# -- independent oracle ------------------------------------------------------


def semistandard_tableaux(lam: Partition, n: int):
    """Yield every semistandard tableau of shape lam with entries 1..n.

    Tableaux are tuples of rows; rows weakly increase, columns strictly.
    """
    lam = Partition(lam)
    cells = list(lam.cells())
    filling: dict[tuple[int, int], int] = {}

    def rec(k: int):
        if k == len(cells):
            yield tuple(tuple(filling[(i, j)] for j in range(p)) for i, p in enumerate(lam))
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, n + 1):
            filling[(i, j)] = v
            yield from rec(k + 1)
        filling.pop((i, j), None)

    yield from rec(0)


def schur_eval_tableaux(lam: Partition, s: Spectrum) -> Fraction:
    """s_lam(s) as the sum over semistandard tableaux of prod s_entry."""
    s = [Fraction(x) for x in s]
    total = Fraction(0)
    for t in semistandard_tableaux(lam, len(s)):
        total += math.prod((s[v - 1] for v in itertools.chain.from_iterable(t)), start=Fraction(1))
    return total


def count_standard_tableaux(lam: Partition) -> int:
    """Number of standard Young tableaux by removing corners recursively."""
    return _syt(Partition(lam))


@cache
def _syt(lam: Partition) -> int:
    if lam.size == 0:
        return 1
    total = 0
    for i, p in enumerate(lam):
        if i + 1 == len(lam) or lam[i + 1] < p:
            parts = list(lam)
            parts[i] -= 1
            total += _syt(Partition(x for x in parts if x))
    return total
