"""Irreducible characters of the symmetric groups.

Values come from the Murnaghan-Nakayama rule, implemented on beta-sets
(abacus positions).  Removing a border strip of length ``k`` corresponds to
sliding one bead from position ``b`` to the free position ``b - k``; the sign
is ``(-1)`` to the number of beads jumped over.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, cached_property

from .errors import CapacityError
from .partitions import (
    Partition,
    class_size,
    dim_sym,
    enumerate_partitions,
)

DEFAULT_MAX_DEGREE = 12

_max_degree = DEFAULT_MAX_DEGREE


def set_max_degree(d: int) -> None:
    """Change the largest degree for which character tables may be built."""
    global _max_degree
    if d < 1:
        raise ValueError("maximum degree must be positive")
    _max_degree = d


def max_degree() -> int:
    return _max_degree


def _check_capacity(d: int) -> None:
    if d > _max_degree:
        raise CapacityError(
            f"character tables are limited to d <= {_max_degree} (asked for {d})"
        )


def _beta_set(lam: tuple[int, ...]) -> frozenset[int]:
    n = len(lam)
    return frozenset(p + n - 1 - i for i, p in enumerate(lam))


def _shape(beta: frozenset[int]) -> tuple[int, ...]:
    beads = sorted(beta, reverse=True)
    n = len(beads)
    return tuple(b - (n - 1 - i) for i, b in enumerate(beads) if b - (n - 1 - i) > 0)


@cache
def _mn(lam: tuple[int, ...], alpha: tuple[int, ...]) -> int:
    """chi^lam at cycle type alpha (alpha sorted, largest part removed first)."""
    if not alpha:
        return 1 if not lam else 0
    k, rest = alpha[0], alpha[1:]
    beta = _beta_set(lam)
    total = 0
    for b in beta:
        target = b - k
        if target < 0 or target in beta:
            continue
        jumped = sum(1 for x in beta if target < x < b)
        moved = _shape((beta - {b}) | {target})
        total += (-1) ** jumped * _mn(moved, rest)
    return total


def character_value(lam: Partition, alpha: Partition) -> int:
    lam, alpha = Partition(lam), Partition(alpha)
    if lam.size != alpha.size:
        raise ValueError(f"size mismatch: |{lam}| != |{alpha}|")
    _check_capacity(lam.size)
    return _mn(tuple(lam), tuple(alpha))


@dataclass(frozen=True)
class CharacterTable:
    """Exact character table of S(d).

    ``chi[i][j]`` is the value of the irreducible indexed by ``partitions[i]``
    on the class indexed by ``partitions[j]``; both axes use the canonical
    partition order.
    """

    d: int
    partitions: tuple[Partition, ...]
    chi: tuple[tuple[int, ...], ...]

    def index(self, p: Partition) -> int:
        return self._index[Partition(p)]

    @cached_property
    def _index(self) -> dict[Partition, int]:
        return {p: i for i, p in enumerate(self.partitions)}

    def value(self, lam: Partition, alpha: Partition) -> int:
        return self.chi[self.index(lam)][self.index(alpha)]

    def row(self, lam: Partition) -> tuple[int, ...]:
        return self.chi[self.index(lam)]

    def check_orthogonality(self) -> bool:
        parts = self.partitions
        sizes = [class_size(a) for a in parts]
        fact = math.factorial(self.d)
        for i, j in itertools.combinations_with_replacement(range(len(parts)), 2):
            row = sum(c * x * y for c, x, y in zip(sizes, self.chi[i], self.chi[j]))
            if row != (fact if i == j else 0):
                return False
            col = sum(self.chi[k][i] * self.chi[k][j] for k in range(len(parts)))
            want = fact // sizes[i] if i == j else 0
            if col != want:
                return False
        return True


@cache
def character_table(d: int) -> CharacterTable:
    """Character table of S(d) in canonical order; capacity limited."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    _check_capacity(d)
    parts = tuple(enumerate_partitions(d))
    chi = tuple(tuple(_mn(tuple(lam), tuple(a)) for a in parts) for lam in parts)
    return CharacterTable(d, parts, chi)


def central_character(alpha: Partition, lam: Partition) -> int:
    """omega_alpha(lam) = |C_alpha| chi^lam_alpha / dim V^lam, checked integral."""
    alpha, lam = Partition(alpha), Partition(lam)
    if alpha.size != lam.size:
        raise ValueError(f"size mismatch: |{alpha}| != |{lam}|")
    return _central(alpha, lam)


@cache
def _central(alpha: Partition, lam: Partition) -> int:
    value = Fraction(class_size(alpha) * character_value(lam, alpha), dim_sym(lam))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral central character at {alpha}, {lam}")
    return value.numerator


# -- independent oracle ------------------------------------------------------


def character_frobenius(lam: Partition, alpha: Partition) -> int:
    """chi^lam_alpha as the coefficient of x^(lam + delta) in a_delta * p_alpha.

    Polynomials are dictionaries from exponent tuples to integers.  This route
    shares nothing with the border-strip recursion and is meant for small d.
    """
    lam, alpha = Partition(lam), Partition(alpha)
    if lam.size != alpha.size:
        raise ValueError("size mismatch")
    n = max(len(lam), 1)
    poly: dict[tuple[int, ...], int] = {}
    # Vandermonde a_delta = sum over permutations of sign * x^{sigma(delta)}
    delta = tuple(range(n - 1, -1, -1))
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        exps = tuple(delta[perm[i]] for i in range(n))
        poly[exps] = poly.get(exps, 0) + (-1) ** inversions
    for k in alpha:
        nxt: dict[tuple[int, ...], int] = {}
        for exps, c in poly.items():
            for i in range(n):
                e = list(exps)
                e[i] += k
                key = tuple(e)
                nxt[key] = nxt.get(key, 0) + c
        poly = nxt
    target = tuple(lam[i] + delta[i] if i < len(lam) else delta[i] for i in range(n))
    return poly.get(target, 0)
