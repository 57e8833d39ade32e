"""Integer partitions (Young diagrams) and their elementary statistics.

Partitions are stored as weakly decreasing tuples of positive integers.
Everything downstream indexes tables by the *canonical order* produced by
:func:`enumerate_partitions`, which is reverse-lexicographic::

    (4,) > (3, 1) > (2, 2) > (2, 1, 1) > (1, 1, 1, 1)
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Iterable, Iterator


class Partition(tuple):
    """An immutable integer partition.

    Behaves like a tuple of its parts, so hashing, equality and slicing come
    for free.  Construction validates the parts; use :meth:`from_parts` to
    accept an unsorted multiset of parts.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> Partition:
        return cls(sorted(parts, reverse=True))

    @classmethod
    def ones(cls, d: int) -> Partition:
        return cls((1,) * d)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        """Yield (row, column) of every cell, zero based, row by row."""
        for i, p in enumerate(self):
            for j in range(p):
                yield i, j

    def contents(self) -> list[int]:
        return [j - i for i, j in self.cells()]

    def hooks(self) -> list[int]:
        conj = self.conjugate()
        return [self[i] - j + conj[j] - i - 1 for i, j in self.cells()]

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def merge(self, other: Iterable[int]) -> Partition:
        """Union of parts (the product rule for power-sum monomials)."""
        return Partition.from_parts(tuple(self) + tuple(other))


def as_partition(obj) -> Partition:
    if isinstance(obj, Partition):
        return obj
    if isinstance(obj, str):
        obj = [int(x) for x in obj.strip("()[] ").replace(" ", "").split(",") if x]
    return Partition.from_parts(obj)


def enumerate_partitions(d: int, max_rows: int | None = None) -> list[Partition]:
    """All partitions of ``d`` in reverse-lexicographic order.

    ``max_rows`` keeps only partitions with at most that many parts.
    ``d = 0`` gives the single empty partition.
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    if max_rows is not None and max_rows < 1:
        raise ValueError("max_rows must be positive")
    parts = _partitions(d)
    if max_rows is None:
        return list(parts)
    return [p for p in parts if len(p) <= max_rows]


@cache
def _partitions(d: int) -> tuple[Partition, ...]:
    out: list[Partition] = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(d, d, ())
    return tuple(out)


def centralizer_order(alpha: Partition) -> int:
    """z_alpha = prod_i i^{m_i} m_i!, the order of the centralizer."""
    z = 1
    for part, mult in Counter(alpha).items():
        z *= part**mult * math.factorial(mult)
    return z


def class_size(alpha: Partition) -> int:
    """Number of permutations of cycle type ``alpha``."""
    return math.factorial(sum(alpha)) // centralizer_order(alpha)


def dim_sym(lam: Partition) -> int:
    """Dimension of the irreducible S(d)-module, by the hook length formula."""
    return math.factorial(sum(lam)) // math.prod(Partition(lam).hooks())


def dim_gl(lam: Partition, N: int) -> Fraction:
    """Dimension of the polynomial GL(N)-module: prod (N + c) / h over cells.

    Vanishes exactly when ``lam`` has more than ``N`` rows.
    """
    lam = Partition(lam)
    num = math.prod(N + c for c in lam.contents())
    return Fraction(num, math.prod(lam.hooks()))


def sign(alpha: Partition) -> int:
    """Sign of a permutation of cycle type ``alpha``."""
    return -1 if (sum(alpha) - len(alpha)) % 2 else 1


@dataclass(frozen=True)
class PartitionStats:
    partition: Partition
    conjugate: Partition
    contents: tuple[int, ...]
    hooks: tuple[int, ...]
    dim_sym: int
    class_size: int
    centralizer: int


@cache
def stats(lam: Partition) -> PartitionStats:
    lam = Partition(lam)
    hooks = tuple(lam.hooks())
    d = lam.size
    return PartitionStats(
        partition=lam,
        conjugate=lam.conjugate(),
        contents=tuple(lam.contents()),
        hooks=hooks,
        dim_sym=math.factorial(d) // math.prod(hooks),
        class_size=class_size(lam),
        centralizer=centralizer_order(lam),
    )
