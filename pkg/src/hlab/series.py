"""Formal series in ``z`` with exponential normalization, and the coefficient
algebras they run over.

Three layers:

``LaurentGenusSeries``
    A Laurent polynomial in hbar whose exponents share one parity, together
    with an explicit truncation order.  Coefficients above ``trunc`` are
    *unknown*, which is different from zero; asking for them raises
    :class:`~hlab.errors.TruncationError`.

``PairCoefficient``
    A finite linear combination of monomials ``p_alpha(A) p_beta(B)`` with
    coefficients in a commutative ring (``Fraction`` or ``LaurentGenusSeries``).
    Multiplication concatenates the partitions.

``ExpSeries``
    ``const * 1 + sum_{d >= 1} z^d / d! * c_d`` up to ``d_max``.  The single
    multiplication primitive is binomial convolution; ``log`` and ``exp`` use
    the exponential-formula recurrences.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .errors import AlgebraMismatchError, TruncationError
from .partitions import Partition

Trunc = Union[int, float]  # an int, or math.inf for exact series

__all__ = [
    "LaurentGenusSeries",
    "PairCoefficient",
    "ExpSeries",
    "mul",
    "log",
    "exp",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentGenusSeries:
    """Truncated Laurent series in hbar on a parity-homogeneous exponent grid.

    Parameters
    ----------
    coeffs:
        Mapping exponent -> rational.  Zero entries are dropped.
    trunc:
        Largest exponent whose coefficient is known.  ``math.inf`` marks an
        exact (finite) Laurent polynomial.
    """

    __slots__ = ("_c", "trunc")

    def __init__(self, coeffs: Mapping[int, object] | None = None, trunc: Trunc = math.inf):
        c = {int(e): _frac(v) for e, v in (coeffs or {}).items() if v != 0}
        if trunc != math.inf:
            trunc = int(trunc)
        bad = [e for e in c if e > trunc]
        if bad:
            raise ValueError(f"exponents {bad} lie above the truncation order {trunc}")
        if len({e % 2 for e in c}) > 1:
            raise ValueError(f"mixed exponent parity in {sorted(c)}")
        self._c = c
        self.trunc = trunc

    # construction helpers
    @classmethod
    def zero(cls, trunc: Trunc = math.inf) -> LaurentGenusSeries:
        return cls({}, trunc)

    @classmethod
    def one(cls) -> LaurentGenusSeries:
        return cls({0: 1})

    @classmethod
    def monomial(cls, exponent: int, coeff=1, trunc: Trunc = math.inf) -> LaurentGenusSeries:
        return cls({exponent: coeff}, trunc)

    # inspection
    @property
    def parity(self) -> int | None:
        if not self._c:
            return None
        return next(iter(self._c)) % 2

    @property
    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def step(self) -> int:
        return 2

    @property
    def coeffs(self) -> list[Fraction]:
        """Dense coefficient list from ``min_exp`` in steps of two up to the top known term."""
        if not self._c:
            return []
        lo, hi = min(self._c), max(self._c)
        return [self._c.get(e, Fraction(0)) for e in range(lo, hi + 1, 2)]

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def is_exact(self) -> bool:
        return self.trunc == math.inf

    def is_zero(self) -> bool:
        """True for the exact zero series only."""
        return not self._c and self.trunc == math.inf

    def known_zero(self) -> bool:
        return not self._c

    def coefficient(self, exponent: int) -> Fraction:
        if exponent > self.trunc:
            raise TruncationError(
                f"coefficient of hbar^{exponent} requested, known only up to hbar^{self.trunc}"
            )
        return self._c.get(exponent, Fraction(0))

    __getitem__ = coefficient

    def _support_floor(self) -> Trunc:
        # lowest exponent that can carry a nonzero coefficient, known or not
        if self._c:
            return min(self._c)
        return self.trunc + 1

    # arithmetic
    def truncate(self, trunc: Trunc) -> LaurentGenusSeries:
        """Forget coefficients above ``trunc`` (never widens the window)."""
        t = min(trunc, self.trunc)
        return LaurentGenusSeries({e: v for e, v in self._c.items() if e <= t}, t)

    def _coerce(self, other) -> LaurentGenusSeries | None:
        if isinstance(other, LaurentGenusSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentGenusSeries({0: other})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = min(self.trunc, other.trunc)
        c = {e: v for e, v in self._c.items() if e <= t}
        for e, v in other._c.items():
            if e <= t:
                c[e] = c.get(e, 0) + v
        return LaurentGenusSeries(c, t)

    __radd__ = __add__

    def __neg__(self) -> LaurentGenusSeries:
        return LaurentGenusSeries({e: -v for e, v in self._c.items()}, self.trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                # scaling by an exact zero keeps the window
                return LaurentGenusSeries({}, self.trunc)
            return LaurentGenusSeries({e: v * other for e, v in self._c.items()}, self.trunc)
        if not isinstance(other, LaurentGenusSeries):
            return NotImplemented
        t = min(self.trunc + other._support_floor(), other.trunc + self._support_floor())
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                if e <= t:
                    c[e] = c.get(e, 0) + v1 * v2
        return LaurentGenusSeries(c, t)

    __rmul__ = __mul__

    def shift(self, k: int) -> LaurentGenusSeries:
        """Multiply by hbar^k."""
        return LaurentGenusSeries({e + k: v for e, v in self._c.items()}, self.trunc + k)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._c == other._c and self.trunc == other.trunc

    def agrees_with(self, other: LaurentGenusSeries) -> bool:
        """Equality of coefficients on the common known window."""
        t = min(self.trunc, other.trunc)
        return self.truncate(t)._c == other.truncate(t)._c

    def __hash__(self):
        return hash((frozenset(self._c.items()), self.trunc))

    def __repr__(self) -> str:
        terms = " + ".join(f"{v}*h^{e}" for e, v in self.items()) or "0"
        return f"LaurentGenusSeries({terms}; trunc={self.trunc})"


Key = tuple[Partition, Partition]
EMPTY_KEY: Key = (Partition(), Partition())


def _key(alpha, beta=()) -> Key:
    return (Partition.from_parts(alpha), Partition.from_parts(beta))


class PairCoefficient:
    """Linear combination of ``p_alpha(A) p_beta(B)`` over a commutative ring.

    ``mode`` records which theory the element belongs to (0: no fields,
    1: one field with ``beta`` left implicit as the empty key, 2: two fields);
    elements of different modes never mix.  When the coefficients are
    :class:`LaurentGenusSeries`, the hbar exponents of the entry at
    ``(alpha, beta)`` must have the parity of ``len(alpha) + len(beta)``.
    """

    __slots__ = ("terms", "mode")

    def __init__(self, terms: Mapping | None = None, mode: int = 2):
        if mode not in (0, 1, 2):
            raise ValueError("mode must be 0, 1 or 2")
        clean: dict[Key, object] = {}
        for k, v in (terms or {}).items():
            key = _key(*k)
            if mode == 0 and key != EMPTY_KEY:
                raise ValueError(f"mode 0 carries only the trivial key, got {key}")
            if mode == 1 and key[1]:
                raise ValueError(f"mode 1 keys leave beta implicit, got {key}")
            if _is_exact_zero(v):
                continue
            if isinstance(v, LaurentGenusSeries) and v.parity is not None:
                if v.parity != (len(key[0]) + len(key[1])) % 2:
                    raise ValueError(f"hbar parity violates the genus grading at {key}")
            clean[key] = clean[key] + v if key in clean else v
        self.terms = clean
        self.mode = mode

    @classmethod
    def scalar(cls, value, mode: int = 2) -> PairCoefficient:
        return cls({EMPTY_KEY: value}, mode)

    def _check(self, other: PairCoefficient) -> None:
        if not isinstance(other, PairCoefficient) or other.mode != self.mode:
            raise AlgebraMismatchError("pair coefficients of different modes")

    def __getitem__(self, key) -> object:
        return self.terms.get(_key(*key), 0)

    def get(self, key, default=0):
        return self.terms.get(_key(*key), default)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return PairCoefficient(out, self.mode)

    def __neg__(self):
        return PairCoefficient({k: -v for k, v in self.terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PairCoefficient({k: v * other for k, v in self.terms.items()}, self.mode)
        self._check(other)
        out: dict[Key, object] = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                k = (a1.merge(a2), b1.merge(b2))
                prod = v1 * v2
                out[k] = out[k] + prod if k in out else prod
        return PairCoefficient(out, self.mode)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def map(self, fn: Callable) -> PairCoefficient:
        return PairCoefficient({k: fn(v) for k, v in self.terms.items()}, self.mode)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairCoefficient):
            return NotImplemented
        return self.mode == other.mode and self.terms == other.terms

    def __repr__(self) -> str:
        body = ", ".join(f"{tuple(a)}|{tuple(b)}: {v!r}" for (a, b), v in sorted(self.terms.items()))
        return f"PairCoefficient(mode={self.mode}, {{{body}}})"


def _is_exact_zero(v) -> bool:
    if isinstance(v, LaurentGenusSeries):
        return v.is_zero()
    if isinstance(v, PairCoefficient):
        return not v.terms
    return v == 0


def _algebra_tag(x) -> tuple:
    if isinstance(x, PairCoefficient):
        return (PairCoefficient, x.mode)
    if isinstance(x, int):
        return (Fraction,)
    return (type(x),)


class ExpSeries:
    """``const * one + sum_{d=1}^{d_max} z^d / d! * terms[d]``.

    ``one`` is the unit of the coefficient algebra; ``const`` is a rational.
    Missing degrees below ``d_max`` are zero.
    """

    __slots__ = ("terms", "one", "const", "d_max")

    def __init__(self, terms: Mapping[int, object] | Iterable, one, const=1, d_max: int | None = None):
        if not isinstance(terms, Mapping):
            terms = {d: c for d, c in enumerate(terms, start=1)}
        if any(d < 1 for d in terms):
            raise ValueError("degrees start at 1; the constant term is separate")
        self.terms = dict(terms)
        self.one = one
        self.const = _frac(const)
        self.d_max = d_max if d_max is not None else max(self.terms, default=0)
        if any(d > self.d_max for d in self.terms):
            raise ValueError("term above d_max")
        tag = _algebra_tag(one)
        for c in self.terms.values():
            if _algebra_tag(c) != tag and not _is_exact_zero(c):
                raise AlgebraMismatchError("coefficients do not share the algebra of the unit")

    def coefficient(self, d: int):
        if d < 0:
            raise ValueError("negative degree")
        if d > self.d_max:
            raise TruncationError(f"degree {d} beyond d_max = {self.d_max}")
        if d == 0:
            return self.one * self.const
        return self.terms.get(d, self.one * 0)

    __getitem__ = coefficient

    def _check(self, other: ExpSeries) -> None:
        if _algebra_tag(self.one) != _algebra_tag(other.one):
            raise AlgebraMismatchError("series over different coefficient algebras")

    def __mul__(self, other):
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return mul(self, other)

    def log(self) -> ExpSeries:
        return log(self)

    def exp(self) -> ExpSeries:
        return exp(self)

    def __repr__(self) -> str:
        return f"ExpSeries(const={self.const}, d_max={self.d_max}, terms={self.terms!r})"


def mul(S: ExpSeries, T: ExpSeries) -> ExpSeries:
    """Binomial convolution (ST)^d = sum_c binom(d, c) S^c T^(d-c)."""
    S._check(T)
    d_max = min(S.d_max, T.d_max)
    out = {}
    for d in range(1, d_max + 1):
        acc = None
        for c in range(d + 1):
            a, b = S.coefficient(c), T.coefficient(d - c)
            if _is_exact_zero(a) or _is_exact_zero(b):
                continue
            term = (a * b) * math.comb(d, c)
            acc = term if acc is None else acc + term
        out[d] = acc if acc is not None else S.one * 0
    return ExpSeries(out, S.one, S.const * T.const, d_max)


def log(S: ExpSeries) -> ExpSeries:
    """Connected part: F^d = c_d - sum_{c<d} binom(d-1, c-1) F^c c_{d-c}."""
    if S.const != 1:
        raise ValueError("log needs a unit constant term")
    F: dict[int, object] = {}
    for d in range(1, S.d_max + 1):
        acc = S.coefficient(d)
        for c in range(1, d):
            rest = S.coefficient(d - c)
            if _is_exact_zero(F[c]) or _is_exact_zero(rest):
                continue
            acc = acc - (F[c] * rest) * math.comb(d - 1, c - 1)
        F[d] = acc
    return ExpSeries(F, S.one, 0, S.d_max)


def exp(F: ExpSeries) -> ExpSeries:
    """E^d = sum_{c=1}^{d} binom(d-1, c-1) F^c E^(d-c), with E^0 = 1."""
    if F.const != 0:
        raise ValueError("exp needs a zero constant term")
    E: dict[int, object] = {0: F.one}
    for d in range(1, F.d_max + 1):
        acc = None
        for c in range(1, d + 1):
            a = F.coefficient(c)
            if _is_exact_zero(a) or _is_exact_zero(E[d - c]):
                continue
            term = (a * E[d - c]) * math.comb(d - 1, c - 1)
            acc = term if acc is None else acc + term
        E[d] = acc if acc is not None else F.one * 0
    del E[0]
    return ExpSeries(E, F.one, 1, F.d_max)
