"""Monte Carlo integration over Haar-distributed unitary matrices.

Sampling: a complex Ginibre matrix (independent standard complex Gaussian
entries) is orthonormalized column by column with modified Gram-Schmidt,
applied twice for stability.  Gram-Schmidt produces a triangular factor with
a positive diagonal, which is exactly the phase convention that makes the
orthonormal factor Haar distributed.

Randomness: numpy's PCG64 generator.  A run with seed ``s`` draws its batches
from ``SeedSequence(s).spawn(n_batches)`` in order, so batch ``i`` always uses
the ``i``-th child stream regardless of how batches are scheduled.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .characters import character_table
from .coupling import string_coefficients
from .partitions import Partition, centralizer_order, dim_gl

BATCH = 10_000
MAX_N = 16
# double-precision allowance, relevant when the integrand is constant
ROUNDING = 1e-12


def orthonormalize(Z: np.ndarray) -> np.ndarray:
    """Batched modified Gram-Schmidt on the columns of ``Z`` (shape ``(B, N, N)``)."""
    Q = np.array(Z, dtype=np.complex128, copy=True)
    n = Q.shape[-1]
    for j in range(n):
        v = Q[:, :, j]
        for _ in range(2):
            for i in range(j):
                qi = Q[:, :, i]
                v -= qi * np.einsum("bk,bk->b", qi.conj(), v)[:, None]
        v /= np.linalg.norm(v, axis=1)[:, None]
        Q[:, :, j] = v
    return Q


def ginibre(rng: np.random.Generator, batch: int, N: int) -> np.ndarray:
    shape = (batch, N, N)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


class HaarSampler:
    """Deterministic stream of Haar unitaries of size ``N``.

    ``sample()`` returns one matrix; ``batches(total)`` yields stacked batches
    whose concatenation depends only on the seed and ``total``.
    """

    def __init__(self, N: int, seed: int = 0):
        if not 1 <= N <= MAX_N:
            raise ValueError(f"N must lie in 1..{MAX_N}")
        self.N = N
        self.seed = int(seed)
        self._single = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def sample(self) -> np.ndarray:
        return orthonormalize(ginibre(self._single, 1, self.N))[0]

    def batches(self, total: int, batch: int = BATCH):
        n_batches = -(-total // batch)
        children = np.random.SeedSequence(self.seed).spawn(n_batches)
        for i, child in enumerate(children):
            size = min(batch, total - i * batch)
            rng = np.random.Generator(np.random.PCG64(child))
            yield orthonormalize(ginibre(rng, size, self.N))


def haar_sample(sampler: HaarSampler) -> np.ndarray:
    return sampler.sample()


def unitarity_residual(U: np.ndarray) -> float:
    """Max-entry norm of U U^dagger - I (works on stacks)."""
    eye = np.eye(U.shape[-1])
    return float(np.max(np.abs(U @ np.conj(np.swapaxes(U, -1, -2)) - eye)))


def _mean_stderr(values: np.ndarray) -> tuple[complex, float]:
    n = values.size
    mean = complex(values.mean())
    var = values.real.var(ddof=1) + values.imag.var(ddof=1)
    return mean, float(math.sqrt(var / n))


@dataclass
class EstimateReport:
    m: int
    N: int
    z: complex
    spectra: list[list[complex]]
    samples: int
    seed: int
    mean: complex
    stderr: float
    target: complex
    depth: int = 0
    max_residual: float = 0.0

    @property
    def deviation(self) -> float:
        """|mean - target| in units of the standard error."""
        return abs(self.mean - self.target) / self.stderr if self.stderr else math.inf

    def agrees(self, sigmas: float = 3.0) -> bool:
        slack = sigmas * self.stderr + ROUNDING * max(1.0, abs(self.target))
        return abs(self.mean - self.target) <= slack

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "N": self.N,
            "z_re": self.z.real,
            "z_im": self.z.imag,
            "spectra": [[[c.real, c.imag] for c in s] for s in self.spectra],
            "samples": self.samples,
            "seed": self.seed,
            "mean_re": self.mean.real,
            "mean_im": self.mean.imag,
            "stderr": self.stderr,
            "target_re": self.target.real,
            "target_im": self.target.imag,
        }


def _integrand(m: int, N: int, z: complex, a: np.ndarray, b: np.ndarray, U: np.ndarray) -> np.ndarray:
    if m == 2:
        # Tr(A U B U^dagger) = sum_ij a_i |U_ij|^2 b_j for diagonal fields
        w = np.abs(U) ** 2
        tr = np.einsum("i,bij,j->b", a, w, b)
        return np.exp(z * N * tr)
    diag = np.diagonal(U, axis1=1, axis2=2)
    tr = diag @ a + np.conj(diag) @ b
    return np.exp(cmath.sqrt(z) * N * tr)


def _power_sum(k: int, s: Sequence[complex]) -> complex:
    return sum(x**k for x in s)


def _power(alpha: Partition, s: Sequence[complex]) -> complex:
    return math.prod((_power_sum(k, s) for k in alpha), start=1 + 0j)


def series_target(m: int, N: int, z: complex, spectra: Sequence[Sequence[complex]], tol: float) -> tuple[complex, int]:
    """sum_d z^d/d! I^d at complex spectra, truncated once the tail is below tol.

    Each coefficient is bounded by N^(2d) R^d with R the product of the
    spectral radii, so the tail beyond D is at most an exponential tail in
    x = |z| N^2 R, bounded geometrically.
    """
    if m == 1:
        field = [ai * bi for ai, bi in zip(spectra[0], spectra[1])]
        radius = max(abs(c) for c in field)
        fields = (field,)
    else:
        radius = max(abs(c) for c in spectra[0]) * max(abs(c) for c in spectra[1])
        fields = tuple(spectra)
    x = abs(z) * N * N * radius
    total = 1 + 0j
    d = 0
    while True:
        d += 1
        coeff = 0j
        for (alpha, beta), c in string_coefficients(m, d, N).items():
            term = complex(c) * _power(alpha, fields[0])
            if m == 2:
                term *= _power(beta, fields[1])
            coeff += term
        total += z**d / math.factorial(d) * coeff
        nxt = x ** (d + 1) / math.factorial(d + 1)
        q = x / (d + 2)
        # below double precision the tail cannot change the target
        if q < 1 and nxt / (1 - q) < max(tol, 1e-16 * abs(total)):
            return total, d


def estimate_integral(
    m: int,
    N: int,
    z: complex,
    spectra: Sequence[Sequence[complex]],
    samples: int = 100_000,
    seed: int = 0,
) -> EstimateReport:
    """Sample mean of the integrand with its standard error and the series value.

    ``m = 2``: ``exp(z N Tr A U B U^-1)``; ``m = 1``: ``exp(sqrt(z) N Tr(A U + B U^-1))``
    with the principal square root.  ``A`` and ``B`` are diagonal with the
    given (complex) spectra.
    """
    if m not in (1, 2):
        raise ValueError("Monte Carlo covers m = 1 and m = 2")
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    a = np.asarray(spectra[0], dtype=np.complex128)
    b = np.asarray(spectra[1], dtype=np.complex128)
    if a.shape != (N,) or b.shape != (N,):
        raise ValueError(f"spectra must have length N = {N}")
    z = complex(z)
    sampler = HaarSampler(N, seed)
    chunks = []
    worst = 0.0
    for U in sampler.batches(samples):
        worst = max(worst, unitarity_residual(U))
        with np.errstate(over="ignore", invalid="ignore"):
            vals = _integrand(m, N, z, a, b, U)
        if not np.all(np.isfinite(vals)):
            bad = int(np.count_nonzero(~np.isfinite(vals)))
            raise FloatingPointError(f"{bad} non-finite integrand values (m={m}, N={N}, z={z})")
        chunks.append(vals)
    values = np.concatenate(chunks)
    mean, stderr = _mean_stderr(values)
    target, depth = series_target(m, N, z, [list(map(complex, a)), list(map(complex, b))], stderr / 10)
    return EstimateReport(
        m, N, z, [list(map(complex, a)), list(map(complex, b))], samples, seed, mean, stderr, target, depth, worst
    )


def _schur_from_power_sums(lam: Partition, p: dict[int, np.ndarray]) -> np.ndarray:
    table = character_table(lam.size)
    out = 0
    for alpha, chi in zip(table.partitions, table.row(lam)):
        if chi:
            out = out + Fraction(chi, centralizer_order(alpha)).__float__() * math.prod(p[k] for k in alpha)
    return out


def _matrix_power_sums(M: np.ndarray, kmax: int) -> dict[int, np.ndarray]:
    out = {}
    P = M
    for k in range(1, kmax + 1):
        out[k] = np.trace(P, axis1=-2, axis2=-1)
        P = P @ M
    return out


def _schur_of_eigs(lam: Partition, eigs: Sequence[complex]) -> complex:
    p = {k: np.asarray(_power_sum(k, eigs)) for k in range(1, max(lam.size, 1) + 1)}
    return complex(_schur_from_power_sums(lam, p))


@dataclass
class OrthogonalityReport:
    N: int
    lam: Partition
    mu: Partition
    samples: int
    seed: int
    pair_mean: complex
    pair_stderr: float
    pair_target: complex
    conj_mean: complex
    conj_stderr: float
    conj_target: complex

    def agrees(self, sigmas: float = 3.0) -> bool:
        def close(mean, target, se):
            return abs(mean - target) <= sigmas * se + ROUNDING * max(1.0, abs(target))

        return close(self.pair_mean, self.pair_target, self.pair_stderr) and close(
            self.conj_mean, self.conj_target, self.conj_stderr
        )


def schur_orthogonality_check(
    N: int,
    lam,
    mu,
    samples: int = 100_000,
    seed: int = 0,
    a: Sequence[complex] | None = None,
    b: Sequence[complex] | None = None,
) -> OrthogonalityReport:
    """Estimate int s_lam(AU) s_mu(BU^-1) dU and int s_lam(AUBU^-1) dU.

    Targets are delta_{lam mu} s_lam(AB)/dim W^lam and s_lam(A) s_lam(B)/dim W^lam.
    """
    lam, mu = Partition.from_parts(lam), Partition.from_parts(mu)
    if lam.size > 4 or mu.size > 4 or N > 4:
        raise ValueError("orthogonality checks are limited to |lam|, |mu|, N <= 4")
    a = np.asarray(a if a is not None else [1] * N, dtype=np.complex128)
    b = np.asarray(b if b is not None else [1] * N, dtype=np.complex128)
    A, B = np.diag(a), np.diag(b)
    kmax = max(lam.size, mu.size, 1)
    pairs, conjs = [], []
    for U in HaarSampler(N, seed).batches(samples):
        Uinv = np.conj(np.swapaxes(U, -1, -2))
        pa = _matrix_power_sums(A @ U, kmax)
        pb = _matrix_power_sums(B @ Uinv, kmax)
        pairs.append(_schur_from_power_sums(lam, pa) * _schur_from_power_sums(mu, pb))
        pc = _matrix_power_sums(A @ U @ B @ Uinv, kmax)
        conjs.append(_schur_from_power_sums(lam, pc))
    pair_mean, pair_se = _mean_stderr(np.concatenate(pairs))
    conj_mean, conj_se = _mean_stderr(np.concatenate(conjs))
    dim = float(dim_gl(lam, N))
    pair_target = _schur_of_eigs(lam, a * b) / dim if lam == mu else 0j
    conj_target = _schur_of_eigs(lam, a) * _schur_of_eigs(lam, b) / dim
    return OrthogonalityReport(
        N, lam, mu, samples, seed, pair_mean, pair_se, pair_target, conj_mean, conj_se, conj_target
    )
