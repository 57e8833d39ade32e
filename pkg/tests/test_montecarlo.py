from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from hlab.montecarlo import (
    HaarSampler,
    estimate_integral,
    orthonormalize,
    schur_orthogonality_check,
    unitarity_residual,
)


def _stack(N: int, total: int, seed: int) -> np.ndarray:
    return np.concatenate(list(HaarSampler(N, seed).batches(total)))


def test_n1_uniform_phase():
    U = _stack(1, 100_000, 3)
    assert abs(U[:, 0, 0].mean()) < 0.02


def test_entry_second_moment():
    for N in (1, 2, 3):
        U = _stack(N, 100_000, 4)
        x = np.abs(U[:, 0, 0]) ** 2
        se = x.std(ddof=1) / math.sqrt(x.size)
        assert abs(x.mean() - 1 / N) <= 3 * se + 1e-12


def test_determinant_phase():
    U = _stack(3, 100_000, 5)
    assert abs(np.linalg.det(U).mean()) < 0.02


def test_unitarity_and_reproducibility():
    for N in (1, 2, 5, 16):
        a = _stack(N, 2_000, 9)
        assert unitarity_residual(a) < 1e-12
        assert np.array_equal(a, _stack(N, 2_000, 9))
    with pytest.raises(ValueError):
        HaarSampler(17)


def test_gram_schmidt_positive_diagonal():
    rng = np.random.default_rng(0)
    Z = rng.standard_normal((4, 3, 3)) + 1j * rng.standard_normal((4, 3, 3))
    Q = orthonormalize(Z)
    R = np.conj(np.swapaxes(Q, 1, 2)) @ Z
    assert np.allclose(np.tril(R, -1), 0, atol=1e-12)
    diag = np.diagonal(R, axis1=1, axis2=2)
    assert np.all(diag.real > 0) and np.allclose(diag.imag, 0, atol=1e-12)


def test_hciz_identity_fields():
    rep = estimate_integral(2, 2, 0.05, [[1, 1], [1, 1]], 100_000, 0)
    assert rep.target == pytest.approx(cmath.exp(0.05 * 4), rel=1e-12)
    assert rep.agrees()


def test_bgw_single_variable():
    rep = estimate_integral(1, 1, 0.04, [[1], [1]], 100_000, 1)
    bessel = sum(0.04**d / math.factorial(d) ** 2 for d in range(30))
    # the series target is truncated once its tail is below stderr/10
    assert abs(rep.target - bessel) < rep.stderr / 10
    assert rep.agrees()


def test_oscillatory():
    rep = estimate_integral(2, 2, 0.05 + 0.05j, [[1, 0], [1, 0]], 100_000, 2)
    assert rep.agrees()


def test_report_json_and_determinism():
    a = estimate_integral(2, 2, 0.03, [[1, 0.5j], [0.2, -1]], 2_000, 7)
    b = estimate_integral(2, 2, 0.03, [[1, 0.5j], [0.2, -1]], 2_000, 7)
    assert a.to_json() == b.to_json()
    assert set(a.to_json()) == {
        "m", "N", "z_re", "z_im", "spectra", "samples", "seed",
        "mean_re", "mean_im", "stderr", "target_re", "target_im",
    }


def test_errors():
    with pytest.raises(ValueError):
        estimate_integral(2, 2, 0.05, [[1, 1], [1, 1]], 10)
    with pytest.raises(FloatingPointError):
        estimate_integral(2, 2, 1e6, [[1, 1], [1, 1]], 1000)


def test_schur_orthogonality_examples():
    rep = schur_orthogonality_check(2, (1,), (1,), 100_000, 0)
    assert rep.pair_target == pytest.approx(1.0)
    assert rep.agrees()
    rep = schur_orthogonality_check(2, (1,), (2,), 100_000, 1)
    assert rep.pair_target == 0
    assert rep.agrees()
    a, b = [0.5 + 0.1j, -0.3], [0.2j, 0.9]
    rep = schur_orthogonality_check(2, (1,), (1,), 100_000, 2, a, b)
    assert rep.conj_target == pytest.approx(sum(a) * sum(b) / 2)
    assert rep.agrees()
    rep = schur_orthogonality_check(3, (2, 1), (2, 1), 50_000, 3, [0.4, 0.8j, -0.5], [1, 0.3, 0.6])
    assert rep.agrees()
