"""Tests for the dense 1-D operator laboratory.

Everything here is checked against plain dense linear algebra: the
Lippmann-Schwinger resolvent identity, reciprocity, the two-object
combination rule, the first-order Kerr correction, the Rytov
decomposition and the fluctuation-dissipation statistics.
"""

import math

import numpy as np
import pytest

from kerrcasimir import (CheckResult, ConfigError, FieldVector, Grid1D,
                         NearResonanceError, OperatorSet, build_linear,
                         build_n_operator, combined_correction, gtilde,
                         monte_carlo_fdt, naive_combination,
                         noise_covariance, run_verification_suite,
                         rytov_residual)


def _im(mat):
    return (mat - np.conj(mat)) / 2j


def _two_blocks(n_points, spacing, chi_val):
    """Two dielectric blocks on a shared grid, one chi amplitude."""
    grid = Grid1D(n_points, spacing)
    block = max(3, n_points // 5)
    a0 = n_points // 8
    b1 = n_points - n_points // 8
    mask_alpha = np.arange(a0, a0 + block)
    mask_beta = np.arange(b1 - block, b1)
    eps = np.ones(n_points)
    eps[mask_alpha] = 2.25
    eps[mask_beta] = 3.0
    chi = np.zeros(n_points)
    chi[mask_alpha] = chi_val
    chi[mask_beta] = 0.5 * chi_val
    return grid, eps, chi, mask_alpha, mask_beta


_OMEGA = 1.0
_WEIGHTS = ((0.8, 0.6), (1.1, 0.4))


def _isolated(grid, eps, chi, mask):
    eps_i = np.ones(grid.n_points)
    eps_i[mask] = eps[mask]
    chi_i = np.zeros(grid.n_points)
    chi_i[mask] = chi[mask]
    _, g1_i, _ = build_linear(grid, eps_i, _OMEGA)
    n_i = build_n_operator(grid, eps_i, chi_i, _OMEGA, _WEIGHTS)
    return g1_i, n_i


def test_verification_suite_all_pass():
    results = run_verification_suite(n_points=32, spacing=0.3, seed=0)
    assert len(results) == 10
    names = [r.name for r in results]
    assert len(set(names)) == 10
    for row in results:
        assert isinstance(row, CheckResult)
        assert row.passed, "%s: %g > %g" % (row.name, row.value,
                                            row.threshold)
        assert row.value <= row.threshold


def test_linear_identities_on_larger_grids():
    for n in (64, 128):
        grid, eps, chi, mask_a, mask_b = _two_blocks(n, 0.25, 0.0)
        g0, g1, v = build_linear(grid, eps, _OMEGA)
        ident = np.eye(n)
        ls = np.linalg.norm((np.linalg.inv(g0) - v) @ g1 - ident)
        assert ls / math.sqrt(n) < 1e-10
        g1_a, _ = _isolated(grid, eps, chi, mask_a)
        g1_b, _ = _isolated(grid, eps, chi, mask_b)
        combo = naive_combination(g1_a, g1_b, g0)
        assert np.linalg.norm(combo - g1) / np.linalg.norm(g1) < 1e-10
        assert rytov_residual(g1, v, np.zeros_like(v), g0) < 1e-10


def test_grid_validation():
    with pytest.raises(ConfigError):
        Grid1D(4, 0.3)
    with pytest.raises(ConfigError):
        Grid1D(16, 0.0)
    with pytest.raises(ConfigError):
        Grid1D(16, 0.3, eta=0.0)
    with pytest.raises(ConfigError):
        Grid1D(16, 0.3, eta=-1e-3)


def test_build_linear_validation():
    grid = Grid1D(16, 0.3)
    with pytest.raises(ConfigError):
        build_linear(grid, np.full(16, 0.5), 1.0)
    with pytest.raises(ConfigError):
        build_linear(grid, np.ones(8), 1.0)
    with pytest.raises(ConfigError):
        build_linear(grid, np.ones(16), 0.0)
    with pytest.raises(ConfigError):
        build_linear(grid, np.ones(16), 1.0, eta=0.0)


def test_build_linear_inverse_identity():
    grid = Grid1D(24, 0.3)
    eps = np.ones(24)
    eps[8:14] = 2.5
    g0, g1, v = build_linear(grid, eps, 1.3)
    resid = (np.linalg.inv(g0) - v) @ g1 - np.eye(24)
    assert np.linalg.norm(resid) / math.sqrt(24) < 1e-12
    assert np.allclose(v, np.conj(v))
    assert np.count_nonzero(v - np.diag(np.diagonal(v))) == 0


def test_build_n_operator_validation():
    grid = Grid1D(16, 0.3)
    eps = np.ones(16)
    chi = np.zeros(16)
    with pytest.raises(ConfigError):
        build_n_operator(grid, eps, chi, 1.0, ())
    with pytest.raises(ConfigError):
        build_n_operator(grid, eps, chi, 1.0, ((0.8, -0.5),))
    with pytest.raises(ConfigError):
        build_n_operator(grid, eps, chi[:8], 1.0, _WEIGHTS)


def test_n_operator_real_diagonal_on_mask():
    grid, eps, chi, mask_a, mask_b = _two_blocks(32, 0.3, 1e-3)
    n_op = build_n_operator(grid, eps, chi, _OMEGA, _WEIGHTS)
    assert np.count_nonzero(n_op - np.diag(np.diagonal(n_op))) == 0
    assert np.isrealobj(n_op)
    diag = np.diagonal(n_op)
    support = np.zeros(32, dtype=bool)
    support[mask_a] = True
    support[mask_b] = True
    assert np.all(diag[~support] == 0.0)
    assert np.all(diag[support] != 0.0)


def test_gtilde_reduces_to_g1_at_zero_chi():
    grid, eps, chi, _, _ = _two_blocks(16, 0.3, 0.0)
    _, g1, _ = build_linear(grid, eps, _OMEGA)
    n_zero = build_n_operator(grid, eps, chi, _OMEGA, _WEIGHTS)
    assert np.array_equal(gtilde(g1, n_zero), g1)


def test_response_matrices_symmetric():
    grid, eps, chi, _, _ = _two_blocks(32, 0.3, 1e-3)
    g0, g1, _ = build_linear(grid, eps, _OMEGA)
    n_op = build_n_operator(grid, eps, chi, _OMEGA, _WEIGHTS)
    gt = gtilde(g1, n_op)
    for mat in (g0, g1, gt):
        assert np.linalg.norm(mat - mat.T) / np.linalg.norm(mat) < 1e-12


def test_im_g1_positive_semidefinite():
    # Im G1 = eta G1 G1^dagger for a uniform absorption, so it must be
    # a valid (PSD) noise correlator on its own
    grid, eps, _, _, _ = _two_blocks(32, 0.3, 0.0)
    _, g1, _ = build_linear(grid, eps, _OMEGA)
    lam = np.linalg.eigvalsh(_im(g1))
    assert lam.min() >= -1e-15 * lam.max()
    direct = grid.eta * g1 @ np.conj(g1).T
    assert np.allclose(_im(g1), direct, rtol=0.0, atol=1e-14)


def test_naive_combination_near_resonance():
    grid, eps, _, _, _ = _two_blocks(16, 0.3, 0.0)
    g0, _, _ = build_linear(grid, eps, _OMEGA)
    # Ga + Gb - Ga inv(G0) Gb vanishes identically for Ga = Gb = 2 G0
    with np.errstate(invalid="ignore"):
        with pytest.raises(NearResonanceError) as info:
            naive_combination(2.0 * g0, 2.0 * g0, g0)
    cond = info.value.condition_number
    assert cond is not None
    assert not np.isfinite(cond) or cond > 1e13


def test_combined_correction_single_object_is_exact():
    grid, eps, chi, mask_a, _ = _two_blocks(32, 0.3, 1e-3)
    g1_a, n_a = _isolated(grid, eps, chi, mask_a)
    gt_a = gtilde(g1_a, n_a)
    out = combined_correction(gt_a, n_a, n_a, np.zeros_like(n_a))
    assert np.array_equal(out, gt_a)


def test_combined_correction_validation():
    n = np.diag([1.0, 2.0, 0.0, 0.0])
    g = np.eye(4, dtype=complex)
    full = np.ones((4, 4))
    with pytest.raises(ConfigError):
        combined_correction(g, full, n, np.zeros_like(n))
    outside = np.diag([0.0, 0.0, 3.0, 0.0])
    with pytest.raises(ConfigError):
        combined_correction(g, n, outside, np.zeros_like(n))


def _union_errors(chi_val):
    """Correction-vs-direct and Rytov residuals at one chi amplitude."""
    grid, eps, chi, mask_a, mask_b = _two_blocks(32, 0.3, chi_val)
    g0, g1, v = build_linear(grid, eps, _OMEGA)
    n_total = build_n_operator(grid, eps, chi, _OMEGA, _WEIGHTS)
    gt_union = gtilde(g1, n_total)
    g1_a, n_a = _isolated(grid, eps, chi, mask_a)
    g1_b, n_b = _isolated(grid, eps, chi, mask_b)
    naive = naive_combination(gtilde(g1_a, n_a), gtilde(g1_b, n_b), g0)
    corrected = combined_correction(naive, n_total, n_a, n_b)
    dev = np.linalg.norm(corrected - gt_union) / np.linalg.norm(gt_union)
    ryt = rytov_residual(gt_union, v, n_total, g0)
    return dev, ryt


def test_first_order_errors_scale_as_chi_squared():
    scales = np.array([1.0, 0.5, 0.25, 0.125])
    base = 2e-2
    pairs = [_union_errors(base * s) for s in scales]
    for idx in range(2):
        vals = np.array([p[idx] for p in pairs])
        assert np.all(vals > 1e-13)
        slope = np.polyfit(np.log(scales), np.log(vals), 1)[0]
        assert slope == pytest.approx(2.0, abs=0.1)


def test_noise_covariance_real_kerr_not_clipped():
    grid, eps, chi, _, _ = _two_blocks(32, 0.3, 1e-3)
    _, g1, _ = build_linear(grid, eps, _OMEGA)
    n_op = build_n_operator(grid, eps, chi, _OMEGA, _WEIGHTS)
    c_psd, clipped = noise_covariance(g1, n_op)
    assert clipped == 0.0
    assert np.linalg.norm(c_psd - np.conj(c_psd).T) < 1e-14
    assert np.linalg.eigvalsh(c_psd).min() >= 0.0


def test_noise_covariance_clips_and_warns():
    # a strongly anti-Hermitian Kerr operator drives the covariance
    # indefinite; the projection must clip, warn, and stay PSD
    grid, eps, _, _, _ = _two_blocks(16, 0.3, 0.0)
    _, g1, _ = build_linear(grid, eps, _OMEGA)
    bad_n = -1j * np.eye(16)
    with pytest.warns(UserWarning):
        c_psd, clipped = noise_covariance(g1, bad_n)
    assert clipped > 0.01
    assert np.linalg.eigvalsh(c_psd).min() >= 0.0


def test_monte_carlo_seed_reproducible():
    grid, eps, chi, _, _ = _two_blocks(16, 0.3, 1e-3)
    a = monte_carlo_fdt(grid, eps, chi, _OMEGA, _WEIGHTS,
                        samples=1000, seed=3)
    b = monte_carlo_fdt(grid, eps, chi, _OMEGA, _WEIGHTS,
                        samples=1000, seed=3)
    c = monte_carlo_fdt(grid, eps, chi, _OMEGA, _WEIGHTS,
                        samples=1000, seed=4)
    assert a == b
    assert a != c
    assert 0.0 < a < 1.0


def test_monte_carlo_rejects_tiny_ensembles():
    grid, eps, chi, _, _ = _two_blocks(16, 0.3, 1e-3)
    with pytest.raises(ConfigError):
        monte_carlo_fdt(grid, eps, chi, _OMEGA, _WEIGHTS, samples=999)


def test_field_vector_roles():
    vec = FieldVector(np.zeros(4), "noise")
    assert vec.values.dtype == complex
    with pytest.raises(ConfigError):
        FieldVector(np.zeros(4), "sideways")
    with pytest.raises(ConfigError):
        FieldVector(np.zeros((2, 2)), "noise")
    with pytest.raises(ConfigError):
        FieldVector(np.zeros(0), "noise")


def test_operator_set_assemble():
    grid, eps, chi, mask_a, mask_b = _two_blocks(16, 0.3, 1e-3)
    ops = OperatorSet.assemble(grid, eps, chi, _OMEGA, _WEIGHTS,
                               mask_alpha=mask_a, mask_beta=mask_b)
    assert np.array_equal(ops.gt, gtilde(ops.g1, ops.n_op))
    assert np.array_equal(ops.mask_alpha, mask_a)
    assert np.array_equal(ops.mask_beta, mask_b)
    resid = (np.linalg.inv(ops.g0) - ops.v) @ ops.g1 - np.eye(16)
    assert np.linalg.norm(resid) < 1e-11
