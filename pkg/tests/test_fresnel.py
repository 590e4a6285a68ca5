import cmath
import math

import numpy as np
import pytest

from kerrcasimir.constants import C_LIGHT
from kerrcasimir.errors import SingularPointError
from kerrcasimir.fresnel import (axial_wavevector, cavity_factor, fresnel_p,
                                 fresnel_s, reflection_p, reflection_s)

INF = math.inf


def test_axial_wavevector_propagating():
    omega = 1e15
    p = axial_wavevector(1.0, omega, 0.0, C_LIGHT)
    assert p == pytest.approx(omega / C_LIGHT)
    assert p.imag == 0.0


def test_axial_wavevector_evanescent():
    omega = 1e15
    q = 2.0 * omega / C_LIGHT
    p = axial_wavevector(1.0, omega, q, C_LIGHT)
    assert p.real == pytest.approx(0.0, abs=1e-20)
    assert p.imag > 0.0
    assert abs(p.imag - math.sqrt(q * q - (omega / C_LIGHT) ** 2)) \
        < 1e-6 * p.imag


def test_normal_incidence_amplitudes():
    omega = 1e15
    eps = 4.0
    p0 = axial_wavevector(1.0, omega, 0.0, C_LIGHT)
    p1 = axial_wavevector(eps, omega, 0.0, C_LIGHT)
    n = math.sqrt(eps)
    # both polarizations coincide at normal incidence up to sign
    assert fresnel_s(p0, p1) == pytest.approx((1.0 - n) / (1.0 + n))
    assert fresnel_p(1.0, eps, p0, p1) == pytest.approx((n - 1.0) / (n + 1.0))


@pytest.mark.parametrize("seed", range(8))
def test_imaginary_axis_matches_complex_route(seed):
    # the real-valued reflection helpers must equal the generic Fresnel
    # amplitudes evaluated at p = i*kappa
    rng = np.random.default_rng(100 + seed)
    x = rng.uniform(0.01, 5.0)
    y = rng.uniform(0.01, 5.0)
    eps = rng.uniform(1.0, 50.0)
    kappa_gap = math.hypot(x, y)
    kappa_med = math.sqrt(eps * x * x + y * y)
    rs = fresnel_s(1j * kappa_gap, 1j * kappa_med)
    rp = fresnel_p(1.0, eps, 1j * kappa_gap, 1j * kappa_med)
    assert abs(rs.imag) < 1e-15 and abs(rp.imag) < 1e-15
    assert reflection_s(x, y, eps) == pytest.approx(rs.real, rel=1e-13)
    assert reflection_p(x, y, eps) == pytest.approx(rp.real, rel=1e-13)


def test_reflection_bounds_and_signs():
    rng = np.random.default_rng(7)
    x = rng.uniform(0.01, 4.0, size=50)
    y = rng.uniform(0.0, 6.0, size=50)
    for eps in (1.5, 5.0, 80.0):
        rs = reflection_s(x, y, eps)
        rp = reflection_p(x, y, eps)
        assert np.all(np.abs(rs) <= 1.0) and np.all(np.abs(rp) <= 1.0)
        assert np.all(rs <= 0.0)  # denser medium flips the s amplitude
        assert np.all(rp >= 0.0)


def test_vacuum_reflects_nothing():
    assert reflection_s(1.0, 2.0, 1.0) == 0.0
    assert reflection_p(1.0, 2.0, 1.0) == 0.0


def test_mirror_amplitudes():
    assert reflection_s(0.5, 1.0, INF) == -1.0
    assert reflection_p(0.5, 1.0, INF) == 1.0
    # static transverse channel dies even for a mirror
    assert reflection_s(0.0, 1.0, INF) == 0.0
    assert reflection_p(0.0, 1.0, INF) == 1.0


def test_static_limit_finite_material():
    eps = 3.0
    assert reflection_s(0.0, 2.0, eps) == 0.0
    assert reflection_p(0.0, 2.0, eps) == pytest.approx(
        (eps - 1.0) / (eps + 1.0))


def test_large_eps_approaches_mirror():
    x, y = 0.7, 1.3
    rs = reflection_s(x, y, 1e8)
    rp = reflection_p(x, y, 1e8)
    assert rs == pytest.approx(-1.0, abs=1e-3)
    assert rp == pytest.approx(1.0, abs=1e-3)


def test_reflection_broadcasting():
    y = np.linspace(0.0, 3.0, 7)
    rs = reflection_s(0.0, y, INF)
    assert rs.shape == y.shape
    assert np.all(rs == 0.0)
    rs = reflection_s(1.0, y, INF)
    assert np.all(rs == -1.0)
    assert isinstance(reflection_s(1.0, 1.0, 2.0), float)


def test_cavity_factor_geometric_series():
    r_a, r_b = 0.6, -0.4
    d = 1e-7
    p_gap = 1j * 5e6
    phase = cmath.exp(2j * p_gap * d)
    direct = cavity_factor(r_a, r_b, p_gap, d)
    series = sum((r_a * r_b * phase) ** k for k in range(200))
    assert direct == pytest.approx(series, rel=1e-12)


def test_cavity_factor_singular():
    # r_a r_b e^{2ipd} = 1 exactly
    with pytest.raises(SingularPointError):
        cavity_factor(1.0, 1.0, 0.0, 1e-7)
