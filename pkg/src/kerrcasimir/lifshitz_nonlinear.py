"""Kerr correction to the Casimir pressure between parallel plates.

One plate carries an isotropic third-order (Kerr) susceptibility chi3.
To first order in chi3 the pressure acquires a correction driven by
pairs of fluctuation frequencies: the field fluctuations at omega'
inside the Kerr plate shift its refractive index, and that shift reacts
back on the round-trip phase of the modes at omega. Both frequency
integrals are evaluated on the imaginary axis, where the mode sum is a
smooth, real, exponentially decaying kernel.

In scaled variables x = xi*d/c, y = q*d (and primed counterparts) the
production kernel used throughout this module is

    w(x, y, x', y') = (A1 * B1 + A2 * B2) / (kappa1 + kappa1'),

with the unprimed factors (response of the cavity modes at xi)

    G_s = (1 - F21_s) / (1 - F21_s F23_s e^(-2 k2)),   likewise G_p,
    A1 = y (k2/kappa1)**2 e^(-2 k2) (-F23_s G_s**2 x**2
                                     + F23_p G_p**2 kappa1**2),
    A2 = y (k2/kappa1)**2 e^(-2 k2) F23_p G_p**2 y**2,

and the primed factors (fluctuation spectrum inside the Kerr plate)

    R_s = F23_s' (1 - F21_s'**2) / (1 - F21_s' F23_s' e^(-2 k2')),
    mx = 2 x'**2 R_s - (3 y'**2 / eps1' + 2 x'**2) R_p,
    mz =   x'**2 R_s - (4 y'**2 / eps1' +   x'**2) R_p,
    B1 = y' e^(-2 k2') mx / kappa1',
    B2 = y' e^(-2 k2') mz / kappa1'.

Here k2 = hypot(x, y) is the gap decay constant and kappa1 the decay
constant inside the Kerr plate. The thermal weights, which grow as
xi**2, are already folded in; that is what cancels the 1/xi'**2
divergence of the raw mode response (see m_x, m_z) and makes the x' = 0
term finite.

The pressure is the doubly primed thermal double sum

    P_nl = -(3 / (2**5 pi**4)) (chi3/eps0) (kB T)**2 / d**6
           * sum'_n sum'_m  W(x_n, x_m),

where W is w integrated over both momenta; the quadrature module turns
the sums into integrals at zero temperature and into the (0, 0) term in
the classical limit. With the attraction-positive sign convention of
pressure_linear, the kernel is pointwise of one sign and chi3 > 0 gives
an attractive correction for every material pair.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .constants import C_LIGHT, EPSILON_0, HBAR, K_BOLTZMANN
from .errors import MaterialError, SingularPointError, UnconvergedError
from .fresnel import reflection_p, reflection_s
from .lifshitz_linear import (PressureResult, as_permittivity, i_lin_high_t,
                              i_lin_zero_t, pressure_linear)
from .quadrature import (MIN_LEVEL, QuadratureResult, double_matsubara_sum,
                         integrate_2d, semi_infinite_nodes)

_PREFACTOR = 3.0 / (2.0 ** 5 * math.pi ** 4)
_I_ZERO_FACTOR = 3.0 / (2.0 ** 7 * math.pi ** 6)
_I_HIGH_FACTOR = 3.0 / (2.0 ** 7 * math.pi ** 4)
_INNER_MAX_LEVEL = 1024
_CAVITY_TOL = 1e-14

_CROSSOVER_LO = 1e-11
_CROSSOVER_HI = 1e-4


def thermal_weight_a(frequency, temperature, axis="real"):
    """Fluctuation strength weight at one frequency, SI units.

    Parameters
    ----------
    frequency : float
        omega (axis="real") or xi (axis="imaginary"), rad/s, >= 0.
    temperature : Temperature
    axis : str
        "real": the spectral weight
        a(omega) = (hbar / (pi eps0)) (omega**2/c**2)
        * coth(hbar omega / (2 kB T)), with coth -> 1 in the zero
        regime and the classical 2 kB T / (hbar omega) expansion in the
        high regime.
        "imaginary": the weight each thermal frequency carries after
        the rotation int_0^inf a(w) Im F(w) dw
        = -(1/2) sum'_n abar(xi_n) F(i xi_n): abar
        = 4 kB T xi**2 / (eps0 c**2) in the finite and high regimes,
        and the continuum density (2 hbar / pi) xi**2 / (eps0 c**2)
        per unit xi in the zero regime.
    """
    xi = float(frequency)
    if xi < 0.0:
        raise ValueError("frequency must be >= 0")
    kind = temperature.kind
    if axis == "imaginary":
        if kind == "zero":
            return 2.0 * HBAR * xi * xi / (math.pi * EPSILON_0 * C_LIGHT ** 2)
        return 4.0 * K_BOLTZMANN * temperature.kelvin * xi * xi \
            / (EPSILON_0 * C_LIGHT ** 2)
    if axis != "real":
        raise ValueError("axis must be 'real' or 'imaginary'")
    if kind == "zero":
        return HBAR * xi * xi / (math.pi * EPSILON_0 * C_LIGHT ** 2)
    if kind == "high" or xi == 0.0:
        return 2.0 * K_BOLTZMANN * temperature.kelvin * xi \
            / (math.pi * EPSILON_0 * C_LIGHT ** 2)
    return HBAR * xi * xi / (math.pi * EPSILON_0 * C_LIGHT ** 2) \
        / math.tanh(0.5 * HBAR * xi / (K_BOLTZMANN * temperature.kelvin))


def _kappa(eps, xi, q):
    """Axial decay constant sqrt(eps*(xi/c)**2 + q**2), mirror-safe."""
    if math.isinf(eps):
        return math.inf if xi > 0.0 else q
    return math.hypot(math.sqrt(eps) * xi / C_LIGHT, q)


@dataclass(frozen=True)
class NlKernelPoint:
    """One (xi, q, xi', q') sample of the nonlinear kernel.

    All quantities live on the imaginary frequency axis, where they are
    real: eps* are the plate permittivities at the two frequencies,
    kappa* the axial decay constants per layer (index 2 is the gap),
    f* the reflection amplitudes of the gap against each plate, and
    a_weight the thermal weights (left at 0 unless requested).
    Build with from_stack, or directly for synthetic tests.
    """

    xi: float
    q: float
    xi_p: float
    q_p: float
    eps1: float
    eps3: float
    eps1_p: float
    eps3_p: float
    kappa1: float
    kappa2: float
    kappa3: float
    kappa1_p: float
    kappa2_p: float
    kappa3_p: float
    fs21: float
    fp21: float
    fs23: float
    fp23: float
    fs21_p: float
    fp21_p: float
    fs23_p: float
    fp23_p: float
    a_weight: float = 0.0
    a_weight_p: float = 0.0

    @classmethod
    def from_stack(cls, stack, xi, q, xi_p, q_p, with_weights=False):
        """Evaluate every field from a LayerStack (Kerr plate first)."""
        st = stack.oriented()
        e1 = st.layer1.permittivity(xi)
        e3 = st.layer3.permittivity(xi)
        e1p = st.layer1.permittivity(xi_p)
        e3p = st.layer3.permittivity(xi_p)
        # reflection amplitudes depend only on the (xi/c, q) direction,
        # so the unscaled arguments work directly
        x, xp = xi / C_LIGHT, xi_p / C_LIGHT
        aw = awp = 0.0
        if with_weights:
            aw = thermal_weight_a(xi, st.temperature, axis="imaginary")
            awp = thermal_weight_a(xi_p, st.temperature, axis="imaginary")
        return cls(
            xi, q, xi_p, q_p, e1, e3, e1p, e3p,
            _kappa(e1, xi, q), _kappa(1.0, xi, q), _kappa(e3, xi, q),
            _kappa(e1p, xi_p, q_p), _kappa(1.0, xi_p, q_p),
            _kappa(e3p, xi_p, q_p),
            float(reflection_s(x, q, e1)), float(reflection_p(x, q, e1)),
            float(reflection_s(x, q, e3)), float(reflection_p(x, q, e3)),
            float(reflection_s(xp, q_p, e1p)),
            float(reflection_p(xp, q_p, e1p)),
            float(reflection_s(xp, q_p, e3p)),
            float(reflection_p(xp, q_p, e3p)),
            aw, awp)


def _r_combination(f21, f23, kappa2, d):
    damp = math.exp(-2.0 * kappa2 * d)
    den = 1.0 - f21 * f23 * damp
    if abs(den) < _CAVITY_TOL:
        raise SingularPointError(
            "cavity denominator within %g of zero" % _CAVITY_TOL)
    return f23 * (1.0 - f21 * f21) / den


def _q_over_k1sq(point):
    # q'^2 / k1'^2 on the imaginary axis, where k1'^2 = -eps1' xi'^2/c^2
    den = point.eps1_p * point.xi_p ** 2
    if den == 0.0:
        return -math.inf if point.q_p != 0.0 else math.nan
    return -(point.q_p * C_LIGHT) ** 2 / den


def m_x(point, d):
    """In-plane response combination of the Kerr plate's fluctuations.

    m_x = 2 R_s + (3 q'^2/k1'^2 - 2) R_p with
    R = F23' (1 - F21'^2) / (1 - F21' F23' e^(-2 kappa2' d)). Real on
    the imaginary axis; diverges like 1/xi'**2 as xi' -> 0 because
    k1'^2 = -eps1' xi'^2/c^2 (pnl_integrand folds the xi'**2 thermal
    weight in, which removes the divergence). Terms whose R vanishes
    are dropped exactly, so a reflectionless primed plate gives 0.
    """
    rs = _r_combination(point.fs21_p, point.fs23_p, point.kappa2_p, d)
    rp = _r_combination(point.fp21_p, point.fp23_p, point.kappa2_p, d)
    p_part = 0.0 if rp == 0.0 else (3.0 * _q_over_k1sq(point) - 2.0) * rp
    return 2.0 * rs + p_part


def m_z(point, d):
    """Normal response combination, m_z = R_s + (4 q'^2/k1'^2 - 1) R_p.

    Conventions and caveats as in m_x.
    """
    rs = _r_combination(point.fs21_p, point.fs23_p, point.kappa2_p, d)
    rp = _r_combination(point.fp21_p, point.fp23_p, point.kappa2_p, d)
    p_part = 0.0 if rp == 0.0 else (4.0 * _q_over_k1sq(point) - 1.0) * rp
    return rs + p_part


def _unprimed_vectors(x, y, eps1, eps3):
    """A1, A2 and kappa1 over a y grid at one scaled frequency x."""
    k2 = np.hypot(x, y)
    k1sq = eps1 * x * x + y * y
    k1 = np.sqrt(k1sq)
    damp = np.exp(-2.0 * k2)
    fs21 = reflection_s(x, y, eps1)
    fp21 = reflection_p(x, y, eps1)
    fs23 = reflection_s(x, y, eps3)
    fp23 = reflection_p(x, y, eps3)
    gs = (1.0 - fs21) / (1.0 - fs21 * fs23 * damp)
    gp = (1.0 - fp21) / (1.0 - fp21 * fp23 * damp)
    with np.errstate(invalid="ignore", divide="ignore"):
        pref = y * (k2 * k2 / k1sq) * damp
        a1 = pref * (-fs23 * gs * gs * x * x + fp23 * gp * gp * k1sq)
        a2 = pref * fp23 * gp * gp * y * y
    zero = y == 0.0
    return np.where(zero, 0.0, a1), np.where(zero, 0.0, a2), k1


def _primed_vectors(x, y, eps1, eps3):
    """B1, B2 and kappa1 over a y grid at one scaled primed frequency."""
    k2 = np.hypot(x, y)
    k1 = np.sqrt(eps1 * x * x + y * y)
    damp = np.exp(-2.0 * k2)
    fs21 = reflection_s(x, y, eps1)
    fp21 = reflection_p(x, y, eps1)
    fs23 = reflection_s(x, y, eps3)
    fp23 = reflection_p(x, y, eps3)
    rs = fs23 * (1.0 - fs21 * fs21) / (1.0 - fs21 * fs23 * damp)
    rp = fp23 * (1.0 - fp21 * fp21) / (1.0 - fp21 * fp23 * damp)
    mx = 2.0 * x * x * rs - (3.0 * y * y / eps1 + 2.0 * x * x) * rp
    mz = x * x * rs - (4.0 * y * y / eps1 + x * x) * rp
    with np.errstate(invalid="ignore", divide="ignore"):
        b1 = y * damp * mx / k1
        b2 = y * damp * mz / k1
    zero = y == 0.0
    return np.where(zero, 0.0, b1), np.where(zero, 0.0, b2), k1


def _ct_unprimed(x, y):
    damp = np.exp(-2.0 * np.hypot(x, y))
    u = y * damp
    return u * x * x, u * y * y, np.hypot(x, y)


def _ct_primed(x, y):
    k = np.hypot(x, y)
    damp = np.exp(-2.0 * k)
    with np.errstate(invalid="ignore", divide="ignore"):
        v = y * damp / k
    b1 = -(8.0 * x * x + 6.0 * y * y) * v
    b2 = -(6.0 * x * x + 7.0 * y * y) * v
    zero = (y == 0.0) & (k == 0.0)
    return np.where(zero, 0.0, b1), np.where(zero, 0.0, b2), k


def _pair_quadrature(unprimed, primed, scale_y, scale_yp, rel_tol):
    """Joint momentum quadrature of (A1 B1 + A2 B2) / (kappa + kappa').

    unprimed/primed map a node array to (vec1, vec2, kappa). Both grids
    double together; the value at each level is assembled from two
    quadratic forms against the 1/(kappa_i + kappa'_j) coupling matrix.
    """

    def level_value(m):
        y, wy = semi_infinite_nodes(m, scale_y)
        yp, wyp = semi_infinite_nodes(m, scale_yp)
        a1, a2, k1 = unprimed(y)
        b1, b2, k1p = primed(yp)
        den = k1[:, None] + k1p[None, :]
        with np.errstate(divide="ignore"):
            cross = np.where(den == 0.0, 0.0, 1.0 / den)
        return float((wy * a1) @ cross @ (wyp * b1)
                     + (wy * a2) @ cross @ (wyp * b2))

    m = MIN_LEVEL
    total = level_value(m)
    n_evals = 2 * m
    err = math.inf
    while m < _INNER_MAX_LEVEL:
        m *= 2
        new_total = level_value(m)
        n_evals += 2 * m
        err = abs(new_total - total)
        total = new_total
        if err <= rel_tol * abs(total):
            return QuadratureResult(total, err, n_evals, True)
    return QuadratureResult(total, err, n_evals, False)


def _w_hat(x, xp, eps1, eps3, eps1p, eps3p, rel_tol):
    """Kernel integrated over both momenta at scaled frequencies x, x'."""
    return _pair_quadrature(
        lambda y: _unprimed_vectors(x, y, eps1, eps3),
        lambda y: _primed_vectors(xp, y, eps1p, eps3p),
        max(1.0, math.sqrt(x)), max(1.0, math.sqrt(xp)), rel_tol)


def _w_ct(x, xp, rel_tol):
    """Transparent-plate/mirror kernel integrated over both momenta."""
    return _pair_quadrature(
        lambda y: _ct_unprimed(x, y),
        lambda y: _ct_primed(xp, y),
        max(1.0, math.sqrt(x)), max(1.0, math.sqrt(xp)), rel_tol)


def pnl_integrand(point, d):
    """Folded nonlinear kernel at one spectral point, units 1/m**4.

    This is the thermally weighted imaginary-axis mode sum: the
    xi**2 xi'**2 / c**4 growth of the two fluctuation weights is folded
    into the bracket, cancelling the 1/xi'**2 divergence of m_x and m_z
    and leaving a smooth real kernel that vanishes at q = 0 or q' = 0
    and decays like e^(-2(kappa2 + kappa2')d). Multiplying by
    -(3/(2**5 pi**4)) (chi3/eps0) (kB T)**2 and summing over thermal
    frequency pairs and momenta gives the pressure.
    """
    if math.isinf(point.eps1) or math.isinf(point.eps1_p):
        # an opaque Kerr plate admits no fluctuation field: exact zero
        return 0.0
    x = point.xi * d / C_LIGHT
    xp = point.xi_p * d / C_LIGHT
    y = np.array([point.q * d])
    yp = np.array([point.q_p * d])
    a1, a2, k1 = _unprimed_vectors(x, y, point.eps1, point.eps3)
    b1, b2, k1p = _primed_vectors(xp, yp, point.eps1_p, point.eps3_p)
    den = k1[0] + k1p[0]
    if den == 0.0:
        return 0.0
    return float((a1[0] * b1[0] + a2[0] * b2[0]) / den) / d ** 4


def _thermal_double_sum(term, temperature, d, rel_tol):
    n_star = HBAR * C_LIGHT / (2.0 * math.pi * K_BOLTZMANN
                               * temperature.kelvin * d)
    return double_matsubara_sum(term, temperature, rel_tol=rel_tol,
                                zero_scale=(n_star, n_star))


def pressure_nonlinear(stack, rel_tol=1e-6):
    """Kerr correction to the Casimir pressure, in pascals.

    Exactly one plate should carry chi3 (either slot; the geometry is
    relabeled internally). chi3 = 0 returns zero. The result is first
    order in chi3 and shares the attraction-positive sign convention of
    pressure_linear; chi3 > 0 yields an attractive correction for every
    material pair.

    Returns
    -------
    PressureResult
        Convergence failures set the flag, nothing is raised.
    """
    st = stack.oriented()
    chi3 = st.layer1.chi3
    if chi3 == 0.0:
        return PressureResult(0.0, 0.0, True, 0)
    d = st.gap
    temp = st.temperature
    inner_tol = max(1e-2 * rel_tol, 1e-11)
    ok = [True]
    evals = [0]
    x_factor = d / C_LIGHT

    def term(n, m):
        xi, xi_p = temp.xi(n), temp.xi(m)
        res = _w_hat(xi * x_factor, xi_p * x_factor,
                     st.layer1.permittivity(xi), st.layer3.permittivity(xi),
                     st.layer1.permittivity(xi_p),
                     st.layer3.permittivity(xi_p), inner_tol)
        ok[0] = ok[0] and res.converged
        evals[0] += res.n_evals
        return res.value

    dsum = _thermal_double_sum(term, temp, d, rel_tol)
    pref = -_PREFACTOR * (chi3 / EPSILON_0) \
        * (K_BOLTZMANN * temp.kelvin) ** 2 / d ** 6
    return PressureResult(pref * dsum.value, abs(pref) * dsum.error,
                          dsum.converged and ok[0], evals[0])


def pressure_transparent_mirror(d, temperature, chi3, rel_tol=1e-6):
    """Pressure on a fully transparent Kerr slab facing a perfect mirror.

    Independent evaluation path: the mode sum collapses to a closed
    polynomial bracket when the Kerr plate has the response of vacuum
    and the other plate reflects perfectly, and this routine integrates
    that bracket directly. It must agree with
    pressure_nonlinear(eps_nl=1, eps_lin=inf), which exercises the full
    kernel; the acceptance suite pins the two paths together.

    Returns
    -------
    PressureResult
    """
    if not (d > 0.0 and math.isfinite(d)):
        raise MaterialError("gap must be positive and finite")
    chi3 = float(chi3)
    if chi3 == 0.0:
        return PressureResult(0.0, 0.0, True, 0)
    inner_tol = max(1e-2 * rel_tol, 1e-11)
    ok = [True]
    evals = [0]
    x_factor = d / C_LIGHT

    def term(n, m):
        res = _w_ct(temperature.xi(n) * x_factor,
                    temperature.xi(m) * x_factor, inner_tol)
        ok[0] = ok[0] and res.converged
        evals[0] += res.n_evals
        return res.value

    dsum = _thermal_double_sum(term, temperature, d, rel_tol)
    pref = -_PREFACTOR * (chi3 / EPSILON_0) \
        * (K_BOLTZMANN * temperature.kelvin) ** 2 / d ** 6
    return PressureResult(pref * dsum.value, abs(pref) * dsum.error,
                          dsum.converged and ok[0], evals[0])


@lru_cache(maxsize=128)
def _i_nl_zero_raw(eps_nl, eps_lin, rel_tol):
    inner_tol = max(1e-2 * rel_tol, 1e-11)
    ok = [True]

    def f(x, xp):
        res = _w_hat(x, xp, eps_nl, eps_lin, eps_nl, eps_lin, inner_tol)
        ok[0] = ok[0] and res.converged
        return res.value

    outer = integrate_2d(f, rel_tol=rel_tol, scale=(1.0, 1.0),
                         vectorized=False)
    return QuadratureResult(-_I_ZERO_FACTOR * outer.value,
                            _I_ZERO_FACTOR * outer.error, outer.n_evals,
                            outer.converged and ok[0])


def _check_kerr_eps(eps_nl):
    eps_nl = as_permittivity(eps_nl)
    if math.isinf(eps_nl):
        raise MaterialError("the Kerr plate permittivity must be finite")
    return eps_nl


def i_nl_zero_t(eps_nl, eps_lin, rel_tol=1e-6):
    """Dimensionless zero-temperature Kerr coefficient.

    P_nl = (chi3/eps0) * (hbar*c)**2 / d**8 * i_nl_zero_t(eps_nl,
    eps_lin) for constant permittivities; eps_lin may be math.inf.
    Positive, monotonically decreasing in eps_nl (vanishing as the Kerr
    plate turns opaque) and increasing in eps_lin. The transparent
    plate facing a mirror gives 45/(4096 pi**6). Raises
    UnconvergedError instead of returning a flagged estimate.
    """
    res = _i_nl_zero_raw(_check_kerr_eps(eps_nl), as_permittivity(eps_lin),
                         float(rel_tol))
    if not res.converged:
        raise UnconvergedError(
            "zero-temperature Kerr integral missed tolerance %g" % rel_tol)
    return res.value


@lru_cache(maxsize=128)
def _i_nl_high_raw(eps_nl, eps_lin, rel_tol):
    res = _w_hat(0.0, 0.0, eps_nl, eps_lin, eps_nl, eps_lin, rel_tol)
    return QuadratureResult(-_I_HIGH_FACTOR * res.value,
                            _I_HIGH_FACTOR * res.error, res.n_evals,
                            res.converged)


def i_nl_high_t(eps_nl, eps_lin, rel_tol=1e-6):
    """Dimensionless high-temperature Kerr coefficient.

    P_nl = (chi3/eps0) * (kB*T)**2 / d**6 * i_nl_high_t(eps_nl,
    eps_lin); monotonicity as in i_nl_zero_t. The transparent
    plate facing a mirror gives 21/(4096 pi**4).
    """
    res = _i_nl_high_raw(_check_kerr_eps(eps_nl), as_permittivity(eps_lin),
                         float(rel_tol))
    if not res.converged:
        raise UnconvergedError(
            "high-temperature Kerr integral missed tolerance %g" % rel_tol)
    return res.value


@dataclass(frozen=True)
class TotalPressure:
    """Linear and Kerr pressure parts of one stack."""

    linear: PressureResult
    nonlinear: PressureResult

    @property
    def value(self):
        return self.linear.value + self.nonlinear.value

    @property
    def error(self):
        return self.linear.error + self.nonlinear.error

    @property
    def converged(self):
        return self.linear.converged and self.nonlinear.converged


def casimir_pressure(stack, rel_tol_linear=1e-8, rel_tol_nonlinear=1e-6):
    """Both pressure parts of the stack; see TotalPressure.value."""
    return TotalPressure(pressure_linear(stack, rel_tol=rel_tol_linear),
                         pressure_nonlinear(stack,
                                            rel_tol=rel_tol_nonlinear))


def _abs_pressure_pair(stack, rel_tol):
    """Return d -> (|P_lin|, |P_nl|) for the stack, fast when possible.

    For constant permittivities in the zero and high regimes both parts
    are exact power laws with cached dimensionless coefficients, which
    makes the crossover bisection essentially free. Everything else
    falls back to full pressure evaluations per probe distance.
    """
    st = stack.oriented()
    temp = st.temperature
    kind = temp.kind
    constant = st.layer1.is_constant and st.layer3.is_constant
    if constant and kind in ("zero", "high"):
        e1 = st.layer1.permittivity(0.0)
        e3 = st.layer3.permittivity(0.0)
        chi3 = st.layer1.chi3
        if kind == "zero":
            c_lin = HBAR * C_LIGHT * i_lin_zero_t(e1, e3,
                                                  rel_tol=min(rel_tol, 1e-9))
            c_nl = abs(chi3) / EPSILON_0 * (HBAR * C_LIGHT) ** 2 \
                * i_nl_zero_t(e1, e3, rel_tol=rel_tol)
            return lambda d: (c_lin / d ** 4, c_nl / d ** 8)
        kbt = K_BOLTZMANN * temp.kelvin
        c_lin = kbt * i_lin_high_t(e1, e3, rel_tol=min(rel_tol, 1e-9))
        c_nl = abs(chi3) / EPSILON_0 * kbt ** 2 \
            * i_nl_high_t(e1, e3, rel_tol=rel_tol)
        return lambda d: (c_lin / d ** 3, c_nl / d ** 6)

    def full(d):
        probe = replace(stack, gap=d)
        lin = pressure_linear(probe, rel_tol=min(rel_tol, 1e-8))
        nl = pressure_nonlinear(probe, rel_tol=rel_tol)
        if not (lin.converged and nl.converged):
            raise UnconvergedError(
                "pressure evaluation at d = %g m missed tolerance" % d)
        return abs(lin.value), abs(nl.value)

    return full


def crossover_distance(stack, rel_tol=1e-6, d_tol=1e-6):
    """Gap at which the Kerr correction catches up with the linear term.

    Bisects log d over [1e-11, 1e-4] m for |P_nl(d)| = |P_lin(d)| and
    returns the root, or None when the difference keeps one sign over
    the whole bracket (chi3 = 0 included). d_tol is the relative width
    at which the bisection stops.
    """
    if stack.kerr_layer is None:
        return None
    pair = _abs_pressure_pair(stack, rel_tol)

    def h(d):
        lin, nl = pair(d)
        return nl - lin

    lo, hi = _CROSSOVER_LO, _CROSSOVER_HI
    h_lo, h_hi = h(lo), h(hi)
    if h_lo == 0.0:
        return lo
    if h_hi == 0.0:
        return hi
    if (h_lo > 0.0) == (h_hi > 0.0):
        return None
    log_lo, log_hi = math.log(lo), math.log(hi)
    while log_hi - log_lo > d_tol:
        log_mid = 0.5 * (log_lo + log_hi)
        if (h(math.exp(log_mid)) > 0.0) == (h_lo > 0.0):
            log_lo = log_mid
        else:
            log_hi = log_mid
    return math.exp(0.5 * (log_lo + log_hi))
