"""Single-interface reflection amplitudes and the cavity factor.

Two views of the same physics live here. The complex functions
(axial_wavevector, fresnel_s, fresnel_p, cavity_factor) work at real
frequencies with the retarded branch convention and are the reference
implementation. The engine itself runs on the imaginary frequency axis
in scaled variables, where everything is real and well conditioned;
reflection_s / reflection_p provide that fast path.

Scaled variables: with gap d, imaginary frequency xi and transverse
wavenumber q, set x = xi * d / c and y = q * d. The axial decay
constant in a medium of permittivity eps is then
kappa_eps * d = sqrt(eps * x**2 + y**2), and the vacuum gap has
k2 = sqrt(x**2 + y**2).
"""

import math

import numpy as np

from .errors import SingularPointError

_CAVITY_TOL = 1e-14


def axial_wavevector(eps, omega, q, c):
    """Axial wavevector p = sqrt(eps * omega**2 / c**2 - q**2).

    Complex square root on the retarded branch, Im(p) >= 0; when the
    radicand is real and positive the real, positive root is returned.
    Accepts scalars or broadcastable arrays.
    """
    radicand = np.asarray(eps, dtype=complex) * (omega / c) ** 2 \
        - np.asarray(q, dtype=complex) ** 2
    p = np.sqrt(radicand)
    p = np.where(p.imag < 0.0, -p, p)
    p = np.where((p.imag == 0.0) & (p.real < 0.0), -p, p)
    if p.ndim == 0:
        return complex(p)
    return p


def fresnel_s(p_a, p_b):
    """s (TE) reflection amplitude for a wave in medium a off medium b.

    p_a and p_b are the axial wavevectors on the two sides.
    """
    return (p_a - p_b) / (p_a + p_b)


def fresnel_p(eps_a, eps_b, p_a, p_b):
    """p (TM) reflection amplitude for a wave in medium a off medium b."""
    return (eps_b * p_a - eps_a * p_b) / (eps_b * p_a + eps_a * p_b)


def cavity_factor(r_a, r_b, p_gap, d):
    """Multiple-reflection factor 1 / (1 - r_a * r_b * exp(2j*p_gap*d)).

    Raises SingularPointError when the denominator is within 1e-14 of
    zero, i.e. on (or numerically on top of) a cavity resonance where
    the geometric series does not converge.
    """
    den = 1.0 - np.asarray(r_a) * np.asarray(r_b) \
        * np.exp(2j * np.asarray(p_gap, dtype=complex) * d)
    if np.any(np.abs(den) < _CAVITY_TOL):
        raise SingularPointError(
            "cavity denominator within %g of zero" % _CAVITY_TOL)
    out = 1.0 / den
    if out.ndim == 0:
        return complex(out)
    return out


def _finite_refl(x, y, eps, pol):
    if eps == 1.0:
        # exact zero, not the 1-ulp noise of hypot vs sqrt
        return np.broadcast_arrays(np.asarray(0.0), x, y)[0]
    k2 = np.hypot(x, y)
    kl = np.sqrt(eps * x * x + y * y)
    if pol == "s":
        num = k2 - kl
        den = k2 + kl
    else:
        num = eps * k2 - kl
        den = eps * k2 + kl
    with np.errstate(invalid="ignore", divide="ignore"):
        r = num / den
    corner = (x == 0.0) & (y == 0.0)
    if pol == "s":
        limit = 0.0
    else:
        limit = (eps - 1.0) / (eps + 1.0)
    return np.where(corner, limit, r)


def reflection_s(x, y, eps):
    """s reflection amplitude off a plate, imaginary axis, scaled units.

    Parameters
    ----------
    x, y : float or ndarray
        Scaled imaginary frequency xi*d/c and transverse wavenumber q*d.
    eps : float
        Plate permittivity at this frequency; math.inf is the symbolic
        mirror.

    Returns
    -------
    float or ndarray
        (k2 - kappa) / (k2 + kappa). Identically zero at x = 0 for
        every material, mirror included: the mirror value is the
        x -> 0 limit taken after eps -> inf, which is the prescription
        that reproduces the classical high-temperature force.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if math.isinf(eps):
        r = np.where(x > 0.0, -1.0, 0.0)
        r = np.broadcast_arrays(r, y)[0]
    else:
        r = _finite_refl(x, y, eps, "s")
    if r.ndim == 0:
        return float(r)
    return r


def reflection_p(x, y, eps):
    """p reflection amplitude off a plate, imaginary axis, scaled units.

    (eps*k2 - kappa) / (eps*k2 + kappa); equals (eps-1)/(eps+1) at
    x = 0 and +1 for the mirror at every frequency.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if math.isinf(eps):
        r = np.broadcast_arrays(np.asarray(1.0), x, y)[0]
    else:
        r = _finite_refl(x, y, eps, "p")
    if r.ndim == 0:
        return float(r)
    return r
