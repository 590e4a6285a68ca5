"""Nested Clenshaw-Curtis quadrature and thermal frequency summation.

Every pressure integrand in this package is smooth and exponentially
decaying, which makes doubling Clenshaw-Curtis rules a good fit: each
refinement reuses all previous function evaluations and the change
between two successive levels is a usable error estimate.

The same machinery drives the three thermal regimes. A sum over
discrete thermal frequencies (weight 1/2 on the n = 0 term) either
converges as a series at finite temperature, collapses to its n = 0
term in the classical high-temperature limit, or turns into an integral
over continuous n when the temperature, and with it the frequency
spacing, goes to zero.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .constants import HBAR, K_BOLTZMANN

MIN_LEVEL = 8
MAX_LEVEL = 4096

_KINDS = ("zero", "finite", "high")


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an adaptive integration or summation.

    Attributes
    ----------
    value : float
        Best estimate.
    error : float
        Estimated absolute error (level-to-level change, or a geometric
        tail bound for series).
    n_evals : int
        Number of integrand or term evaluations.
    converged : bool
        Whether the requested tolerance was reached. Callers decide how
        to react; nothing is raised here.
    """

    value: float
    error: float
    n_evals: int
    converged: bool


@dataclass(frozen=True)
class Temperature:
    """Thermal state selector for frequency sums.

    kind is one of "zero", "finite", "high". kelvin is the physical
    temperature for "finite" and "high". For "zero" it is a reference
    value (1 K by convention) that cancels identically in every thermal
    average: the sum over thermal frequencies is replaced by an integral
    over continuous index n, and k_B * kelvin * dn is exactly
    hbar / (2 pi) * dxi independent of the reference.
    """

    kind: str
    kelvin: float

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("kind must be one of %r" % (_KINDS,))
        if not (self.kelvin > 0.0 and math.isfinite(self.kelvin)):
            raise ValueError("kelvin must be positive and finite")

    @classmethod
    def zero(cls):
        return cls("zero", 1.0)

    @classmethod
    def finite(cls, kelvin):
        return cls("finite", float(kelvin))

    @classmethod
    def high(cls, kelvin):
        return cls("high", float(kelvin))

    def xi(self, n):
        """n-th thermal frequency on the positive imaginary axis, rad/s.

        Accepts non-integer n as well; the "zero" regime integrates over
        continuous n.
        """
        return 2.0 * math.pi * n * K_BOLTZMANN * self.kelvin / HBAR


@lru_cache(maxsize=64)
def _cc_rule(m):
    # Clenshaw-Curtis on [0, 1]: nodes ascending, endpoints included.
    theta = np.pi * np.arange(m + 1) / m
    j = np.arange(m // 2 + 1)
    terms = np.cos(2.0 * np.outer(j, theta)) / (1.0 - 4.0 * j * j)[:, None]
    terms[0] *= 0.5
    terms[-1] *= 0.5
    w = (4.0 / m) * terms.sum(axis=0)
    w[0] *= 0.5
    w[-1] *= 0.5
    x = 0.5 * (1.0 - np.cos(theta))
    return x, 0.5 * w


def clenshaw_curtis(m):
    """Nodes and weights of the (m+1)-point Clenshaw-Curtis rule on [0, 1].

    Parameters
    ----------
    m : int
        Even order >= 2. The rule has m + 1 nodes including both
        endpoints, and the rules for m and 2*m are nested.

    Returns
    -------
    x, w : ndarray
        Nodes in ascending order and the matching weights.
    """
    m = int(m)
    if m < 2 or m % 2:
        raise ValueError("order must be even and >= 2")
    x, w = _cc_rule(m)
    return x.copy(), w.copy()


def semi_infinite_nodes(m, scale=1.0):
    """Clenshaw-Curtis rule mapped onto [0, inf) via x = scale*u/(1-u).

    The u = 1 endpoint (x = inf) is dropped, so both arrays have length
    m. Dropping it is exact whenever the integrand decays faster than
    1/x**2, which holds for every exponentially damped kernel here.
    Rules for m and 2*m stay nested: node k of level m is node 2*k of
    level 2*m, bitwise.
    """
    if not (scale > 0.0 and math.isfinite(scale)):
        raise ValueError("scale must be positive and finite")
    u, wu = _cc_rule(int(m))
    u = u[:-1]
    wu = wu[:-1]
    x = scale * u / (1.0 - u)
    w = wu * scale / (1.0 - u) ** 2
    return x, w


def _evaluate(f, x, vectorized):
    if vectorized:
        return np.asarray(f(x), dtype=float)
    return np.array([f(v) for v in x], dtype=float)


def integrate_semi_infinite(f, rel_tol=1e-9, scale=1.0, max_level=MAX_LEVEL,
                            vectorized=True):
    """Integrate f over [0, inf) with doubling Clenshaw-Curtis rules.

    Parameters
    ----------
    f : callable
        Integrand. Receives a 1-D array of abscissas when vectorized,
        one float at a time otherwise. Must decay faster than x**-2.
    rel_tol : float
        Target for the level-to-level change relative to the integral.
    scale : float
        Characteristic width of the integrand; the mapped nodes put
        half of their mass below x = scale.

    Returns
    -------
    QuadratureResult
    """
    m = MIN_LEVEL
    x, w = semi_infinite_nodes(m, scale)
    vals = _evaluate(f, x, vectorized)
    total = float(w @ vals)
    n_evals = vals.size
    err = math.inf
    while m < max_level:
        m *= 2
        x, w = semi_infinite_nodes(m, scale)
        fine = np.empty(m)
        fine[0::2] = vals
        fine[1::2] = _evaluate(f, x[1::2], vectorized)
        n_evals += m // 2
        new_total = float(w @ fine)
        err = abs(new_total - total)
        vals, total = fine, new_total
        if err <= rel_tol * abs(total):
            return QuadratureResult(total, err, n_evals, True)
    return QuadratureResult(total, err, n_evals, False)


def _eval_grid(f, x, y, vectorized):
    if x.size == 0 or y.size == 0:
        return np.empty((x.size, y.size))
    if vectorized:
        xm, ym = np.meshgrid(x, y, indexing="ij")
        return np.asarray(f(xm, ym), dtype=float)
    out = np.empty((x.size, y.size))
    for i, xv in enumerate(x):
        for j, yv in enumerate(y):
            out[i, j] = f(xv, yv)
    return out


def integrate_2d(f, rel_tol=1e-8, scale=(1.0, 1.0), max_level=256,
                 vectorized=False):
    """Integrate f(x, y) over the quarter plane [0, inf)**2.

    Tensor product of doubling Clenshaw-Curtis rules, refined jointly on
    both axes; previously computed values are reused at every level.
    When vectorized, f receives meshgrid arrays, otherwise it is called
    once per node pair (keep it cheap in that case, or accept the cost:
    the pressure code uses this path with one inner quadrature per
    node).

    Returns
    -------
    QuadratureResult
    """
    sx, sy = scale
    m = MIN_LEVEL
    x, wx = semi_infinite_nodes(m, sx)
    y, wy = semi_infinite_nodes(m, sy)
    grid = _eval_grid(f, x, y, vectorized)
    n_evals = grid.size
    total = float(wx @ grid @ wy)
    err = math.inf
    while m < max_level:
        m *= 2
        x, wx = semi_infinite_nodes(m, sx)
        y, wy = semi_infinite_nodes(m, sy)
        fine = np.empty((m, m))
        fine[0::2, 0::2] = grid
        fine[1::2, :] = _eval_grid(f, x[1::2], y, vectorized)
        fine[0::2, 1::2] = _eval_grid(f, x[0::2], y[1::2], vectorized)
        n_evals += m * m - grid.size
        grid = fine
        new_total = float(wx @ grid @ wy)
        err = abs(new_total - total)
        total = new_total
        if err <= rel_tol * abs(total):
            return QuadratureResult(total, err, n_evals, True)
    return QuadratureResult(total, err, n_evals, False)


def matsubara_sum(term, temperature, rel_tol=1e-8, max_terms=20000,
                  zero_scale=1.0):
    """Primed sum over thermal frequencies: sum'_n term(n), n >= 0.

    The n = 0 term carries weight 1/2. Behaviour per temperature kind:

    * "finite": the series is summed until a geometric bound on the
      remaining tail, estimated from the last three terms, drops below
      rel_tol relative to the accumulated sum.
    * "high": only the halved n = 0 term survives.
    * "zero": the frequency spacing vanishes and the sum becomes the
      integral of term over continuous n >= 0 (term must accept floats
      there); k_B * temperature.kelvin * result is then the physical
      average for any reference kelvin. zero_scale sets the n beyond
      which term decays.

    Returns
    -------
    QuadratureResult
    """
    kind = temperature.kind
    if kind == "high":
        return QuadratureResult(0.5 * term(0), 0.0, 1, True)
    if kind == "zero":
        return integrate_semi_infinite(term, rel_tol=rel_tol,
                                       scale=zero_scale, vectorized=False)

    total = 0.5 * term(0)
    last = []
    est = math.inf
    n = 0
    while n < max_terms:
        n += 1
        t = term(n)
        total += t
        last.append(abs(t))
        if len(last) > 3:
            last.pop(0)
        if len(last) == 3 and n >= 4:
            if last[2] == 0.0:
                return QuadratureResult(total, 0.0, n + 1, True)
            if last[0] > 0.0 and last[1] > 0.0:
                r = max(last[2] / last[1], last[1] / last[0])
                if r < 1.0:
                    est = last[2] * r / (1.0 - r)
                    if est <= rel_tol * abs(total):
                        return QuadratureResult(total, est, n + 1, True)
    return QuadratureResult(total, est, n + 1, False)


def double_matsubara_sum(term, temperature, rel_tol=1e-8, max_terms=20000,
                         zero_scale=(1.0, 1.0)):
    """Doubly primed double sum: sum'_n sum'_m term(n, m).

    Both the n = 0 and the m = 0 slices carry weight 1/2 (so the (0, 0)
    term carries 1/4). Regime semantics match matsubara_sum; in the
    "zero" regime the result is the double integral of term over
    continuous (n, m).

    Returns
    -------
    QuadratureResult
    """
    kind = temperature.kind
    if kind == "high":
        return QuadratureResult(0.25 * term(0, 0), 0.0, 1, True)
    if kind == "zero":
        return integrate_2d(term, rel_tol=rel_tol, scale=zero_scale,
                            vectorized=False)

    inner_ok = [True]
    count = [0]

    def outer_term(n):
        res = matsubara_sum(lambda m_: term(n, m_), temperature,
                            rel_tol=0.1 * rel_tol, max_terms=max_terms)
        inner_ok[0] = inner_ok[0] and res.converged
        count[0] += res.n_evals
        return res.value

    res = matsubara_sum(outer_term, temperature, rel_tol=rel_tol,
                        max_terms=max_terms)
    return QuadratureResult(res.value, res.error, count[0],
                            res.converged and inner_ok[0])
