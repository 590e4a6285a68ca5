"""Equilibrium Casimir pressure with a third-order (Kerr) plate.

The package evaluates the Lifshitz pressure between two parallel half
spaces and its leading correction when one plate carries a local Kerr
nonlinearity, plus a dense 1-D operator laboratory that verifies the
underlying fluctuation-operator identities to machine precision.
"""

from .constants import C_LIGHT, EPSILON_0, HBAR, K_BOLTZMANN
from .errors import (ConfigError, KerrCasimirError, MaterialError,
                     NearResonanceError, SingularPointError,
                     UnconvergedError)
from .fresnel import (axial_wavevector, cavity_factor, fresnel_p, fresnel_s,
                      reflection_p, reflection_s)
from .lifshitz_linear import (PressureResult, PressureTerm, i_lin_high_t,
                              i_lin_zero_t, pressure_linear)
from .lifshitz_nonlinear import (NlKernelPoint, TotalPressure,
                                 casimir_pressure, crossover_distance,
                                 i_nl_high_t, i_nl_zero_t, m_x, m_z,
                                 pnl_integrand, pressure_nonlinear,
                                 pressure_transparent_mirror,
                                 thermal_weight_a)
from .materials import LayerStack, MaterialResponse, chi3_contract
from .operator_lab import (CheckResult, FieldVector, Grid1D, OperatorSet,
                           build_linear, build_n_operator,
                           combined_correction, gtilde, monte_carlo_fdt,
                           naive_combination, noise_covariance,
                           run_verification_suite, rytov_residual)
from .quadrature import (QuadratureResult, Temperature, clenshaw_curtis,
                         double_matsubara_sum, integrate_2d,
                         integrate_semi_infinite, matsubara_sum,
                         semi_infinite_nodes)

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT", "EPSILON_0", "HBAR", "K_BOLTZMANN",
    "KerrCasimirError", "ConfigError", "MaterialError",
    "SingularPointError", "UnconvergedError", "NearResonanceError",
    "axial_wavevector", "fresnel_s", "fresnel_p", "cavity_factor",
    "reflection_s", "reflection_p",
    "MaterialResponse", "LayerStack", "chi3_contract",
    "QuadratureResult", "Temperature", "clenshaw_curtis",
    "semi_infinite_nodes", "integrate_semi_infinite", "integrate_2d",
    "matsubara_sum", "double_matsubara_sum",
    "PressureResult", "PressureTerm", "pressure_linear",
    "i_lin_zero_t", "i_lin_high_t",
    "NlKernelPoint", "TotalPressure", "thermal_weight_a", "m_x", "m_z",
    "pnl_integrand", "pressure_nonlinear", "pressure_transparent_mirror",
    "casimir_pressure", "crossover_distance", "i_nl_zero_t", "i_nl_high_t",
    "Grid1D", "FieldVector", "OperatorSet", "CheckResult",
    "build_linear", "build_n_operator", "gtilde", "naive_combination",
    "combined_correction", "rytov_residual", "noise_covariance",
    "monte_carlo_fdt", "run_verification_suite",
    "__version__",
]
