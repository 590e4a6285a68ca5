"""Distance dependence of the two pressure parts.

Scans a decade of gaps in the classical regime and extracts the
power-law exponents by a least-squares fit: the linear part falls as
1/d^3 and the Kerr part as 1/d^6 (at T = 0 the pair is 1/d^4 and
1/d^8). The last column shows the ratio growing toward small gaps.
"""

import math

import numpy as np

from kerrcasimir import (LayerStack, MaterialResponse, Temperature,
                         casimir_pressure)

CHI3 = 2e-16
TEMP = Temperature.high(300.0)
STACK = lambda d: LayerStack(MaterialResponse.constant(2.1, chi3=CHI3),
                             MaterialResponse.perfect_mirror(), d, TEMP)

distances = np.exp(np.linspace(math.log(1e-8), math.log(1e-7), 7))
rows = []
print("%12s %14s %14s %12s" % ("d [m]", "P_lin [Pa]", "P_nl [Pa]",
                               "P_nl/P_lin"))
for d in distances:
    total = casimir_pressure(STACK(float(d)))
    rows.append((d, total.linear.value, total.nonlinear.value))
    print("%12.4e %14.6e %14.6e %12.4e"
          % (d, total.linear.value, total.nonlinear.value,
             total.nonlinear.value / total.linear.value))

log_d = np.log([r[0] for r in rows])
slope_lin = np.polyfit(log_d, np.log([r[1] for r in rows]), 1)[0]
slope_nl = np.polyfit(log_d, np.log([r[2] for r in rows]), 1)[0]
print()
print("fitted exponents: linear %.4f (classical law -3), "
      "Kerr %.4f (classical law -6)" % (slope_lin, slope_nl))
