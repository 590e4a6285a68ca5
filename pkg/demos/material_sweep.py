"""How the Kerr coefficient depends on the two permittivities.

The dimensionless zero-temperature coefficient i_nl is largest for an
index-matched (transparent) Kerr plate facing a perfect mirror: raising
the Kerr plate permittivity shuts the fluctuation field out of the
plate, while raising the other plate's permittivity strengthens the
cavity. The transparent-plate/mirror corner has the closed form
45 / (4096 pi^6).
"""

import math

from kerrcasimir import i_nl_zero_t

print("i_nl at T = 0 versus the Kerr plate permittivity (mirror opposite):")
print("%10s %14s" % ("eps_nl", "i_nl"))
for eps_nl in (1.0, 2.0, 5.0, 10.0, 100.0):
    print("%10.1f %14.6e" % (eps_nl, i_nl_zero_t(eps_nl, math.inf)))
closed = 45.0 / (4096.0 * math.pi ** 6)
print("%10s %14.6e   (closed form at eps_nl = 1)" % ("exact", closed))

print()
print("i_nl versus the linear plate permittivity (eps_nl = 2):")
print("%10s %14s" % ("eps_lin", "i_nl"))
for eps_lin in (2.0, 5.0, 10.0, 100.0, math.inf):
    print("%10s %14.6e" % (eps_lin, i_nl_zero_t(2.0, eps_lin)))

print()
print("both trends are monotone: the correction is maximal for a")
print("transparent Kerr plate against a perfect reflector.")
