"""Where the Kerr correction catches up with the linear pressure.

At zero temperature the linear pressure grows as 1/d^4 and the Kerr
part as chi3/d^8, so below some gap d* the correction dominates.
The script locates d* by bisection for a few chi3 amplitudes; the
1/d^4 contrast between the two laws makes d* scale as chi3^(1/4),
which the last column verifies.
"""

from kerrcasimir import (LayerStack, MaterialResponse, Temperature,
                         crossover_distance)

MIRROR = MaterialResponse.perfect_mirror()
BASE_CHI3 = 2e-16


def stack(chi3):
    return LayerStack(MaterialResponse.constant(2.0, chi3=chi3), MIRROR,
                      1e-8, Temperature.zero())


print("Kerr plate eps = 2 facing a mirror, T = 0")
print("%14s %16s %18s" % ("chi3 [m^2/V^2]", "d* [nm]",
                          "d*/d*(base), ^4"))
base = crossover_distance(stack(BASE_CHI3), d_tol=1e-9)
for factor in (1.0, 2.0, 4.0, 8.0):
    d_star = crossover_distance(stack(factor * BASE_CHI3), d_tol=1e-9)
    print("%14.3e %16.6f %18.6f"
          % (factor * BASE_CHI3, d_star * 1e9, (d_star / base) ** 4))

print()
print("for chi3 = %g the crossover sits at a few nanometers, at the" %
      BASE_CHI3)
print("edge of where a continuum plate description is still credible;")
print("the fourth power of the ratio reproduces the chi3 factor.")
