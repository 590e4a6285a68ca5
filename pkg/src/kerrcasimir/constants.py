"""Physical constants (SI, CODATA 2018).

Values are hard-coded rather than imported so that the numerical engine
has no runtime dependency beyond numpy and results are bitwise stable
across environments.
"""

# speed of light in vacuum, m / s (exact)
C_LIGHT = 2.99792458e8

# reduced Planck constant, J s
HBAR = 1.05457181765e-34

# Boltzmann constant, J / K (exact)
K_BOLTZMANN = 1.380649e-23

# vacuum permittivity, F / m
EPSILON_0 = 8.8541878128e-12
