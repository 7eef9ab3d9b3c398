"""kdvdress: numerical dressing method for the KdV equation.

Riemann-Hilbert solver library computing decaying Cauchy-problem solutions,
finite-genus (band/gap) solutions, and their nonlinear superposition,
uniformly in (x,t).
"""

__version__ = "0.1.0"
