"""Desk-scale workbench for heat-kernel regularized perturbative renormalization.

Subpackages:

- ``graphs``     stable Feynman graphs, automorphisms, enumeration, surgery
- ``wick``       Gaussian moment engines (1D intervals, R^n, polytopes, simplices)
- ``cover``      the time-cube covering machinery and its verification
- ``heatkernel`` flat heat kernels, derivative polynomials, regularized propagator
- ``fields``     compactly supported polynomial-bump test fields
- ``weights``    symbolic and numeric Feynman weights
- ``renorm``     error exponents, counterterms, and convergence sweeps
- ``expansion``  finite-dimensional toy model of the graph expansion
- ``cli``        experiment runner
"""

__version__ = "0.1.0"

__all__ = [
    "graphs",
    "wick",
    "cover",
    "heatkernel",
    "fields",
    "weights",
    "renorm",
    "expansion",
    "cli",
]
