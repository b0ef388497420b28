"""Decomposition and conformal-map acceleration of nearly singular quadrature.

Modules:

- :mod:`nsquad.special`: complete elliptic integral K(m) and Jacobi sn, cn, dn, am
  (parameter convention m = k^2).
- :mod:`nsquad.rules`: Gauss-Legendre and periodic trapezoid rules, variable maps.
- :mod:`nsquad.rates`: Bernstein-ellipse / strip predictions and slope fitting.
- :mod:`nsquad.periodic`, :mod:`nsquad.aperiodic_complex`, :mod:`nsquad.aperiodic_real`:
  the acceleration strategies for each kind of nearby singularity.
- :mod:`nsquad.integrands`: the f/g/h test integrands and their stored reference values.
- :mod:`nsquad.stokes`: the single-layer potential over a slender fiber.
"""
from .methods import FAMILIES, METHODS, build_map, integrate, prediction, singularity_for
from .rates import ConvergencePrediction, ConvergenceRecord, fit_slope, rho_from_point
from .rules import QuadRule, VariableMap, apply, apply_mapped, gauss_legendre, trapezoid_periodic

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "METHODS",
    "ConvergencePrediction",
    "ConvergenceRecord",
    "QuadRule",
    "VariableMap",
    "apply",
    "apply_mapped",
    "build_map",
    "fit_slope",
    "gauss_legendre",
    "integrate",
    "prediction",
    "rho_from_point",
    "singularity_for",
    "trapezoid_periodic",
]
