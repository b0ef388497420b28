"""Name-based dispatch over every quadrature strategy, grouped by singularity family."""
from __future__ import annotations

from . import aperiodic_complex as apc
from . import aperiodic_real as apr
from . import periodic as per
from .rates import ConvergencePrediction
from .rules import VariableMap, apply_mapped, gauss_legendre, trapezoid_periodic

__all__ = ["FAMILIES", "METHODS", "build_map", "integrate", "prediction", "singularity_for"]

FAMILIES = ("periodic", "aperiodic_complex", "aperiodic_real")

_MAPS = {
    "periodic": {
        "trapezoid": per.periodic_identity_map,
        "jam": per.jam_map,
        "bcm": per.bcm_map,
        "ism": per.ism_map,
    },
    "aperiodic_complex": {
        "gl": apc.gl_identity_map,
        "sinh": apc.sinh_map,
        "tee": apc.tee_elliptic_map,
        "jvh": apc.jvh_map,
        "sinhsinh": apc.iterated_sinh_map,
    },
    "aperiodic_real": {
        "gl": apr.real_gl_identity_map,
        "quadratic": apr.quadratic_map,
        "exponential": apr.exponential_map,
        "elliptic": apr.real_elliptic_map,
    },
}

_SPLITS = {
    "periodic": (per.periodic_split_integrate, lambda s: per.periodic_split_prediction(s.B)),
    "aperiodic_complex": (apc.split_integrate, apc.split_prediction),
    "aperiodic_real": (apr.real_split_integrate, apr.real_split_prediction),
}

METHODS = {
    "periodic": ("trapezoid", "split", "jam", "bcm", "ism"),
    "aperiodic_complex": ("gl", "split", "sinh", "tee", "jvh", "sinhsinh"),
    "aperiodic_real": ("gl", "split", "quadratic", "exponential", "elliptic"),
}


def _check(family: str, method: str):
    if family not in METHODS:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if method not in METHODS[family]:
        raise ValueError(f"method {method!r} is not valid for family {family!r}; "
                         f"expected one of {', '.join(METHODS[family])}")


def singularity_for(family: str, A: float = 0.0, B: float = 0.0, branch_cut: bool = True):
    if family == "periodic":
        return per.PeriodicSingularity(B, A)
    if family == "aperiodic_complex":
        return apc.ComplexSingularity(A, B)
    if family == "aperiodic_real":
        return apr.RealSingularity(A, branch_cut)
    raise ValueError(f"unknown family {family!r}")


def build_map(family: str, method: str, sing) -> VariableMap | None:
    """The VariableMap behind ``method``, or None for the split strategy."""
    _check(family, method)
    if method == "split":
        return None
    return _MAPS[family][method](sing)


def prediction(family: str, method: str, sing) -> ConvergencePrediction:
    _check(family, method)
    if method == "split":
        return _SPLITS[family][1](sing)
    return _MAPS[family][method](sing).prediction


def integrate(family: str, method: str, f, sing, n: int) -> float:
    """Integrate ``f`` over the family's domain with ``n`` nodes."""
    _check(family, method)
    if method == "split":
        return _SPLITS[family][0](f, sing, n)
    rule = trapezoid_periodic(n) if family == "periodic" else gauss_legendre(n)
    return apply_mapped(rule, _MAPS[family][method](sing), f)
