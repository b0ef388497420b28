"""Accelerated quadrature for 2*pi-periodic integrands with branch points at x0 + 2*pi*k +- iB.

Four strategies are provided: the two-interval Gauss-Legendre split, the
Jacobi amplitude map (JAM), the boundary correspondence map (BCM) and the
iterated sine map (ISM).  All maps are stated for a singularity above x = 0
and translated when ``x0 != 0``: x_{x0}(t) = x0 + x(t - x0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import ConvergencePrediction
from .rules import PERIOD, VariableMap, gauss_legendre, identity_map
from .special import complete_elliptic_K, jacobi_sn_cn_dn

__all__ = [
    "ISM_MAX_HEIGHT",
    "PeriodicSingularity",
    "bcm_map",
    "ism_map",
    "ism_parameter",
    "jam_map",
    "periodic_identity_map",
    "periodic_split_delta",
    "periodic_split_integrate",
    "periodic_split_prediction",
    "periodic_split_rule",
]

# Above this height the iterated sine map is abandoned for the plain trapezoid rule.
ISM_MAX_HEIGHT = 1.5


@dataclass(frozen=True)
class PeriodicSingularity:
    B: float
    x0: float = 0.0

    def __post_init__(self):
        if not self.B > 0:
            raise ValueError(f"singularity height B must be positive, got {self.B!r}")
        if not -math.pi <= self.x0 < math.pi:
            x0 = math.remainder(self.x0, 2 * math.pi)
            object.__setattr__(self, "x0", -math.pi if x0 >= math.pi else x0)


def _wrap(t, x0):
    """t - x0 reduced to [-pi, pi], and the whole periods removed."""
    u = np.asarray(t, dtype=float) - x0
    shift = 2 * math.pi * np.rint(u / (2 * math.pi))
    return u - shift, shift


def periodic_split_delta(B: float) -> float:
    """Half-width of the small subinterval: real root of 2 d^3 + 2 B^2 d - B^2 pi = 0."""
    if not B > 0:
        raise ValueError(f"B must be positive, got {B!r}")
    return 2 * B / math.sqrt(3) * math.sinh(math.asinh(3 * math.pi * math.sqrt(3) / (4 * B)) / 3)


def periodic_split_prediction(B: float) -> ConvergencePrediction:
    d = periodic_split_delta(B)
    rho = (B + math.hypot(B, d)) / d
    return ConvergencePrediction.ellipse(rho, split=True)


def periodic_split_rule(sing: PeriodicSingularity, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights covering one period: n//2 Gauss nodes on [x0-d, x0+d], the rest outside.

    For odd n the extra node goes to the longer subinterval.
    """
    if n < 2:
        raise ValueError("split rule needs at least 2 nodes")
    d = periodic_split_delta(sing.B)
    small, large = n // 2, n - n // 2
    if d > math.pi / 2:  # the "inner" piece is the longer one
        small, large = large, small
    r1, r2 = gauss_legendre(small), gauss_legendre(large)
    x = np.concatenate([sing.x0 + d * r1.nodes,
                        sing.x0 + math.pi + (math.pi - d) * r2.nodes])
    w = np.concatenate([d * r1.weights, (math.pi - d) * r2.weights])
    return x, w


def periodic_split_integrate(f, sing: PeriodicSingularity, n: int) -> float:
    x, w = periodic_split_rule(sing, n)
    vals = np.asarray(f(x), dtype=float)
    if not np.all(np.isfinite(vals)):
        i = int(np.argmax(~np.isfinite(vals)))
        raise FloatingPointError(f"non-finite integrand value at split node {i} (x={x[i]!r})")
    return float(np.dot(w, vals))


def periodic_identity_map(sing: PeriodicSingularity) -> VariableMap:
    """Plain trapezoid rule, converging like exp(-B n)."""
    return identity_map(PERIOD, ConvergencePrediction.strip(sing.B))


def jam_map(sing: PeriodicSingularity) -> VariableMap:
    """Jacobi amplitude map x(t) = -pi + 2 am((pi + t) K(m) / pi, m), m = 4 / (4 + B^2).

    Evaluated in the equivalent form x(t) = 2 arctan(k' sc(K t / pi, m)), which
    avoids subtracting pi from a value near pi close to the singularity, and
    x'(t) = (2K/pi) k' / dn(K t / pi, m).
    """
    B, x0 = sing.B, sing.x0
    m, mc = 4.0 / (4.0 + B * B), B * B / (4.0 + B * B)
    K = complete_elliptic_K(m, mc)
    Kc = complete_elliptic_K(mc, m)
    kp = math.sqrt(mc)

    def forward(t):
        tau, shift = _wrap(t, x0)
        sn, cn, _ = jacobi_sn_cn_dn(K * tau / math.pi, m, mc)
        return x0 + shift + 2.0 * np.arctan2(kp * sn, cn)

    def derivative(t):
        tau, _ = _wrap(t, x0)
        _, _, dn = jacobi_sn_cn_dn(K * tau / math.pi, m, mc)
        return (2.0 * K / math.pi) * kp / dn

    pred = ConvergencePrediction.strip(math.pi * Kc / K)
    return VariableMap("jam", forward, derivative, pred, PERIOD,
                       {"B": B, "x0": x0, "m": m, "K": K})


def bcm_map(sing: PeriodicSingularity) -> VariableMap:
    """Boundary correspondence (Moebius) map with a = exp(B) - sqrt(exp(2B) - 1).

    x(t) = -i log((e^{it} + a) / (1 + a e^{it})) = t - 2 arctan(a sin t / (1 + a cos t)).
    """
    B, x0 = sing.B, sing.x0
    a = 1.0 / (math.exp(B) + math.sqrt(math.expm1(2 * B)))

    def forward(t):
        u = np.asarray(t, dtype=float) - x0
        return x0 + u - 2.0 * np.arctan(a * np.sin(u) / (1.0 + a * np.cos(u)))

    def derivative(t):
        u = np.asarray(t, dtype=float) - x0
        return (1.0 - a * a) / (1.0 + 2.0 * a * np.cos(u) + a * a)

    pred = ConvergencePrediction.strip(-math.log(a))
    return VariableMap("bcm", forward, derivative, pred, PERIOD, {"B": B, "x0": x0, "a": a})


def ism_parameter(B: float) -> float:
    """Approximately optimal iterated-sine parameter, a = 1 + B/5 - B^(2/5)."""
    return 1.0 + B / 5.0 - B**0.4


def ism_map(sing: PeriodicSingularity) -> VariableMap:
    """Iterated sine map x = phi(phi(t)), phi(u) = u - a sin u.

    For B above ``ISM_MAX_HEIGHT`` the identity map is returned instead.
    """
    B, x0 = sing.B, sing.x0
    if B > ISM_MAX_HEIGHT:
        return periodic_identity_map(sing)
    a = ism_parameter(B)

    def forward(t):
        u = np.asarray(t, dtype=float) - x0
        v = u - a * np.sin(u)
        return x0 + v - a * np.sin(v)

    def derivative(t):
        u = np.asarray(t, dtype=float) - x0
        return (1.0 - a * np.cos(u)) * (1.0 - a * np.cos(u - a * np.sin(u)))

    pred = ConvergencePrediction.strip(math.acosh(1.0 / a))
    return VariableMap("ism", forward, derivative, pred, PERIOD, {"B": B, "x0": x0, "a": a})
