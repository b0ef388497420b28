"""Gauss-Legendre acceleration on [-1, 1] for a real singularity at A, |A| > 1.

The exponential and elliptic maps are written for A > 1; for A < -1 they are
reflected, x_A(t) = -x_{|A|}(-t).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .aperiodic_complex import _schwarz, _split_rho, split_rule
from .rates import ConvergencePrediction, rho_from_point
from .rules import INTERVAL, VariableMap, identity_map
from .special import complete_elliptic_K

__all__ = [
    "RealSingularity",
    "exponential_map",
    "real_elliptic_map",
    "real_elliptic_parameter",
    "real_gl_identity_map",
    "real_split_delta",
    "real_split_integrate",
    "real_split_prediction",
    "quadratic_map",
]


@dataclass(frozen=True)
class RealSingularity:
    A: float
    branch_cut: bool = True

    def __post_init__(self):
        if not abs(self.A) > 1.0:
            raise ValueError(f"real singularity must satisfy |A| > 1, got {self.A!r}")

    @property
    def sign(self) -> float:
        return 1.0 if self.A > 0 else -1.0


def _shift(A: float) -> float:
    # |A| - sqrt(A^2 - 1), written as 1/(|A| + sqrt(A^2 - 1))
    a = abs(A)
    return 1.0 / (a + math.sqrt((a - 1.0) * (a + 1.0)))


def real_split_delta(s: RealSingularity) -> float:
    """sgn(A) (|A| - sqrt(A^2 - 1))."""
    return s.sign * _shift(s.A)


def real_split_prediction(s: RealSingularity) -> ConvergencePrediction:
    return ConvergencePrediction.ellipse(_split_rho(complex(s.A), real_split_delta(s)), split=True)


def real_split_integrate(f, s: RealSingularity, n: int) -> float:
    x, w = split_rule(real_split_delta(s), n)
    vals = np.asarray(f(x), dtype=float)
    if not np.all(np.isfinite(vals)):
        i = int(np.argmax(~np.isfinite(vals)))
        raise FloatingPointError(f"non-finite integrand value at split node {i} (x={x[i]!r})")
    return float(np.dot(w, vals))


def real_gl_identity_map(s: RealSingularity) -> VariableMap:
    return identity_map(INTERVAL, ConvergencePrediction.ellipse(rho_from_point(complex(s.A))))


def quadratic_map(s: RealSingularity) -> VariableMap:
    """The quadratic x(t) with x(+-1) = +-1 whose critical point maps to A."""
    d = s.sign * _shift(s.A)

    def forward(t):
        t = np.asarray(t, dtype=float)
        return -0.5 * d * (t * t - 1.0) + t

    def derivative(t):
        return 1.0 - d * np.asarray(t, dtype=float)

    a = abs(s.A)
    ae = a + math.sqrt((a - 1.0) * (a + 1.0))
    rho = ae + math.sqrt((ae - 1.0) * (ae + 1.0))
    return VariableMap("quadratic", forward, derivative, ConvergencePrediction.ellipse(rho),
                       INTERVAL, {"A": s.A, "critical_t": s.sign * ae})


def _reflected(name, fwd, der, pred, s, params):
    if s.A > 0:
        return VariableMap(name, fwd, der, pred, INTERVAL, params)

    def forward(t):
        return -fwd(-np.asarray(t, dtype=float))

    def derivative(t):
        return der(-np.asarray(t, dtype=float))

    return VariableMap(name, forward, derivative, pred, INTERVAL, params)


def exponential_map(s: RealSingularity) -> VariableMap:
    """x(t) = A + (1 - A) exp(((1 - t)/2) log((A + 1)/(A - 1))), never reaching A.

    With an isolated singularity the transplanted integrand is entire and the
    prediction is the unbounded sentinel; with a branch cut rho = s + sqrt(1 + s^2),
    s = 2 pi / log((A + 1)/(A - 1)).
    """
    A = abs(s.A)
    L = math.log1p(2.0 / (A - 1.0))

    def fwd(t):
        return A + (1.0 - A) * np.exp(0.5 * (1.0 - np.asarray(t, dtype=float)) * L)

    def der(t):
        return 0.5 * L * (A - 1.0) * np.exp(0.5 * (1.0 - np.asarray(t, dtype=float)) * L)

    if s.branch_cut:
        sv = 2.0 * math.pi / L
        pred = ConvergencePrediction.ellipse(sv + math.sqrt(1.0 + sv * sv))
    else:
        pred = ConvergencePrediction.unbounded_ellipse()
    return _reflected("exponential", fwd, der, pred, s, {"A": s.A, "branch_cut": s.branch_cut})


def real_elliptic_parameter(A: float) -> tuple[float, float]:
    """(m, 1 - m) of the real-axis elliptic sine map, for A > 1.

    The defining expression in terms of 17 - 80A^2 + 64A^4 cancels almost
    completely; it equals m = q^4 with q = (r - 1)/(r + 1), r = ((A+1)/(A-1))^(1/4),
    which is how it is evaluated here.
    """
    A = abs(A)
    lr = 0.25 * math.log1p(2.0 / (A - 1.0))  # log r
    q = math.tanh(0.5 * lr)  # (r - 1)/(r + 1)
    m = q**4
    one_minus_q = 2.0 / (math.exp(lr) + 1.0)
    mc = one_minus_q * (1.0 + q) * (1.0 + q * q)
    return m, mc


def real_elliptic_map(s: RealSingularity) -> VariableMap:
    """Schwarz ellipse-to-disc map composed with z -> -(1 - z)^2/(1 + z)^2, scaled to fix +-1.

    The image of the Bernstein ellipse is the plane slit along [A, infinity).
    """
    m, mc = real_elliptic_parameter(s.A)
    K = complete_elliptic_K(m, mc)
    Kc = complete_elliptic_K(mc, m)
    q = m**0.25
    sm = q * q

    def _check(t):
        t = np.asarray(t, dtype=float)
        if np.any(np.abs(t) > 1.0):
            raise ValueError("elliptic sine map is defined on [-1, 1] only")
        return t

    def fwd(t):
        h, _ = _schwarz(_check(t), m, mc, K)
        return (h + 2.0 * sm * (1.0 + h + h * h) + m * h) / ((1.0 + h) ** 2 * (1.0 + sm) * q)

    def der(t):
        h, dh = _schwarz(_check(t), m, mc, K)
        return dh * (1.0 - h) * (1.0 - sm) ** 2 / ((1.0 + h) ** 3 * (1.0 + sm) * q)

    pred = ConvergencePrediction.ellipse(math.exp(0.25 * math.pi * Kc / K))
    return _reflected("elliptic", fwd, der, pred, s, {"A": s.A, "m": m, "mc": mc})
