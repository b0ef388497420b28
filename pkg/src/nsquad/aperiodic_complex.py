"""Gauss-Legendre acceleration on [-1, 1] for a singularity pair A +- iB, B > 0.

Methods: the optimal two-interval split, the sinh map, Tee's elliptic sine
map, the Jafari-Varzaneh/Hosseini composite map, and the iterated sinh map.
Each map returns a :class:`~nsquad.rules.VariableMap` whose prediction is the
Bernstein parameter of the pre-image t* of A + iB.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import ConvergencePrediction, rho_from_point
from .rules import INTERVAL, VariableMap, gauss_legendre, identity_map
from .special import complete_elliptic_K, jacobi_sn_cn_dn

__all__ = [
    "ComplexSingularity",
    "aperiodic_split_delta",
    "gl_identity_map",
    "iterated_sinh_map",
    "jvh_map",
    "sinh_map",
    "split_integrate",
    "split_prediction",
    "split_rule",
    "tee_elliptic_map",
]


@dataclass(frozen=True)
class ComplexSingularity:
    A: float
    B: float

    def __post_init__(self):
        if not self.B > 0:
            raise ValueError(f"imaginary height B must be positive, got {self.B!r}")

    @property
    def point(self) -> complex:
        return complex(self.A, self.B)


def _sgn(a: float) -> float:
    # sgn(0) = +1 by convention
    return -1.0 if a < 0 else 1.0


def _split_inner(A: float, B: float) -> float:
    # A^2 - 1 - B^2 + sqrt((1 + A^2 + B^2)^2 - 4 A^2), without cancellation
    D = A * A - 1.0 - B * B
    R = math.sqrt((1.0 + A * A + B * B) ** 2 - 4.0 * A * A)
    if D >= 0:
        return D + R
    return 4.0 * A * A * B * B / (R - D)


def aperiodic_split_delta(s: ComplexSingularity) -> float:
    """Split point d in (-1, 1) equalising the Bernstein ellipses of both halves."""
    A, B = s.A, s.B
    return _sgn(A) * (abs(A) - math.sqrt(0.5 * _split_inner(A, B)))


def split_rule(delta: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss nodes on [-1, d] and [d, 1], n//2 each with the extra node on the longer piece."""
    if n < 2:
        raise ValueError("split rule needs at least 2 nodes")
    if not -1.0 < delta < 1.0:
        raise ValueError(f"split point {delta!r} outside (-1, 1)")
    n_left = n // 2
    n_right = n - n_left
    if delta > 0:  # left piece [-1, d] is longer
        n_left, n_right = n_right, n_left
    r1, r2 = gauss_legendre(n_left), gauss_legendre(n_right)
    h1, h2 = 0.5 * (delta + 1.0), 0.5 * (1.0 - delta)
    x = np.concatenate([0.5 * (delta - 1.0) + h1 * r1.nodes, 0.5 * (1.0 + delta) + h2 * r2.nodes])
    w = np.concatenate([h1 * r1.weights, h2 * r2.weights])
    return x, w


def _split_rho(z: complex, delta: float) -> float:
    t_star = (2 * z - delta + 1) / (1 + delta)
    w_star = (2 * z - delta - 1) / (1 - delta)
    return min(rho_from_point(t_star), rho_from_point(w_star))


def split_prediction(s: ComplexSingularity) -> ConvergencePrediction:
    return ConvergencePrediction.ellipse(_split_rho(s.point, aperiodic_split_delta(s)), split=True)


def split_integrate(f, s: ComplexSingularity, n: int) -> float:
    x, w = split_rule(aperiodic_split_delta(s), n)
    vals = np.asarray(f(x), dtype=float)
    if not np.all(np.isfinite(vals)):
        i = int(np.argmax(~np.isfinite(vals)))
        raise FloatingPointError(f"non-finite integrand value at split node {i} (x={x[i]!r})")
    return float(np.dot(w, vals))


def _param(t) -> np.ndarray:
    """Real array, or complex if given complex input (for checking x(t*) = A + iB)."""
    a = np.asarray(t)
    return a if np.iscomplexobj(a) else a.astype(float)


def gl_identity_map(s: ComplexSingularity) -> VariableMap:
    """Plain Gauss-Legendre, rho from the singularity itself."""
    return identity_map(INTERVAL, ConvergencePrediction.ellipse(rho_from_point(s.point)))


def _asinh_pair(s: ComplexSingularity) -> tuple[float, float]:
    return math.asinh((1.0 - s.A) / s.B), math.asinh((1.0 + s.A) / s.B)


def sinh_map(s: ComplexSingularity) -> VariableMap:
    """x(t) = A + B sinh(((1-t)/2) asinh((-1-A)/B) + ((1+t)/2) asinh((1-A)/B))."""
    A, B = s.A, s.B
    a1, a2 = _asinh_pair(s)
    mid, half = 0.5 * (a1 - a2), 0.5 * (a1 + a2)

    def forward(t):
        return A + B * np.sinh(mid + half * _param(t))

    def derivative(t):
        return B * half * np.cosh(mid + half * _param(t))

    t_star = 1.0 + (1j * math.pi - 2.0 * a1) / (a1 + a2)
    pred = ConvergencePrediction.ellipse(rho_from_point(t_star))
    return VariableMap("sinh", forward, derivative, pred, INTERVAL,
                       {"A": A, "B": B, "t_star": t_star})


def _tee_parameters(A: float, B: float) -> tuple[float, float, float]:
    """c, m and 1 - m of the elliptic sine map, evaluated without cancellation."""
    P = A * A + B * B + 1.0
    R = math.sqrt(P * P - 4.0 * A * A)
    # c = sgn(A)/sqrt2 * sqrt(P - R) = sqrt2 * A / sqrt(P + R)
    c = math.sqrt(2.0) * A / math.sqrt(P + R)
    # 1 - c^2 = (1 + B^2 - A^2 + R) / (P + R)
    E = 1.0 + B * B - A * A
    num = E + R if E >= 0 else 4.0 * A * A * B * B / (R - E)
    q = num / (P + R)
    s = math.sqrt(B * B + q)
    # sqrt(m) = (s - B)/(s + B) = q/(s + B)^2 and 1 - sqrt(m) = 2B/(s + B)
    sqrt_m = q / (s + B) ** 2
    one_minus = 2.0 * B / (s + B)
    m = sqrt_m * sqrt_m
    mc = one_minus * (1.0 + sqrt_m)
    return c, m, mc


def _schwarz(t, m, mc, K):
    """h(t) = m^(1/4) sn(2K asin(t)/pi, m) and its derivative h'(t).

    The ellipse-to-disc map.  cn/sqrt(1 - t^2) is bounded as t -> +-1; it is
    evaluated through sn(v), v = K - |u|, to keep full relative accuracy there.
    """
    t = np.asarray(t, dtype=float)
    q = m**0.25
    u = (2.0 * K / math.pi) * np.arcsin(t)
    sn, cn, dn = jacobi_sn_cn_dn(u, m, mc)
    h = q * sn
    # cn(u) / sqrt(1 - t^2), with 1 - t^2 = cos(asin t)^2
    at = np.abs(t)
    v = (2.0 * K / math.pi) * np.arccos(at)  # = K - |u|
    snv, _, dnv = jacobi_sn_cn_dn(v, m, mc)
    with np.errstate(invalid="ignore", divide="ignore"):
        near = math.sqrt(mc) * snv / (dnv * np.sqrt((1.0 - at) * (1.0 + at)))
        ratio = np.where(at > 0.5, near, cn / np.sqrt(1.0 - t * t))
    # limit at the endpoints: sn(v) ~ v = (2K/pi) sqrt(1 - t^2)
    ratio = np.where(at == 1.0, math.sqrt(mc) * 2.0 * K / math.pi, ratio)
    dh = (2.0 * q * K / math.pi) * ratio * dn
    return h, dh


def tee_elliptic_map(s: ComplexSingularity) -> VariableMap:
    """Tee/Hale elliptic sine map, conformal from a Bernstein ellipse to the doubly slit plane."""
    A, B = s.A, s.B
    c, m, mc = _tee_parameters(A, B)
    K = complete_elliptic_K(m, mc)
    Kc = complete_elliptic_K(mc, m)
    q = m**0.25
    coef = (1.0 - math.sqrt(m)) / (2.0 * q)

    def _check(t):
        t = np.asarray(t, dtype=float)
        if np.any(np.abs(t) > 1.0):
            raise ValueError("elliptic sine map is defined on [-1, 1] only")
        return t

    def forward(t):
        h, _ = _schwarz(_check(t), m, mc, K)
        return c / q - coef * ((1.0 - c) / (h - 1.0) + (1.0 + c) / (h + 1.0))

    def derivative(t):
        h, dh = _schwarz(_check(t), m, mc, K)
        return coef * ((1.0 - c) / (h - 1.0) ** 2 + (1.0 + c) / (h + 1.0) ** 2) * dh

    pred = ConvergencePrediction.ellipse(math.exp(math.pi * Kc / (4.0 * K)))
    return VariableMap("tee", forward, derivative, pred, INTERVAL,
                       {"A": A, "B": B, "c": c, "m": m, "mc": mc})


def jvh_map(s: ComplexSingularity, L: float = 0.5) -> VariableMap:
    """Jafari-Varzaneh/Hosseini composite of the sinh map with a tan stretch, parameter L."""
    if not 0.2 <= L <= 0.9:
        raise ValueError(f"JVH parameter L={L!r} outside [0.2, 0.9]")
    A, B = s.A, s.B
    a1, a2 = _asinh_pair(s)
    alpha = 0.5 * (a1 + a2)
    g = 0.5 * (2.0 * alpha * L + math.pi)
    beta = math.atan(alpha / g)

    def forward(t):
        return A + B * np.sinh(a1 - alpha + g * np.tan(beta * _param(t)))

    def derivative(t):
        t = _param(t)
        arg = a1 - alpha + g * np.tan(beta * t)
        return B * np.cosh(arg) * g * beta / np.cos(beta * t) ** 2

    t_star = np.arctan((2.0 * alpha - 2.0 * a1 + 1j * math.pi) / (2.0 * g)) / beta
    pred = ConvergencePrediction.ellipse(rho_from_point(complex(t_star)))
    return VariableMap("jvh", forward, derivative, pred, INTERVAL,
                       {"A": A, "B": B, "L": L, "t_star": complex(t_star)})


def iterated_sinh_map(s: ComplexSingularity) -> VariableMap:
    """x(t) = A + B sinh((pi/2) sinh(l(t))) with l linear, fixing x(+-1) = +-1."""
    A, B = s.A, s.B
    a1, a2 = _asinh_pair(s)
    b1, b2 = math.asinh(2.0 / math.pi * a1), math.asinh(2.0 / math.pi * a2)
    mid, half = 0.5 * (b1 - b2), 0.5 * (b1 + b2)

    def forward(t):
        ell = mid + half * _param(t)
        return A + B * np.sinh(0.5 * math.pi * np.sinh(ell))

    def derivative(t):
        ell = mid + half * _param(t)
        return B * np.cosh(0.5 * math.pi * np.sinh(ell)) * 0.5 * math.pi * np.cosh(ell) * half

    t_star = 1.0 + (1j * math.pi - 2.0 * b1) / (b1 + b2)
    pred = ConvergencePrediction.ellipse(rho_from_point(t_star))
    return VariableMap("sinhsinh", forward, derivative, pred, INTERVAL,
                       {"A": A, "B": B, "t_star": t_star})
