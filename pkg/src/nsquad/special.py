"""Complete elliptic integral K and the Jacobi elliptic functions for real arguments.

Parameter convention
--------------------
Everything here uses the *parameter* ``m`` (the modulus squared, ``m = k**2``)::

    K(m) = integral_0^{pi/2} dtheta / sqrt(1 - m sin(theta)**2)

This matches ``scipy.special.ellipk`` and ``ellipj`` but NOT libraries that take
the modulus ``k``.  Every function also accepts the complementary parameter
``mc = 1 - m``.  Pass it whenever it is known analytically: the conformal maps
routinely need ``m`` within 1e-9 of 1, where forming ``1 - m`` by subtraction
throws away most of the significant digits.

K comes from the arithmetic-geometric mean, and am/sn/cn/dn from the AGM phase
(descending Landen) recursion after reducing the argument to ``[0, K/2]`` with
the quarter-period reflection formulas.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = [
    "EllipticDomainError",
    "agm",
    "complete_elliptic_K",
    "jacobi_am",
    "jacobi_sn_cn_dn",
]

_EPS = np.finfo(float).eps


class EllipticDomainError(ValueError):
    """Raised for an elliptic parameter outside ``0 <= m < 1``."""


def _check_parameter(m: float, mc: float | None) -> tuple[float, float]:
    if mc is None:
        m = float(m)
        if not (0.0 <= m < 1.0):
            raise EllipticDomainError(f"elliptic parameter m={m!r} outside [0, 1)")
        return m, 1.0 - m
    m, mc = float(m), float(mc)
    if not (0.0 < mc <= 1.0) or not (0.0 <= m < 1.0):
        raise EllipticDomainError(f"elliptic parameters m={m!r}, mc={mc!r} invalid")
    if abs((m + mc) - 1.0) > 4 * _EPS:
        raise EllipticDomainError(f"m + mc = {m + mc!r} is not 1")
    return m, mc


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    a, b = float(a), float(b)
    for _ in range(64):
        if abs(a - b) <= 2 * _EPS * a:
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def complete_elliptic_K(m: float, mc: float | None = None) -> float:
    """K(m) = pi / (2 agm(1, sqrt(1 - m))).

    ``mc`` may be supplied instead of relying on ``1 - m``; see module docstring.
    """
    m, mc = _check_parameter(m, mc)
    return math.pi / (2.0 * agm(1.0, math.sqrt(mc)))


def _landen_table(m: float, mc: float) -> tuple[np.ndarray, np.ndarray]:
    a, b, c = 1.0, math.sqrt(mc), math.sqrt(m)
    aa, cc = [a], [c]
    while abs(c) > _EPS * a and len(aa) < 64:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        aa.append(a)
        cc.append(c)
    return np.array(aa), np.array(cc)


def _phase(v: np.ndarray, aa: np.ndarray, cc: np.ndarray) -> np.ndarray:
    # amplitude via the AGM phase recursion (DLMF 22.20.ii)
    n = len(aa) - 1
    phi = (2.0**n) * aa[n] * v
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + np.arcsin(cc[j] / aa[j] * np.sin(phi)))
    return phi


def _reduced(u, m: float, mc: float):
    """Return (sn, cn, dn, am) of the reduced argument and the half-period count."""
    u = np.asarray(u, dtype=float)
    K = complete_elliptic_K(m, mc)
    kp = math.sqrt(mc)
    nper = np.rint(u / (2.0 * K))
    r = u - 2.0 * K * nper  # r in [-K, K]
    ar = np.abs(r)
    reflect = ar > 0.5 * K
    v = np.where(reflect, K - ar, ar)
    aa, cc = _landen_table(m, mc)
    phi = _phase(v, aa, cc)
    s, c = np.sin(phi), np.cos(phi)
    d = np.sqrt(c * c + mc * s * s)
    # sn(K - v) = cd(v), cn(K - v) = k' sd(v), dn(K - v) = k' nd(v)
    sn = np.where(reflect, c / d, s)
    cn = np.where(reflect, kp * s / d, c)
    dn = np.where(reflect, kp / d, d)
    sgn = np.where(r < 0, -1.0, 1.0)
    sn = sgn * sn
    am = np.arctan2(sn, cn)
    return sn, cn, dn, am, nper


def jacobi_sn_cn_dn(u, m: float, mc: float | None = None):
    """Jacobi elliptic functions sn, cn, dn of real ``u`` (scalar or array)."""
    m, mc = _check_parameter(m, mc)
    sn, cn, dn, _, nper = _reduced(u, m, mc)
    flip = np.where(np.mod(nper, 2) == 0, 1.0, -1.0)
    sn, cn = flip * sn, flip * cn
    if np.ndim(u) == 0:
        return float(sn), float(cn), float(dn)
    return sn, cn, dn


def jacobi_am(u, m: float, mc: float | None = None):
    """Jacobi amplitude, continuous and odd in ``u``, with am(u + 2K) = am(u) + pi."""
    m, mc = _check_parameter(m, mc)
    _, _, _, am, nper = _reduced(u, m, mc)
    out = am + math.pi * nper
    return float(out) if np.ndim(u) == 0 else out
