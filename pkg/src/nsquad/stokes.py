"""Stokes single-layer potential over a slender fiber, with per-target customized quadrature.

The fiber is a tube of radius eps around a closed curve w(s) wound on a torus
(major radius 1, minor radius 0.4).  The surface is

    y(s, t) = w(s) + eps cos(t) N(s) + eps sin(t) B(s),

with T = w'/|w'|, N = T x p / |T x p| and B = T x N for a fixed reference
vector p.  With density equal to the outward normal the potential vanishes
identically, which gives an exact answer for measuring quadrature error.

The outer integral over s is split into 16 panels at fixed breakpoints.  For
each target and panel, a rule is built from the nearest complex singularity of
the outer integrand (roots of a scalar residual, found by Chebyshev
interpolation) and, for every outer node, from the inner singularity t* in
closed form.  Panels far from the target share a single reference rule.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable

import numpy as np
from numpy.polynomial import chebyshev as C

from .aperiodic_complex import ComplexSingularity, aperiodic_split_delta, sinh_map, split_rule
from .periodic import PeriodicSingularity, ism_map, periodic_split_prediction, periodic_split_rule
from .rates import DegenerateSingularityError, rho_from_point
from .rules import gauss_legendre, mapped_nodes, trapezoid_periodic

__all__ = [
    "BREAKPOINTS",
    "STRATEGIES",
    "FiberSurface",
    "GeometryError",
    "GridResult",
    "PanelRule",
    "SingularityInfo",
    "SurfaceRule",
    "build_surface_rule",
    "centerline",
    "distance_to_surface",
    "error_grid",
    "evaluate_slp",
    "frame",
    "inner_singularity",
    "jacobian",
    "normal",
    "outer_singularities",
    "slp_integrand",
    "surface_point",
    "torus_curve",
    "write_grid_csv",
]

log = logging.getLogger(__name__)

BREAKPOINTS = (0.0, 0.58, 1.21, 1.83, 2.35, 2.76, 3.19, 3.86, 4.26, 4.65,
               5.04, 5.24, 5.41, 5.57, 5.75, 6.05, 2 * math.pi)
STRATEGIES = ("reference", "split", "conformal")

FAR_FACTOR = 7.0  # panels farther than FAR_FACTOR * eps use the reference rule
RHO_REVERT = 2.0  # ... as do panels whose outer singularities all have rho above this
CHEB_DEGREE = 50
ROOT_BOX = 1.5  # keep roots with |Re z|, |Im z| <= ROOT_BOX in panel coordinates
NEWTON_STEPS = 3
MASK_DISTANCE = 1e-3
GRID_X = (0.0, 1.0)
GRID_Y = (-5.0 / 8.0, 3.0 / 8.0)


class GeometryError(ValueError):
    """The target or the surface parameterization is degenerate."""


# --- geometry ----------------------------------------------------------------

def torus_curve(s):
    """w(s), w'(s), w''(s) for the closed curve on the torus; s may be complex.

    The torus angle phi(s) = 2 exp(cos(s + 1)) cos(2s) + 2s advances by 4 pi per period.
    """
    s = np.asarray(s)
    E = np.exp(np.cos(s + 1.0))
    E1 = -np.sin(s + 1.0) * E
    E2 = (np.sin(s + 1.0) ** 2 - np.cos(s + 1.0)) * E
    c2, s2 = np.cos(2 * s), np.sin(2 * s)
    phi = 2 * E * c2 + 2 * s
    phi1 = 2 * E1 * c2 - 4 * E * s2 + 2
    phi2 = 2 * E2 * c2 - 8 * E1 * s2 - 8 * E * c2

    cp, sp = np.cos(phi), np.sin(phi)
    R = 1.0 + 0.4 * cp
    R1 = -0.4 * sp * phi1
    R2 = -0.4 * (cp * phi1**2 + sp * phi2)
    Z = 0.4 * sp
    Z1 = 0.4 * cp * phi1
    Z2 = 0.4 * (-sp * phi1**2 + cp * phi2)

    cs, ss = np.cos(s), np.sin(s)
    w = np.stack([R * cs, R * ss, Z], axis=-1)
    dw = np.stack([R1 * cs - R * ss, R1 * ss + R * cs, Z1], axis=-1)
    d2w = np.stack([R2 * cs - 2 * R1 * ss - R * cs, R2 * ss + 2 * R1 * cs - R * ss, Z2], axis=-1)
    return w, dw, d2w


@dataclass(frozen=True)
class FiberSurface:
    """Tube of radius ``epsilon`` around ``curve``; ``curve(s)`` returns (w, w', w'')."""

    epsilon: float = 0.05
    p: tuple = (10.0, 3.0, 6.0)
    breakpoints: tuple = BREAKPOINTS
    curve: Callable = field(default=torus_curve, repr=False)

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"tube radius must be positive, got {self.epsilon!r}")
        bp = tuple(float(b) for b in self.breakpoints)
        if len(bp) < 2 or any(b1 <= b0 for b0, b1 in zip(bp, bp[1:])):
            raise ValueError("panel breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "p", tuple(float(c) for c in self.p))

    @property
    def panels(self) -> list[tuple[float, float]]:
        return list(zip(self.breakpoints[:-1], self.breakpoints[1:]))


DEFAULT_SURFACE = FiberSurface()


def _frame_full(surface: FiberSurface, s):
    """w, w', |w'|, T, N, B and the s-derivatives N', B' at real s."""
    s = np.asarray(s, dtype=float)
    w, dw, d2w = surface.curve(s)
    p = np.array(surface.p)
    speed = np.linalg.norm(dw, axis=-1)
    T = dw / speed[..., None]
    dT = (d2w - T * np.sum(T * d2w, axis=-1)[..., None]) / speed[..., None]
    u = np.cross(T, p)
    un = np.linalg.norm(u, axis=-1)
    N = u / un[..., None]
    du = np.cross(dT, p)
    dN = (du - N * np.sum(N * du, axis=-1)[..., None]) / un[..., None]
    B = np.cross(T, N)
    dB = np.cross(dT, N) + np.cross(T, dN)
    return w, dw, speed, T, N, B, dN, dB, un


def centerline(s, surface: FiberSurface = DEFAULT_SURFACE) -> np.ndarray:
    return surface.curve(np.asarray(s, dtype=float))[0]


def frame(s, surface: FiberSurface = DEFAULT_SURFACE):
    """(T, N, B) at s."""
    _, _, _, T, N, B, _, _, _ = _frame_full(surface, s)
    return T, N, B


def normal(s, t, surface: FiberSurface = DEFAULT_SURFACE) -> np.ndarray:
    """Outward unit normal cos(t) N + sin(t) B."""
    s, t = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    _, N, B = frame(s, surface)
    return np.cos(t)[..., None] * N + np.sin(t)[..., None] * B


def surface_point(s, t, surface: FiberSurface = DEFAULT_SURFACE) -> np.ndarray:
    s, t = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    w = centerline(s, surface)
    return w + surface.epsilon * normal(s, t, surface)


def _surface_data(surface: FiberSurface, s, t):
    """Points, unit normals and Jacobian |y_s x y_t| on matching arrays s, t."""
    s, t = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
    w, dw, _, _, N, B, dN, dB, _ = _frame_full(surface, s)
    ct, st = np.cos(t)[..., None], np.sin(t)[..., None]
    eps = surface.epsilon
    nu = ct * N + st * B
    ys = dw + eps * (ct * dN + st * dB)
    yt = eps * (-st * N + ct * B)
    J = np.linalg.norm(np.cross(ys, yt), axis=-1)
    return w + eps * nu, nu, J


def jacobian(s, t, surface: FiberSurface = DEFAULT_SURFACE):
    """Surface area element |dy/ds x dy/dt|, from analytic derivatives of the frame."""
    J = _surface_data(surface, s, t)[2]
    if np.any(J <= 0):
        raise GeometryError("nonpositive surface Jacobian: the tube intersects itself")
    return J if J.ndim else float(J)


def slp_integrand(x, s, t, density=None, surface: FiberSurface = DEFAULT_SURFACE) -> np.ndarray:
    """(f/|r| + r (r.f)/|r|^3) J with r = x - y(s, t) and f = density(s, t) (default: the normal)."""
    y, nu, J = _surface_data(surface, s, t)
    f = nu if density is None else np.asarray(density(np.asarray(s, float), np.asarray(t, float)), dtype=float)
    r = np.asarray(x, dtype=float) - y
    rn = np.linalg.norm(r, axis=-1)
    if np.any(rn == 0):
        raise GeometryError("target lies on the surface")
    out = (f / rn[..., None] + r * (np.sum(r * f, axis=-1) / rn**3)[..., None]) * J[..., None]
    return out


# --- singularities -----------------------------------------------------------

@dataclass(frozen=True)
class SingularityInfo:
    """Nearest singularity of an inner (periodic) or outer (aperiodic) integrand.

    ``kind`` is "periodic", "complex" or "real"; ``singularity`` holds the matching
    PeriodicSingularity / ComplexSingularity / RealSingularity.  For the periodic
    case ``xi`` is the phase and ``point`` is t*; otherwise ``point`` is the root
    s* in panel coordinates and ``rho`` its Bernstein parameter.
    """

    kind: str
    singularity: object
    point: complex
    xi: float | None = None
    rho: float | None = None


def inner_singularity(x, s, surface: FiberSurface = DEFAULT_SURFACE) -> tuple[complex, float]:
    """(t*, xi): |x - y(s, t)|^2 vanishes at t = t* in the upper half plane."""
    x = np.asarray(x, dtype=float)
    w, _, _, _, N, B, _, _, _ = _frame_full(surface, float(s))
    r0 = x - w
    a, b = float(r0 @ N), float(r0 @ B)
    dperp = math.hypot(a, b)
    eps = surface.epsilon
    if dperp == 0.0:
        raise GeometryError("target on the tangent line of the centerline: no inner singularity")
    arg = (float(r0 @ r0) + eps * eps) / (2 * eps * dperp)
    if arg < 1.0:
        if arg > 1.0 - 1e-14:
            arg = 1.0
        else:
            raise GeometryError(f"arccosh argument {arg!r} below 1")
    xi = math.atan2(b, a)
    return complex(xi, math.acosh(arg)), xi


def _inner_heights(surface: FiberSurface, x, s):
    """Vectorized Im t* and xi over an array of real s (Im t* = inf where undefined)."""
    w, _, _, _, N, B, _, _, _ = _frame_full(surface, s)
    r0 = x - w
    a, b = np.sum(r0 * N, axis=-1), np.sum(r0 * B, axis=-1)
    dperp = np.hypot(a, b)
    eps = surface.epsilon
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = (np.sum(r0 * r0, axis=-1) + eps * eps) / (2 * eps * dperp)
    heights = np.where(dperp > 0, np.arccosh(np.maximum(arg, 1.0)), np.inf)
    return heights, np.arctan2(b, a)


def _outer_residual(surface: FiberSurface, x, s, derivative=False):
    """F(s) = (|r|^2 + eps^2)^2 - 4 eps^2 (|r|^2 - (r.w')^2/(w'.w')), r = x - w(s).

    Written with bilinear (not Hermitian) products, so it continues analytically to complex s.
    """
    w, dw, d2w = surface.curve(s)
    eps2 = surface.epsilon**2
    r = x - w
    rr = np.sum(r * r, axis=-1)
    rw = np.sum(r * dw, axis=-1)
    g = np.sum(dw * dw, axis=-1)
    F = (rr + eps2) ** 2 - 4 * eps2 * (rr - rw * rw / g)
    if not derivative:
        return F
    drr = -2 * rw
    drw = -g + np.sum(r * d2w, axis=-1)
    dg = 2 * np.sum(dw * d2w, axis=-1)
    dF = 2 * (rr + eps2) * drr - 4 * eps2 * (drr - (2 * rw * drw * g - rw * rw * dg) / (g * g))
    return F, dF


def outer_singularities(x, panel: tuple[float, float],
                        surface: FiberSurface = DEFAULT_SURFACE) -> list[tuple[complex, float]]:
    """Complex roots s* of the outer residual near ``panel``, as (s*, rho) sorted by rho.

    s* is returned in the original s variable; rho is the Bernstein parameter of
    its image in the panel's [-1, 1] coordinate.  Only roots with Im s* >= 0 are
    listed (the residual is real, so roots come in conjugate pairs).
    """
    x = np.asarray(x, dtype=float)
    a, b = panel
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    z = np.cos(np.pi * np.arange(CHEB_DEGREE + 1) / CHEB_DEGREE)  # Chebyshev points
    F = _outer_residual(surface, x, mid + half * z)
    coef = _cheb_coeffs(F)
    scale = np.max(np.abs(coef))
    if scale == 0 or not np.all(np.isfinite(coef)):
        raise np.linalg.LinAlgError("degenerate outer residual")
    # drop negligible trailing coefficients for a well-conditioned colleague matrix
    k = len(coef) - 1
    while k > 0 and abs(coef[k]) < 1e-15 * scale:
        k -= 1
    roots = C.chebroots(coef[: k + 1])
    out = []
    for zr in roots:
        if abs(zr.real) > ROOT_BOX or abs(zr.imag) > ROOT_BOX:
            continue
        s0 = s_star = complex(mid + half * zr)
        with np.errstate(all="ignore"):
            for _ in range(NEWTON_STEPS):
                Fv, dFv = _outer_residual(surface, x, np.array(s_star), derivative=True)
                step = complex(Fv / dFv) if dFv != 0 else 0j
                if not np.isfinite(step):
                    break
                s_star -= step
        # spurious eigenvalues (interpolant roots far from any true root) drift away: drop them
        if not np.isfinite(s_star) or abs(s_star - s0) > 0.1 * half:
            continue
        if s_star.imag < 0:
            s_star = s_star.conjugate()
        zl = (s_star - mid) / half
        try:
            rho = rho_from_point(zl)
        except DegenerateSingularityError:
            rho = 1.0
        out.append((s_star, rho))
    # merge duplicates (a conjugate pair polishes to the same root)
    out.sort(key=lambda p: (p[1], p[0].real))
    merged: list[tuple[complex, float]] = []
    for sr, rho in out:
        if not any(abs(sr - m) < 1e-8 * max(1.0, abs(m)) for m, _ in merged):
            merged.append((sr, rho))
    return merged


def _cheb_coeffs(values: np.ndarray) -> np.ndarray:
    """Chebyshev coefficients from samples at cos(pi j / d), j = 0..d (DCT-I via FFT)."""
    d = len(values) - 1
    ext = np.concatenate([values, values[-2:0:-1]])
    c = np.real(np.fft.fft(ext)) / d
    c = c[: d + 1]
    c[0] *= 0.5
    c[d] *= 0.5
    return c


@lru_cache(maxsize=16)
def _panel_samples(surface: FiberSurface, m: int = 129):
    s = np.array([np.linspace(a, b, m) for a, b in surface.panels])
    return s, surface.curve(s)[0]


def _panel_distances(surface: FiberSurface, x) -> np.ndarray:
    """Distance from x to the tube over each panel: min_s |x - w(s)| - eps (negative inside).

    Dense sampling followed by Newton steps on (x - w(s)).w'(s) = 0, clipped to the panel.
    """
    x = np.asarray(x, dtype=float)
    ss, ws = _panel_samples(surface)
    d = np.linalg.norm(x - ws, axis=-1)
    i = np.argmin(d, axis=1)
    rows = np.arange(len(ss))
    best = d[rows, i]
    s = ss[rows, i]
    lo, hi = ss[:, 0], ss[:, -1]
    for _ in range(4):
        w, dw, d2w = surface.curve(s)
        r = x - w
        g = np.sum(r * dw, axis=-1)
        gp = np.sum(r * d2w, axis=-1) - np.sum(dw * dw, axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.clip(np.where(gp < 0, s - g / gp, s), lo, hi)
    refined = np.linalg.norm(x - surface.curve(s)[0], axis=-1)
    return np.minimum(best, refined) - surface.epsilon


def distance_to_surface(x, surface: FiberSurface = DEFAULT_SURFACE) -> float:
    """Unsigned distance from x to the fiber surface."""
    return float(abs(np.min(_panel_distances(surface, x))))


# --- rules -------------------------------------------------------------------

@dataclass(frozen=True)
class PanelRule:
    """Tensor-style rule on one panel: n outer nodes s_j, each with its own inner rule.

    ``points``, ``normals`` and ``jw`` (Jacobian times combined weight) are the
    precomputed surface data at the n x n nodes.
    """

    panel: tuple[float, float]
    s: np.ndarray  # (n,)
    s_weights: np.ndarray  # (n,)
    t: np.ndarray  # (n, n)
    t_weights: np.ndarray  # (n, n)
    kind: str  # "reference" or the strategy name
    outer: SingularityInfo | None = None
    inner: tuple = ()
    points: np.ndarray = field(default=None, repr=False, compare=False)
    normals: np.ndarray = field(default=None, repr=False, compare=False)
    jw: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def accelerated(self) -> bool:
        return self.kind != "reference"

    @property
    def size(self) -> int:
        return self.t.size


@dataclass(frozen=True)
class SurfaceRule:
    target: tuple
    n: int
    strategy: str
    panels: tuple[PanelRule, ...]

    @property
    def provenance(self) -> tuple[str, ...]:
        return tuple(p.kind for p in self.panels)


def _make_panel(surface, panel, s, sw, t, tw, kind, outer=None, inner=()):
    S = np.broadcast_to(s[:, None], t.shape)
    y, nu, J = _surface_data(surface, S, t)
    jw = J * sw[:, None] * tw
    arrays = [s, sw, t, tw, y, nu, jw]
    for arr in arrays:
        arr.flags.writeable = False
    return PanelRule(panel, s, sw, t, tw, kind, outer, tuple(inner), y, nu, jw)


@lru_cache(maxsize=64)
def _reference_panels(surface: FiberSurface, n: int) -> tuple[PanelRule, ...]:
    g, tr = gauss_legendre(n), trapezoid_periodic(n)
    out = []
    for a, b in surface.panels:
        h = 0.5 * (b - a)
        s = 0.5 * (a + b) + h * g.nodes
        sw = h * g.weights
        t = np.tile(tr.nodes, (n, 1))
        tw = np.tile(tr.weights, (n, 1))
        out.append(_make_panel(surface, (a, b), s, sw, t, tw, "reference"))
    return tuple(out)


def _outer_rule(strategy, info: SingularityInfo, panel, n):
    a, b = panel
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    sing = info.singularity
    if strategy == "conformal":
        z, zw = mapped_nodes(gauss_legendre(n), sinh_map(sing))
    else:
        delta = aperiodic_split_delta(sing)
        if -1.0 < delta < 1.0:
            z, zw = split_rule(delta, n)
        else:  # singularity beyond the panel end: nothing to split
            g = gauss_legendre(n)
            z, zw = g.nodes, g.weights
    return mid + half * np.asarray(z), half * np.asarray(zw)


def _inner_rule(strategy, B, xi, n):
    tr = trapezoid_periodic(n)
    if not np.isfinite(B):
        return tr.nodes, tr.weights, None
    sing = PeriodicSingularity(float(B), float(xi))
    if strategy == "conformal":
        t, w = mapped_nodes(tr, ism_map(sing))
    elif math.log(periodic_split_prediction(sing.B).value) > sing.B:
        t, w = periodic_split_rule(sing, n)
    else:  # split would be slower than the plain rule at this height
        t, w = tr.nodes, tr.weights
    return np.asarray(t), np.asarray(w), sing


def build_surface_rule(x, n: int, strategy: str = "conformal",
                       surface: FiberSurface = DEFAULT_SURFACE) -> SurfaceRule:
    """Per-target surface rule with n outer and n inner nodes per panel."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    if n < 4:
        raise ValueError(f"need n >= 4 nodes per direction, got {n}")
    x = np.asarray(x, dtype=float)
    ref = _reference_panels(surface, n)
    if strategy == "reference":
        return SurfaceRule(tuple(x), n, strategy, ref)
    panels = []
    dist = _panel_distances(surface, x)
    for i, (a, b) in enumerate(surface.panels):
        if dist[i] > FAR_FACTOR * surface.epsilon:
            panels.append(ref[i])
            continue
        try:
            roots = outer_singularities(x, (a, b), surface)
        except np.linalg.LinAlgError as exc:
            log.warning("outer rootfinding failed on panel %d (%s); using the reference rule", i, exc)
            panels.append(ref[i])
            continue
        if not roots or roots[0][1] > RHO_REVERT:
            panels.append(ref[i])
            continue
        s_star, rho = roots[0]
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        zl = (s_star - mid) / half
        sing = ComplexSingularity(zl.real, max(abs(zl.imag), 1e-15))
        info = SingularityInfo("complex", sing, zl, rho=rho)
        s, sw = _outer_rule(strategy, info, (a, b), n)
        heights, xis = _inner_heights(surface, x, s)
        t = np.empty((n, n))
        tw = np.empty((n, n))
        inner = []
        for j in range(n):
            t[j], tw[j], psing = _inner_rule(strategy, heights[j], xis[j], n)
            inner.append(None if psing is None else SingularityInfo(
                "periodic", psing, complex(xis[j], heights[j]), xi=float(xis[j])))
        panels.append(_make_panel(surface, (a, b), s, sw, t, tw, strategy, info, inner))
    return SurfaceRule(tuple(x), n, strategy, tuple(panels))


def evaluate_slp(x, rule: SurfaceRule, density=None, surface: FiberSurface = DEFAULT_SURFACE) -> np.ndarray:
    """Single-layer potential at x (without the 1/(8 pi) factor); density defaults to the normal."""
    x = np.asarray(x, dtype=float)
    total = np.zeros(3)
    for p in rule.panels:
        if density is None:
            f = p.normals
        else:
            S = np.broadcast_to(p.s[:, None], p.t.shape)
            f = np.asarray(density(S, p.t), dtype=float)
        r = x - p.points
        rn2 = np.sum(r * r, axis=-1)
        rn = np.sqrt(rn2)
        if np.any(rn == 0):
            raise GeometryError("target coincides with a quadrature node")
        k = f / rn[..., None] + r * (np.sum(r * f, axis=-1) / (rn2 * rn))[..., None]
        total += np.einsum("ij,ijk->k", p.jw, k)
    return total


# --- error grid --------------------------------------------------------------

@dataclass(frozen=True)
class GridResult:
    """Cell-centered targets in row-major order (y slowest)."""

    x: np.ndarray
    y: np.ndarray
    log10_error: np.ndarray  # nan where masked
    masked: np.ndarray
    distance: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["x", "y", "log10_error", "masked"])
        for xi, yi, e, m in zip(self.x, self.y, self.log10_error, self.masked):
            wr.writerow([f"{xi:.6f}", f"{yi:.6f}", "nan" if m else f"{e:.6f}", int(m)])
        return buf.getvalue()


def _grid_cell(args):
    x, n, strategy, surface = args
    d = distance_to_surface(x, surface)
    if d < MASK_DISTANCE:
        return d, math.nan, True
    u = evaluate_slp(x, build_surface_rule(x, n, strategy, surface), surface=surface)
    return d, math.log10(max(float(np.linalg.norm(u)), 1e-300)), False


def error_grid(resolution: int, n: int, strategy: str = "conformal",
               surface: FiberSurface = DEFAULT_SURFACE, workers: int = 1) -> GridResult:
    """log10 |u| for the normal density on a resolution x resolution grid in the z = 0 square.

    The exact potential is zero, so |u| is the quadrature error.  Targets within
    1e-3 of the surface are masked.  Output does not depend on ``workers``.
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    hx = (GRID_X[1] - GRID_X[0]) / resolution
    hy = (GRID_Y[1] - GRID_Y[0]) / resolution
    xs = GRID_X[0] + hx * (np.arange(resolution) + 0.5)
    ys = GRID_Y[0] + hy * (np.arange(resolution) + 0.5)
    X, Y = np.meshgrid(xs, ys)  # row-major, y slowest
    X, Y = X.ravel(), Y.ravel()
    tasks = [(np.array([xi, yi, 0.0]), n, strategy, surface) for xi, yi in zip(X, Y)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            cells = list(ex.map(_grid_cell, tasks, chunksize=16))
    else:
        cells = [_grid_cell(t) for t in tasks]
    d, e, m = (np.array(v) for v in zip(*cells))
    return GridResult(X, Y, e.astype(float), m.astype(bool), d.astype(float))


def write_grid_csv(result: GridResult, path) -> None:
    Path(path).write_text(result.to_csv())
