"""Bernstein-ellipse and strip geometry, predicted rates, and empirical slope fits."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ConvergencePrediction",
    "ConvergenceRecord",
    "DegenerateSingularityError",
    "InsufficientDataError",
    "PLATEAU_CUTOFF",
    "decay_bound",
    "fit_slope",
    "rho_from_point",
]

# Errors below this are treated as roundoff plateau and never enter a slope fit.
PLATEAU_CUTOFF = 1e-13


class DegenerateSingularityError(ValueError):
    """The singularity lies on the integration interval itself."""


class InsufficientDataError(ValueError):
    """Too few pre-plateau error samples to fit a convergence slope."""


@dataclass(frozen=True)
class ConvergencePrediction:
    """Predicted geometric convergence of a quadrature scheme.

    ``kind`` is ``"ellipse"`` (``value`` is the Bernstein parameter rho) or
    ``"strip"`` (``value`` is the half-width lambda).  ``per_node_decay`` is the
    factor by which the error bound shrinks per added node: ``rho**-2`` for
    Gauss-Legendre, ``rho**-1`` for a two-piece split that gives each piece
    half the nodes, ``exp(-lambda)`` for the trapezoid rule.  An entire
    transplanted integrand is reported with ``value = inf`` and decay 0.
    """

    kind: str
    value: float
    per_node_decay: float

    def __post_init__(self):
        if self.kind not in ("ellipse", "strip"):
            raise ValueError(f"unknown prediction kind {self.kind!r}")
        if self.unbounded:
            return
        if self.kind == "ellipse" and not self.value > 1.0:
            raise ValueError(f"ellipse parameter must exceed 1, got {self.value}")
        if self.kind == "strip" and not self.value > 0.0:
            raise ValueError(f"strip half-width must be positive, got {self.value}")
        if not 0.0 < self.per_node_decay < 1.0:
            raise ValueError(f"per-node decay {self.per_node_decay} not in (0, 1)")

    @classmethod
    def strip(cls, lam: float) -> "ConvergencePrediction":
        return cls("strip", float(lam), math.exp(-lam))

    @classmethod
    def ellipse(cls, rho: float, split: bool = False) -> "ConvergencePrediction":
        if math.isinf(rho):
            return cls.unbounded_ellipse()
        return cls("ellipse", float(rho), rho ** (-1.0 if split else -2.0))

    @classmethod
    def unbounded_ellipse(cls) -> "ConvergencePrediction":
        return cls("ellipse", math.inf, 0.0)

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.value)

    @property
    def rate(self) -> float:
        """Decay rate per node, ``-log(per_node_decay)``."""
        return math.inf if self.per_node_decay == 0.0 else -math.log(self.per_node_decay)


@dataclass(frozen=True)
class ConvergenceRecord:
    method: str
    n: int
    abs_error: float
    rel_error: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (math.isfinite(self.abs_error) and math.isfinite(self.rel_error)):
            raise ValueError("errors must be finite")


def rho_from_point(z: complex) -> float:
    """Parameter of the Bernstein ellipse (foci +-1) passing through ``z``.

    rho = |z +- sqrt(z**2 - 1)|, taking whichever sign gives rho > 1.
    """
    z = complex(z)
    if abs(z.imag) < 1e-14 and abs(z.real) <= 1.0 + 1e-14:
        raise DegenerateSingularityError(f"point {z} lies on [-1, 1]")
    s = cmath.sqrt(z * z - 1.0)
    return max(abs(z + s), abs(z - s))


def decay_bound(pred: ConvergencePrediction, n: int) -> float:
    """n-dependent factor of the error bound; the constant M is unknown."""
    if n < 1:
        raise ValueError("n must be positive")
    return pred.per_node_decay**n


def fit_slope(records: Iterable[ConvergenceRecord] | Sequence[tuple[int, float]],
              cutoff: float = PLATEAU_CUTOFF, onset: float | None = None) -> float:
    """Least-squares decay rate per node of log(rel_error) against n.

    Only the pre-plateau range is used: records are sorted by n and the fit
    stops at the first error below ``cutoff``.  With ``onset`` set, the fit
    also skips the initial transient, starting at the first error below
    ``onset``.  Returns a positive number for a decaying sequence.  Plain
    ``(n, rel_error)`` pairs are accepted too.
    """
    pts = []
    for r in records:
        n, e = (r.n, r.rel_error) if isinstance(r, ConvergenceRecord) else r
        pts.append((int(n), float(e)))
    pts.sort()
    kept = []
    started = onset is None
    for n, e in pts:
        if not e >= cutoff:
            break
        started = started or e < onset
        if started:
            kept.append((n, e))
    if len(kept) < 4:
        raise InsufficientDataError(
            f"need at least 4 pre-plateau points, got {len(kept)}")
    ns = np.array([p[0] for p in kept], dtype=float)
    logs = np.log(np.array([p[1] for p in kept]))
    slope = np.polyfit(ns, logs, 1)[0]
    return float(-slope)
