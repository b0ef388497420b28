"""Gauss-Legendre and periodic trapezoid rules, and rules carried through a change of variable."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .rates import ConvergencePrediction

__all__ = [
    "INTERVAL",
    "PERIOD",
    "QuadRule",
    "QuadratureEvaluationError",
    "VariableMap",
    "apply",
    "apply_mapped",
    "gauss_legendre",
    "identity_map",
    "mapped_nodes",
    "trapezoid_periodic",
]

INTERVAL = "interval"  # [-1, 1]
PERIOD = "period"  # [-pi, pi)


class QuadratureEvaluationError(FloatingPointError):
    """The integrand returned a non-finite value at some node."""

    def __init__(self, index: int, node: float, value):
        super().__init__(f"non-finite integrand value {value!r} at node {index} (t={node!r})")
        self.index = index
        self.node = node


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class QuadRule:
    nodes: np.ndarray
    weights: np.ndarray
    domain: str

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(self.nodes))
        object.__setattr__(self, "weights", _frozen(self.weights))
        if self.domain not in (INTERVAL, PERIOD):
            raise ValueError(f"unknown rule domain {self.domain!r}")
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if np.any(np.diff(self.nodes) <= 0):
            raise ValueError("nodes must be strictly increasing")

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class VariableMap:
    """A change of variable x(t) that fixes the integration domain.

    ``forward`` and ``derivative`` take and return float arrays (the sinh-type
    maps also accept complex t, to check x(t*) = A + iB); calling the map
    itself is the real-only ``forward``.  ``prediction`` is the convergence rate
    of the rule applied after the map.
    """

    name: str
    forward: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    prediction: ConvergencePrediction
    domain: str
    params: dict = field(default_factory=dict, compare=False)

    def __call__(self, t):
        return self.forward(np.asarray(t, dtype=float))


def identity_map(domain: str, prediction: ConvergencePrediction) -> VariableMap:
    return VariableMap("identity", lambda t: np.asarray(t, dtype=float),
                       lambda t: np.ones_like(np.asarray(t, dtype=float)),
                       prediction, domain)


def _legendre_newton(n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (4 * k - 1) / (4 * n + 2))
    converged = False
    for _ in range(100):
        p0, p1 = np.ones_like(x), x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if converged:
            break
        # one extra step after the correction reaches roundoff size
        converged = np.max(np.abs(dx)) < 1e-14
    # weights from the derivative at the converged nodes
    p0, p1 = np.ones_like(x), x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x, w = x[::-1], w[::-1]
    # enforce exact symmetry about 0
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return x, w


@lru_cache(maxsize=None)
def _gauss_legendre_cached(n: int) -> QuadRule:
    if n == 1:
        return QuadRule([0.0], [2.0], INTERVAL)
    x, w = _legendre_newton(n)
    return QuadRule(x, w, INTERVAL)


def gauss_legendre(n: int) -> QuadRule:
    """n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n)."""
    if int(n) != n or n < 1:
        raise ValueError(f"number of nodes must be a positive integer, got {n!r}")
    return _gauss_legendre_cached(int(n))


@lru_cache(maxsize=None)
def _trapezoid_cached(n: int) -> QuadRule:
    j = np.arange(n)
    return QuadRule(-math.pi + 2 * math.pi * j / n, np.full(n, 2 * math.pi / n), PERIOD)


def trapezoid_periodic(n: int) -> QuadRule:
    """n-point trapezoid rule for one period, nodes at -pi + 2 pi j / n."""
    if int(n) != n or n < 1:
        raise ValueError(f"number of nodes must be a positive integer, got {n!r}")
    return _trapezoid_cached(int(n))


def _checked_values(f, x, nodes) -> np.ndarray:
    vals = np.asarray(f(x), dtype=float)
    bad = ~np.isfinite(vals)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise QuadratureEvaluationError(i, float(nodes[i]), vals[i])
    return vals


def apply(rule: QuadRule, f) -> float:
    """sum_j w_j f(x_j); ``f`` is called once on the whole node array."""
    vals = _checked_values(f, rule.nodes, rule.nodes)
    return float(np.dot(rule.weights, vals))


def mapped_nodes(rule: QuadRule, vmap: VariableMap) -> tuple[np.ndarray, np.ndarray]:
    """Nodes x(t_j) and weights w_j x'(t_j) of ``rule`` transported through ``vmap``."""
    if vmap.domain != rule.domain:
        raise ValueError(f"map domain {vmap.domain!r} does not match rule domain {rule.domain!r}")
    t = rule.nodes
    return np.asarray(vmap.forward(t), dtype=float), rule.weights * vmap.derivative(t)


def apply_mapped(rule: QuadRule, vmap: VariableMap, f) -> float:
    """sum_j w_j f(x(t_j)) x'(t_j)."""
    if vmap.domain != rule.domain:
        raise ValueError(f"map domain {vmap.domain!r} does not match rule domain {rule.domain!r}")
    t = rule.nodes
    vals = _checked_values(f, np.asarray(vmap.forward(t), dtype=float), t)
    return float(np.dot(rule.weights, vals * vmap.derivative(t)))
