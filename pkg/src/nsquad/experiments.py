"""Experiment drivers shared by the command line and the acceptance tests.

Everything here returns plain rows (tuples) in a deterministic order; the CLI
only formats them.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .integrands import F_EPSILONS, GH_EPSILONS, make_integrand, reference_value
from .methods import FAMILIES, METHODS, integrate, prediction, singularity_for
from .rates import fit_slope

__all__ = [
    "DEFAULT_SWEEP_N",
    "SweepConfig",
    "SweepRow",
    "convergence_grid",
    "empirical_rate",
    "family_of",
    "rate_rows",
    "run_sweep",
]

# multiples of 7 up to 147
DEFAULT_SWEEP_N = tuple(range(7, 148, 7))

FIT_ONSET = 1e-3  # skip the transient above this relative error
FIT_CUTOFF = 1e-13  # and stop at the rounding plateau


def family_of(integrand_id: str) -> str:
    fam = {"f": "periodic", "g": "aperiodic_complex", "h": "aperiodic_real"}.get(integrand_id[:1])
    if fam is None:
        raise ValueError(f"unknown integrand id {integrand_id!r}")
    return fam


def default_epsilons(integrand_id: str) -> tuple[float, ...]:
    return F_EPSILONS if integrand_id.startswith("f") else GH_EPSILONS


# --- rates -------------------------------------------------------------------

def rate_rows(family: str, params: Sequence, methods: Sequence[str] | None = None,
              branch_cut: bool = True) -> list[tuple[str, str, float]]:
    """(method, param, predicted_rate) for every method and parameter.

    ``predicted_rate`` is the strip half-width lambda (periodic) or the ellipse
    parameter rho (aperiodic).  ``params`` are B values (periodic), A values
    (real) or (A, B) pairs (complex).
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    methods = tuple(methods) if methods else METHODS[family]
    rows = []
    for method in methods:
        for p in params:
            if family == "periodic":
                sing, label = singularity_for(family, B=float(p)), repr(float(p))
            elif family == "aperiodic_real":
                sing, label = singularity_for(family, A=float(p), branch_cut=branch_cut), repr(float(p))
            else:
                A, B = p
                sing, label = singularity_for(family, A=float(A), B=float(B)), f"{float(A)!r}{'+' if B >= 0 else ''}{float(B)!r}i"
            rows.append((method, label, prediction(family, method, sing).value))
    return rows


# --- sweeps ------------------------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    ids: tuple[str, ...]
    epsilons: tuple[float, ...] | None = None  # None: the standard grid for each id
    methods: tuple[str, ...] | None = None  # None: every method of the family
    ns: tuple[int, ...] = DEFAULT_SWEEP_N

    def __post_init__(self):
        if not self.ids:
            raise ValueError("no integrand ids given")
        ns = tuple(int(n) for n in self.ns)
        if not ns or ns[0] < 1 or any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("n values must be positive and strictly increasing")
        object.__setattr__(self, "ns", ns)
        for i in self.ids:
            fam = family_of(i)
            for m in self.methods or ():
                if m not in METHODS[fam]:
                    raise ValueError(f"method {m!r} is not valid for {i} ({fam}); "
                                     f"expected one of {', '.join(METHODS[fam])}")

    def tasks(self) -> list[tuple[str, float, str]]:
        out = []
        for i in sorted(self.ids):
            eps_list = self.epsilons if self.epsilons is not None else default_epsilons(i)
            for eps in sorted(eps_list):
                for m in sorted(self.methods or METHODS[family_of(i)]):
                    out.append((i, float(eps), m))
        return out


@dataclass(frozen=True)
class SweepRow:
    id: str
    epsilon: float
    method: str
    n: int
    rel_error: float
    predicted_per_node_decay: float
    abs_error: float


def convergence_grid(integrand_id: str, epsilon: float, method: str,
                     ns: Sequence[int]) -> list[SweepRow]:
    ti = make_integrand(integrand_id, epsilon)
    ref = reference_value(ti)
    fam = ti.family
    decay = prediction(fam, method, ti.primary_singularity).per_node_decay
    rows = []
    for n in ns:
        val = integrate(fam, method, ti, ti.primary_singularity, int(n))
        err = abs(val - ref)
        rows.append(SweepRow(integrand_id, float(epsilon), method, int(n), err / abs(ref), decay, err))
    return rows


def _task(args):
    i, eps, m, ns = args
    return convergence_grid(i, eps, m, ns)


def run_sweep(config: SweepConfig, workers: int = 1) -> list[SweepRow]:
    """Rows ordered by (id, epsilon, method, n), independent of ``workers``."""
    tasks = [(i, e, m, config.ns) for i, e, m in config.tasks()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_task, tasks))
    else:
        chunks = [_task(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


# --- slopes ------------------------------------------------------------------

def slope_ns(rate: float, span: float = 40.0, points: int = 80) -> list[int]:
    """n values covering errors down to about exp(-span) at the predicted rate."""
    n_max = max(24, int(math.ceil(span / rate)))
    if n_max <= points:
        return list(range(2, n_max + 1))
    return sorted({int(v) for v in np.geomspace(2, n_max, points)})


def empirical_rate(integrand_id: str, epsilon: float, method: str,
                   ns: Sequence[int] | None = None, onset: float = FIT_ONSET,
                   cutoff: float = FIT_CUTOFF) -> tuple[float, float]:
    """(predicted, fitted) decay rate per node, -log of the per-node error factor.

    The fit uses errors between ``onset`` and the rounding ``cutoff``.
    """
    ti = make_integrand(integrand_id, epsilon)
    pred = prediction(ti.family, method, ti.primary_singularity)
    ns = list(ns) if ns is not None else slope_ns(pred.rate)
    rows = convergence_grid(integrand_id, epsilon, method, ns)
    fitted = fit_slope([(r.n, r.rel_error) for r in rows], cutoff=cutoff, onset=onset)
    return pred.rate, fitted
