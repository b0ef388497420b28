"""The nearly singular test integrands f1-f4, g1-g4, h1-h4 and their reference values.

f_i are 2*pi-periodic with branch points at 2*pi*k +- i*eps, g_i live on
[-1, 1] with singularities at 2/3 +- i*eps, and h_i on [-1, 1] with a real
singularity (and branch cut) at 1 + eps.

Reference values are persisted in ``data/references.txt``, one record per line::

    id epsilon reference_value oracle1 oracle2

Oracle 1 is an accelerated double-precision rule at high n (ISM trapezoid,
sinh-mapped or quadratic-mapped Gauss-Legendre).  Oracle 2 is mpmath
tanh-sinh quadrature at 30 digits on a grid graded geometrically toward the
singularity.  The stored reference is oracle 2.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

import numpy as np

from .aperiodic_complex import ComplexSingularity, sinh_map
from .aperiodic_real import RealSingularity, quadratic_map
from .periodic import PeriodicSingularity, ism_map
from .rules import apply_mapped, gauss_legendre, trapezoid_periodic

__all__ = [
    "ALL_IDS",
    "F_EPSILONS",
    "GH_EPSILONS",
    "ReferenceFailure",
    "ReferenceMissing",
    "TestIntegrand",
    "default_store_path",
    "generate_reference_store",
    "load_reference_store",
    "make_integrand",
    "oracle_accelerated",
    "oracle_mpmath",
    "reference_value",
]

F_EPSILONS = (1e-1, 1e-2, 1e-3)
GH_EPSILONS = (1 / 30, 1 / 300, 1 / 3000)
ALL_IDS = tuple(f"{fam}{i}" for fam in "fgh" for i in range(1, 5))

FAMILY = {"f": "periodic", "g": "aperiodic_complex", "h": "aperiodic_real"}
GENERATE_COMMAND = "nsquad references"

ORACLE_TOLERANCE = 1e-12


class ReferenceFailure(RuntimeError):
    """The two reference oracles disagree."""


class ReferenceMissing(LookupError):
    """No stored reference for this (id, epsilon)."""


@dataclass(frozen=True)
class TestIntegrand:
    __test__ = False  # not a pytest class

    id: str
    epsilon: float
    eval: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    family: str
    primary_singularity: object
    extra_singularities: tuple = ()

    def __call__(self, x):
        return self.eval(np.asarray(x, dtype=float))

    @property
    def domain_length(self) -> float:
        return 2 * math.pi if self.family == "periodic" else 2.0

    @property
    def reference(self) -> float:
        return reference_value(self)


# Closed forms are rewritten without cancellation:
#   cosh(e) - cos(x) = 2 sinh(e/2)^2 + 2 sin(x/2)^2
#   cosh(x - 2/3) - cos(e) = 2 sinh((x - 2/3)/2)^2 + 2 sin(e/2)^2

def _fq(x, eps):
    return 2.0 * np.sinh(0.5 * eps) ** 2 + 2.0 * np.sin(0.5 * x) ** 2


def _gq(x, eps):
    return 2.0 * np.sinh(0.5 * (x - 2.0 / 3.0)) ** 2 + 2.0 * math.sin(0.5 * eps) ** 2


def _hq(x, eps):
    return (1.0 - x) + eps


def _far(x):
    # sqrt(cosh(x + 2/3) - cos 1), singular at -2/3 +- i
    return np.sqrt(np.cosh(x + 2.0 / 3.0) - math.cos(1.0))


def _make_eval(fam: str, k: int, eps: float):
    if fam == "f":
        def q(x):
            return _fq(x, eps)
        osc = lambda x: np.cos(6.0 * x) ** 2  # noqa: E731
        far = lambda x: np.sqrt(math.cosh(1.0) + np.cos(x))  # noqa: E731
        logsign = 1.0
    else:
        q = (lambda x: _gq(x, eps)) if fam == "g" else (lambda x: _hq(x, eps))
        osc = lambda x: np.cos(6.0 * math.pi * x) ** 2  # noqa: E731
        far = _far
        logsign = -1.0
    if k == 1:
        return lambda x: logsign * np.log(q(x)) + q(x) ** 0.3
    if k == 2:
        return lambda x: 1.0 / np.sqrt(q(x))
    if k == 3:
        return lambda x: osc(x) / np.sqrt(q(x))
    return lambda x: far(x) / np.sqrt(q(x))


def make_integrand(id: str, epsilon: float) -> TestIntegrand:
    """Build test integrand ``id`` (f1..f4, g1..g4, h1..h4) with parameter ``epsilon``."""
    if id not in ALL_IDS:
        raise ValueError(f"unknown integrand id {id!r}; expected one of {', '.join(ALL_IDS)}")
    eps = float(epsilon)
    if not eps > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    fam, k = id[0], int(id[1])
    extra: tuple = ()
    if fam == "f":
        sing = PeriodicSingularity(eps)
        if k == 4:
            extra = (complex(math.pi, 1.0), complex(math.pi, -1.0))
    elif fam == "g":
        sing = ComplexSingularity(2.0 / 3.0, eps)
        if k == 4:
            extra = (complex(-2 / 3, 1.0), complex(-2 / 3, -1.0))
    else:
        sing = RealSingularity(1.0 + eps, branch_cut=True)
        if k == 4:
            extra = (complex(-2 / 3, 1.0), complex(-2 / 3, -1.0))
    return TestIntegrand(id, eps, _make_eval(fam, k, eps), FAMILY[fam], sing, extra)


# --- oracles -----------------------------------------------------------------

def oracle_accelerated(ti: TestIntegrand, n: int = 400) -> float:
    """Double-precision oracle: the recommended map for the family at high n."""
    if ti.family == "periodic":
        return apply_mapped(trapezoid_periodic(n), ism_map(ti.primary_singularity), ti)
    if ti.family == "aperiodic_complex":
        return apply_mapped(gauss_legendre(n), sinh_map(ti.primary_singularity), ti)
    return apply_mapped(gauss_legendre(n), quadratic_map(ti.primary_singularity), ti)


def _mp_integrand(ti: TestIntegrand):
    import mpmath as mp

    eps = mp.mpf(ti.epsilon)
    fam, k = ti.id[0], int(ti.id[1])
    two3 = mp.mpf(2) / 3
    if fam == "f":
        q = lambda x: 2 * mp.sinh(eps / 2) ** 2 + 2 * mp.sin(x / 2) ** 2  # noqa: E731
        osc = lambda x: mp.cos(6 * x) ** 2  # noqa: E731
        far = lambda x: mp.sqrt(mp.cosh(1) + mp.cos(x))  # noqa: E731
        sgn = 1
    else:
        if fam == "g":
            q = lambda x: 2 * mp.sinh((x - two3) / 2) ** 2 + 2 * mp.sin(eps / 2) ** 2  # noqa: E731
        else:
            q = lambda x: (1 - x) + eps  # noqa: E731
        osc = lambda x: mp.cos(6 * mp.pi * x) ** 2  # noqa: E731
        far = lambda x: mp.sqrt(mp.cosh(x + two3) - mp.cos(1))  # noqa: E731
        sgn = -1
    if k == 1:
        return lambda x: sgn * mp.log(q(x)) + q(x) ** mp.mpf("0.3")
    if k == 2:
        return lambda x: 1 / mp.sqrt(q(x))
    if k == 3:
        return lambda x: osc(x) / mp.sqrt(q(x))
    return lambda x: far(x) / mp.sqrt(q(x))


def _graded_points(lo, hi, center, eps, inside=True):
    import mpmath as mp

    pts = {mp.mpf(lo), mp.mpf(hi)}
    if inside:
        pts.add(mp.mpf(center))
    d = eps
    while d < (hi - lo):
        for p in (center - d, center + d):
            if lo < p < hi:
                pts.add(mp.mpf(p))
        d *= 3
    return sorted(pts)


def oracle_mpmath(ti: TestIntegrand, dps: int = 30) -> float:
    """tanh-sinh quadrature in extended precision with breakpoints graded toward the singularity."""
    import mpmath as mp

    with mp.workdps(dps):
        f = _mp_integrand(ti)
        eps = ti.epsilon
        if ti.family == "periodic":
            pts = _graded_points(-mp.pi, mp.pi, 0.0, eps)
        elif ti.family == "aperiodic_complex":
            pts = _graded_points(-1.0, 1.0, 2.0 / 3.0, eps)
        else:
            pts = _graded_points(-1.0, 1.0, 1.0 + eps, eps, inside=False)
        if ti.id[1] == "3":  # resolve the oscillation of the cos^2 factor
            extra = np.linspace(float(pts[0]), float(pts[-1]), 25)[1:-1]
            pts = sorted(set(pts) | {mp.mpf(float(p)) for p in extra})
        val = mp.quad(f, pts, method="tanh-sinh")
        return float(val)


# --- persisted store ---------------------------------------------------------

_store_lock = threading.Lock()
_store_cache: dict[Path, dict] = {}


def default_store_path() -> Path:
    return Path(str(resources.files("nsquad").joinpath("data/references.txt")))


def load_reference_store(path: Path | None = None) -> dict[tuple[str, float], tuple[float, float, float]]:
    """Map (id, epsilon) -> (reference, oracle1, oracle2)."""
    path = Path(path) if path is not None else default_store_path()
    with _store_lock:
        if path in _store_cache:
            return _store_cache[path]
        if not path.exists():
            raise ReferenceMissing(
                f"reference store {path} not found; generate it with `{GENERATE_COMMAND}`")
        table = {}
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            id_, eps, ref, o1, o2 = line.split()
            table[(id_, float(eps))] = (float(ref), float(o1), float(o2))
        _store_cache[path] = table
        return table


def compute_reference(ti: TestIntegrand) -> tuple[float, float, float]:
    """Run both oracles; raise ReferenceFailure if they disagree beyond 1e-12 relative."""
    o1 = oracle_accelerated(ti)
    o2 = oracle_mpmath(ti)
    if abs(o1 - o2) > ORACLE_TOLERANCE * abs(o2):
        raise ReferenceFailure(
            f"{ti.id}(eps={ti.epsilon!r}): oracles disagree, {o1!r} vs {o2!r}")
    return o2, o1, o2


def reference_value(ti: TestIntegrand, path: Path | None = None, compute_missing: bool = False) -> float:
    try:
        table = load_reference_store(path)
        return table[(ti.id, ti.epsilon)][0]
    except (ReferenceMissing, KeyError):
        if compute_missing:
            return compute_reference(ti)[0]
        raise ReferenceMissing(
            f"no reference value for {ti.id} at epsilon={ti.epsilon!r}; "
            f"generate the store with `{GENERATE_COMMAND}`") from None


def generate_reference_store(path: Path | None = None, ids=ALL_IDS, progress=None) -> Path:
    """Compute every (id, epsilon) on the standard epsilon grids and write the store."""
    path = Path(path) if path is not None else default_store_path()
    lines = ["# id epsilon reference_value oracle1 oracle2"]
    for id_ in ids:
        for eps in (F_EPSILONS if id_[0] == "f" else GH_EPSILONS):
            ti = make_integrand(id_, eps)
            ref, o1, o2 = compute_reference(ti)
            lines.append(f"{id_} {eps:.17g} {ref:.17g} {o1:.17g} {o2:.17g}")
            if progress:
                progress(lines[-1])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    with _store_lock:
        _store_cache.pop(path, None)
    return path
