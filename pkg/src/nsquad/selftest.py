"""Quick invariant checks run by ``nsquad selftest``.

Each check returns None on success or a short failure message.  Checks look
functions up through their modules at call time, so a patched implementation
is what gets tested.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from . import aperiodic_complex as apc
from . import aperiodic_real as apr
from . import integrands, periodic, rules, special, stokes
from .methods import METHODS, build_map, singularity_for

__all__ = ["CHECKS", "run_checks"]


def _fail(cond: bool, msg: str):
    return None if cond else msg


def check_elliptic_identities():
    rng = np.random.default_rng(12345)
    u = rng.uniform(-20, 20, 1000)
    m = rng.uniform(0, 0.999, 1000)
    e1 = e2 = 0.0
    for ui, mi in zip(u, m):
        sn, cn, dn = special.jacobi_sn_cn_dn(ui, mi)
        e1 = max(e1, abs(sn * sn + cn * cn - 1))
        e2 = max(e2, abs(dn * dn - (1 - mi * sn * sn)))
    return _fail(max(e1, e2) < 1e-12, f"Jacobi identities violated by {max(e1, e2):.2e}")


def check_elliptic_K():
    k = special.complete_elliptic_K(0.5)
    return _fail(abs(k - 1.85407467730137) < 1e-13, f"K(0.5) = {k!r}")


def check_rule_weights():
    for n in (1, 2, 7, 64, 301):
        g = rules.gauss_legendre(n)
        if abs(g.weights.sum() - 2) > 1e-13:
            return f"Gauss-Legendre n={n} weights sum to {g.weights.sum()!r}"
        t = rules.trapezoid_periodic(n)
        if abs(t.weights.sum() - 2 * math.pi) > 1e-13:
            return f"trapezoid n={n} weights sum to {t.weights.sum()!r}"
    return None


def matches_displayed(value: float, shown: float, decimals: int) -> bool:
    """Agreement to the displayed digits: within one unit of the last shown decimal.

    Quoted values mix rounding and truncation, so half a unit is too strict.
    """
    return abs(value - shown) < 10.0**-decimals


def check_periodic_rates():
    s = periodic.PeriodicSingularity(0.3)
    got = {name: f(s).prediction.value
           for name, f in (("jam", periodic.jam_map), ("bcm", periodic.bcm_map), ("ism", periodic.ism_map))}
    want = {"jam": (1.5, 1), "bcm": (0.81, 2), "ism": (1.46, 2)}
    ok = all(matches_displayed(got[k], *want[k]) for k in want)
    return _fail(ok, f"periodic rates at B=0.3: {got}, expected {want}")


def check_real_rates():
    s = apr.RealSingularity(4 / 3)
    got = [apr.real_gl_identity_map(s).prediction.value,
           apr.quadratic_map(s).prediction.value,
           apr.exponential_map(s).prediction.value,
           apr.real_elliptic_map(s).prediction.value]
    want = [2.21, 4.19, 6.61, 8.38]
    ok = all(matches_displayed(g, w, 2) for g, w in zip(got, want))
    return _fail(ok, f"real-singularity rates at A=4/3: {got}, expected {want}")


def check_map_endpoints():
    cases = {
        "periodic": singularity_for("periodic", A=0.4, B=0.05),
        "aperiodic_complex": singularity_for("aperiodic_complex", A=0.3, B=0.05),
        "aperiodic_real": singularity_for("aperiodic_real", A=-1.1),
    }
    for fam, sing in cases.items():
        for method in METHODS[fam]:
            vmap = build_map(fam, method, sing)
            if vmap is None:
                continue
            if fam == "periodic":
                ends = np.array([-math.pi, math.pi])
                x = vmap(ends)
                ok = abs((x[1] - x[0]) - 2 * math.pi) < 1e-12
            else:
                x = vmap(np.array([-1.0, 1.0]))
                ok = np.allclose(x, [-1.0, 1.0], atol=1e-12)
            if not ok:
                return f"{fam}/{method}: endpoints map to {x}"
            t = np.linspace(-0.999, 0.999, 401) * (math.pi if fam == "periodic" else 1.0)
            if np.any(np.diff(vmap(t)) <= 0):
                return f"{fam}/{method}: map is not increasing"
    return None


def check_split_crossover():
    from scipy.optimize import brentq

    b = brentq(lambda B: math.log(periodic.periodic_split_prediction(B).value) - B, 0.5, 1.5)
    return _fail(abs(b - 0.95) <= 0.02, f"split/trapezoid crossover at B={b:.4f}")


def check_sinh_preimage():
    s = apc.ComplexSingularity(2 / 3, 1 / 30)
    t_star = apc.sinh_map(s).params["t_star"]
    a1, a2 = math.asinh((1 - s.A) / s.B), math.asinh((1 + s.A) / s.B)
    x = s.A + s.B * np.sinh(0.5 * (a1 - a2) + 0.5 * (a1 + a2) * t_star)
    return _fail(abs(x - s.point) < 1e-10, f"sinh map sends t* to {x}, not {s.point}")


def check_reference_store():
    try:
        table = integrands.load_reference_store()
    except integrands.ReferenceMissing as exc:
        return str(exc)
    missing = [(i, e) for i in integrands.ALL_IDS for e in
               (integrands.F_EPSILONS if i[0] == "f" else integrands.GH_EPSILONS)
               if (i, e) not in table]
    return _fail(not missing, f"reference store lacks {missing}; run `{integrands.GENERATE_COMMAND}`")


def check_fiber_frame():
    s = np.linspace(0, 2 * math.pi, 1000)
    T, N, B = stokes.frame(s)
    err = max(np.abs(np.sum(T * N, -1)).max(), np.abs(np.sum(T * B, -1)).max(),
              np.abs(np.sum(N * B, -1)).max(), np.abs(np.linalg.norm(N, axis=-1) - 1).max())
    J = stokes.jacobian(s, np.linspace(0, 7, 1000))
    return _fail(err < 1e-12 and np.all(J > 0), f"fiber frame error {err:.2e}, min J {J.min():.3e}")


CHECKS: dict[str, Callable[[], str | None]] = {
    "elliptic identities": check_elliptic_identities,
    "elliptic K": check_elliptic_K,
    "rule weights": check_rule_weights,
    "periodic rate table": check_periodic_rates,
    "real rate table": check_real_rates,
    "map endpoints and monotonicity": check_map_endpoints,
    "split crossover": check_split_crossover,
    "sinh map preimage": check_sinh_preimage,
    "reference store": check_reference_store,
    "fiber frame": check_fiber_frame,
}


def run_checks() -> list[tuple[str, str | None]]:
    out = []
    for name, fn in CHECKS.items():
        try:
            msg = fn()
        except Exception as exc:  # a crash is a failure, reported like one
            msg = f"{type(exc).__name__}: {exc}"
        out.append((name, msg))
    return out
