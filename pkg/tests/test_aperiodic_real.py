import math

import numpy as np
import pytest

from nsquad import integrands
from nsquad.aperiodic_real import (RealSingularity, exponential_map, quadratic_map,
                                   real_elliptic_map, real_elliptic_parameter, real_gl_identity_map,
                                   real_split_delta, real_split_integrate)
from nsquad.experiments import convergence_grid
from nsquad.rules import apply_mapped, gauss_legendre

MAPS = {"quadratic": quadratic_map, "exponential": exponential_map, "elliptic": real_elliptic_map}
AS = [1.01, 4 / 3, 2.0, 10.0, -1.01, -4 / 3, -2.0, -10.0]


def test_split_delta_values():
    d = (4 - math.sqrt(7)) / 3
    assert real_split_delta(RealSingularity(4 / 3)) == pytest.approx(d, rel=1e-14)
    assert real_split_delta(RealSingularity(-4 / 3)) == pytest.approx(-d, rel=1e-14)
    assert abs(d - 0.45142) < 5e-6
    assert 0 < real_split_delta(RealSingularity(1e3)) < 1e-3


@pytest.mark.parametrize("A", [1.0, 0.5, -1.0])
def test_argument_error(A):
    with pytest.raises(ValueError):
        RealSingularity(A)


def test_split_constant():
    assert real_split_integrate(np.ones_like, RealSingularity(1.2), 9) == pytest.approx(2.0, abs=1e-13)


def test_rate_table_A43():
    s = RealSingularity(4 / 3)
    got = [real_gl_identity_map(s), quadratic_map(s), exponential_map(s), real_elliptic_map(s)]
    for vm, want in zip(got, (2.21, 4.19, 6.61, 8.38)):
        assert abs(vm.prediction.value - want) < 0.01, vm.name  # one unit of the last shown digit


def test_quadratic_critical_point():
    s = RealSingularity(4 / 3)
    vm = quadratic_map(s)
    tc = vm.params["critical_t"]
    assert vm.derivative(tc) == pytest.approx(0, abs=1e-14)
    assert vm(tc) == pytest.approx(4 / 3, abs=1e-14)
    assert vm.prediction.value == pytest.approx(tc + math.sqrt(tc * tc - 1), rel=1e-14)


def test_exponential_has_no_real_preimage():
    vm = exponential_map(RealSingularity(4 / 3))
    t = np.linspace(-50, 50, 20001)
    assert np.all(np.abs(vm(np.clip(t, -1, 1)) - 4 / 3) > 1e-3)
    assert exponential_map(RealSingularity(4 / 3, branch_cut=False)).prediction.unbounded


@pytest.mark.parametrize("A", [1.01, 4 / 3, 2.0, 10.0])
def test_elliptic_parameter(A):
    m, mc = real_elliptic_parameter(A)
    assert 0 < m < 1 and m + mc == pytest.approx(1, abs=1e-15)


@pytest.mark.parametrize("name", MAPS)
@pytest.mark.parametrize("A", AS)
def test_maps_endpoints_monotone(name, A, rng):
    vm = MAPS[name](RealSingularity(A))
    np.testing.assert_allclose(vm(np.array([-1.0, 1.0])), [-1, 1], atol=1e-10)
    t = np.linspace(-1, 1, 4001)
    assert np.all(np.diff(vm(t)) > 0)
    tr = rng.uniform(-0.99, 0.99, 40)
    h = 1e-6
    fd = (vm(tr + h) - vm(tr - h)) / (2 * h)
    np.testing.assert_allclose(vm.derivative(tr), fd, rtol=1e-6, atol=1e-6)


@pytest.mark.parametrize("name", MAPS)
@pytest.mark.parametrize("A", [1.05, 4 / 3, 3.0])
def test_reflection(name, A):
    f = lambda x: 1 / np.sqrt(A + 0.02 - x) + x**3  # noqa: E731
    g = lambda x: f(-x)  # noqa: E731
    rule = gauss_legendre(40)
    a = apply_mapped(rule, MAPS[name](RealSingularity(-A)), g)
    b = apply_mapped(rule, MAPS[name](RealSingularity(A)), f)
    assert a == pytest.approx(b, abs=1e-12 * abs(b))


def test_rate_ordering_grid():
    for A in np.linspace(1.001, 10, 200):
        s = RealSingularity(float(A))
        r = [real_gl_identity_map(s), quadratic_map(s), exponential_map(s), real_elliptic_map(s)]
        v = [m.prediction.value for m in r]
        assert v[0] < v[1] < v[2] < v[3], (A, v)


@pytest.mark.parametrize("eps", integrands.GH_EPSILONS)
def test_h2_quadratic_before_elliptic(eps):
    def first(method):
        rows = convergence_grid("h2", eps, method, range(2, 300))
        return next(r.n for r in rows if r.rel_error < 1e-12)
    assert first("quadratic") < first("elliptic")
