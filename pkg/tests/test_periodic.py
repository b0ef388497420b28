import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nsquad import integrands
from nsquad.experiments import convergence_grid
from nsquad.periodic import (PeriodicSingularity, bcm_map, ism_map, ism_parameter, jam_map,
                             periodic_split_delta, periodic_split_integrate,
                             periodic_split_prediction)

MAPS = {"jam": jam_map, "bcm": bcm_map, "ism": ism_map}


def newton_cubic(B):
    d = (B * B * math.pi / 2) ** (1 / 3)
    for _ in range(100):
        d -= (2 * d**3 + 2 * B * B * d - B * B * math.pi) / (6 * d * d + 2 * B * B)
    return d


@pytest.mark.parametrize("B", [1e-4, 1e-2, 0.3, 1.0, 3.0])
def test_split_delta_cubic(B):
    d = periodic_split_delta(B)
    assert abs(2 * d**3 + 2 * B * B * d - B * B * math.pi) < 1e-13 * max(1, B * B)
    assert d == pytest.approx(newton_cubic(B), rel=1e-13)


def test_split_delta_small_B():
    B = 1e-6
    assert periodic_split_delta(B) / (B * B * math.pi / 2) ** (1 / 3) == pytest.approx(1, abs=1e-3)


@pytest.mark.parametrize("B", [0.0, -1.0])
def test_split_delta_argument_error(B):
    with pytest.raises(ValueError):
        periodic_split_delta(B)


@pytest.mark.parametrize("B", [1e-3, 0.3, 2.0])
@pytest.mark.parametrize("n", [8, 9])
def test_split_constant(B, n):
    assert periodic_split_integrate(np.ones_like, PeriodicSingularity(B), n) == pytest.approx(2 * math.pi, abs=1e-13)


def test_split_f2_error_scale():
    ti = integrands.make_integrand("f2", 0.1)
    rho = periodic_split_prediction(0.1).value
    err = abs(periodic_split_integrate(ti, ti.primary_singularity, 100) - ti.reference)
    assert err < 1e3 * rho**-100 + 1e-13 * abs(ti.reference)


def test_rate_table_B03():
    s = PeriodicSingularity(0.3)
    assert round(jam_map(s).prediction.value, 1) == 1.5
    b = bcm_map(s)
    assert b.params["a"] == pytest.approx(0.44315, abs=5e-6)
    assert b.prediction.value == pytest.approx(0.8139, abs=1e-4)  # one unit of the last shown digit
    assert ism_parameter(0.3) == pytest.approx(0.44220, abs=5e-6)
    assert ism_map(s).prediction.value == pytest.approx(1.456, abs=5e-4)


@pytest.mark.parametrize("name", MAPS)
@pytest.mark.parametrize("B", [1e-4, 1e-2, 0.3, 1.0])
def test_endpoints_and_monotone(name, B):
    vm = MAPS[name](PeriodicSingularity(B))
    x = vm(np.array([-math.pi, math.pi]))
    np.testing.assert_allclose(x, [-math.pi, math.pi], atol=1e-13)
    t = np.linspace(-math.pi, math.pi, 10001)
    assert np.all(vm.derivative(t) >= 0)
    assert np.all(np.diff(vm(t)) >= 0)


@pytest.mark.parametrize("name", MAPS)
@pytest.mark.parametrize("B", [1e-2, 0.3, 1.0])
def test_derivative_vs_finite_difference(name, B, rng):
    vm = MAPS[name](PeriodicSingularity(B, x0=0.7))
    t = rng.uniform(-math.pi, math.pi, 50)
    h = 1e-6
    fd = (vm(t + h) - vm(t - h)) / (2 * h)
    np.testing.assert_allclose(vm.derivative(t), fd, atol=1e-6, rtol=1e-6)


@pytest.mark.parametrize("name", MAPS)
@given(t=st.floats(-10, 10), B=st.floats(1e-3, 1.2), x0=st.floats(-3, 3))
def test_period_shift(name, t, B, x0):
    vm = MAPS[name](PeriodicSingularity(B, x0))
    assert vm(t + 2 * math.pi) - vm(t) == pytest.approx(2 * math.pi, abs=1e-11)


@pytest.mark.parametrize("name", MAPS)
def test_translation(name, rng):
    B, x0 = 0.05, 1.3
    base, moved = MAPS[name](PeriodicSingularity(B)), MAPS[name](PeriodicSingularity(B, x0))
    t = rng.uniform(-math.pi, math.pi, 40)
    np.testing.assert_allclose(moved(t), x0 + base(t - x0), atol=1e-12)
    np.testing.assert_allclose(moved.derivative(t), base.derivative(t - x0), atol=1e-12)
    assert moved.prediction == base.prediction


def test_bcm_matches_complex_formula(rng):
    for B in (1e-3, 0.1, 0.3, 1.0):
        vm = bcm_map(PeriodicSingularity(B))
        a = vm.params["a"]
        t = rng.uniform(-3.1, 3.1, 200)
        e = np.exp(1j * t)
        cx = np.real(-1j * np.log((e + a) / (1 + a * e)))
        np.testing.assert_allclose(vm(t), cx, atol=1e-13)


def test_ism_argument_error():
    with pytest.raises(ValueError):
        ism_map(PeriodicSingularity(-0.1))


def test_split_beats_trapezoid_below_crossover():
    for B in (0.1, 0.5, 0.9):
        assert math.log(periodic_split_prediction(B).value) > B
    assert math.log(periodic_split_prediction(1.0).value) < 1.0


RANK_NS = list(range(40, 201, 10))


def _errors(method):
    return np.array([r.rel_error for r in convergence_grid("f1", 0.01, method, RANK_NS)])


def test_ranking_ism_jam_best():
    ism, jam, bcm, split, trap = (_errors(m) for m in ("ism", "jam", "bcm", "split", "trapezoid"))
    assert np.all(ism <= bcm) and np.all(jam <= bcm)
    assert np.all(ism <= split) and np.all(jam <= split)
    assert np.all(split <= trap) and np.all(bcm <= trap)


def test_ranking_bcm_below_split():
    # stated ranking: error(BCM) <= error(split) for n >= 40 at B = 1e-2
    bcm, split = _errors("bcm"), _errors("split")
    assert np.all(bcm <= split), list(zip(RANK_NS, bcm, split))
