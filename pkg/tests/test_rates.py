import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from nsquad.experiments import convergence_grid
from nsquad.rates import (ConvergencePrediction, ConvergenceRecord, DegenerateSingularityError,
                          InsufficientDataError, decay_bound, fit_slope, rho_from_point)


def test_rho_examples():
    assert rho_from_point(4 / 3) == pytest.approx((4 + math.sqrt(7)) / 3, rel=1e-15)
    assert rho_from_point(1j) == pytest.approx(1 + math.sqrt(2), rel=1e-15)
    for s in (1e-3, 0.5, 3.0):
        assert rho_from_point(math.cosh(s)) == pytest.approx(math.exp(s), rel=1e-12)


@pytest.mark.parametrize("z", [0.0, 0.5, -1.0, 1.0, 1 + 1e-15])
def test_rho_degenerate(z):
    with pytest.raises(DegenerateSingularityError):
        rho_from_point(z)


@given(st.floats(-5, 5), st.floats(1e-3, 5))
def test_rho_symmetries(a, b):
    z = complex(a, b)
    r = rho_from_point(z)
    assert rho_from_point(z.conjugate()) == r
    assert rho_from_point(-z) == r
    assert r > 1


@given(st.floats(1.01, 20.0), st.floats(0, 2 * math.pi))
def test_point_on_ellipse(rho, theta):
    z = 0.5 * (rho * cmath.exp(1j * theta) + cmath.exp(-1j * theta) / rho)
    a, b = (rho + 1 / rho) / 2, (rho - 1 / rho) / 2
    assert abs((z.real / a) ** 2 + (z.imag / b) ** 2 - 1) < 1e-12
    if abs(z.imag) > 1e-9 or abs(z.real) > 1 + 1e-9:
        assert rho_from_point(z) == pytest.approx(rho, rel=1e-9)


def test_decay_bound_examples():
    assert decay_bound(ConvergencePrediction.strip(0.1), 100) == pytest.approx(math.exp(-10), rel=1e-13)
    assert decay_bound(ConvergencePrediction.ellipse(2.0), 10) == pytest.approx(2.0**-20, rel=1e-15)
    assert decay_bound(ConvergencePrediction.ellipse(4.19, split=True), 20) == pytest.approx(4.19**-20, rel=1e-13)


def test_prediction_validation():
    with pytest.raises(ValueError):
        ConvergencePrediction.ellipse(0.9)
    with pytest.raises(ValueError):
        ConvergencePrediction.strip(-1.0)
    assert ConvergencePrediction.unbounded_ellipse().rate == math.inf


def test_fit_synthetic():
    recs = [ConvergenceRecord("x", n, 10 * math.exp(-0.5 * n), math.exp(-0.5 * n)) for n in range(2, 40)]
    assert fit_slope(recs) == pytest.approx(0.5, abs=1e-6)


def test_fit_with_plateau():
    pts = [(n, max(10 * math.exp(-0.5 * n), 1e-16)) for n in range(2, 120)]
    assert fit_slope(pts) == pytest.approx(0.5, abs=1e-3)


@given(st.floats(1e-3, 1e3))
def test_fit_scale_invariant(c):
    pts = [(n, math.exp(-0.3 * n) * (1 + 0.1 * math.sin(n))) for n in range(2, 60)]
    scaled = [(n, c * e) for n, e in pts]
    assert fit_slope(scaled, cutoff=0) == pytest.approx(fit_slope(pts, cutoff=0), rel=1e-9)


def test_fit_insufficient():
    with pytest.raises(InsufficientDataError):
        fit_slope([(1, 1e-1), (2, 1e-2), (3, 1e-14)])


def test_trapezoid_slope_on_f2():
    rows = convergence_grid("f2", 0.1, "trapezoid", list(range(10, 400, 10)))
    assert fit_slope([(r.n, r.rel_error) for r in rows]) == pytest.approx(0.1, rel=0.15)
