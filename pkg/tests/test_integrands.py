import math
import random

import numpy as np
import pytest

from nsquad import integrands
from nsquad.integrands import (ALL_IDS, F_EPSILONS, GH_EPSILONS, ReferenceMissing, make_integrand,
                               reference_value)
from nsquad.methods import integrate
from nsquad.rules import apply, gauss_legendre, trapezoid_periodic

GRID = [(i, e) for i in ALL_IDS for e in (F_EPSILONS if i[0] == "f" else GH_EPSILONS)]


def test_point_values():
    for eps in GH_EPSILONS:
        assert make_integrand("h2", eps)(1.0) == pytest.approx(1 / math.sqrt(eps), rel=1e-14)
    f2 = make_integrand("f2", 0.1)
    assert f2(0.0) == pytest.approx(1 / math.sqrt(math.cosh(0.1) - 1), rel=1e-13)
    g2 = make_integrand("g2", 1 / 30)
    assert g2(2 / 3) == pytest.approx(1 / math.sqrt(1 - math.cos(1 / 30)), rel=1e-13)


def test_unknown_id_and_bad_epsilon():
    with pytest.raises(ValueError):
        make_integrand("q1", 0.1)
    with pytest.raises(ValueError):
        make_integrand("f1", 0.0)


def test_singularity_metadata():
    assert make_integrand("f4", 0.1).extra_singularities == (complex(math.pi, 1), complex(math.pi, -1))
    assert make_integrand("g1", 1 / 30).primary_singularity.point == complex(2 / 3, 1 / 30)
    assert make_integrand("h3", 1 / 300).primary_singularity.A == pytest.approx(1 + 1 / 300)


@pytest.mark.parametrize("eps", GH_EPSILONS)
def test_h2_closed_form(eps):
    exact = 2 * (math.sqrt(2 + eps) - math.sqrt(eps))
    assert reference_value(make_integrand("h2", eps)) == pytest.approx(exact, rel=1e-14)


def test_store_complete_and_oracles_agree():
    table = integrands.load_reference_store()
    for key in GRID:
        ref, o1, o2 = table[key]
        assert abs(o1 - o2) <= 1e-12 * abs(o2), key
        assert ref == o2
    assert abs(table[("f2", 0.1)][1] - table[("f2", 0.1)][2]) <= 1e-13 * table[("f2", 0.1)][2]


def test_revalidate_random_entries():
    # two stored entries recomputed with both oracles on every run
    for id_, eps in random.sample(GRID, 2):
        ti = make_integrand(id_, eps)
        ref, o1, o2 = integrands.compute_reference(ti)
        assert ref == pytest.approx(reference_value(ti), rel=1e-13), (id_, eps)


def test_constant_reference():
    assert apply(trapezoid_periodic(5), np.ones_like) == pytest.approx(2 * math.pi, abs=1e-15)


@pytest.mark.parametrize("id_", ["f1", "f2", "f3", "f4"])
def test_even_symmetry(id_):
    ti = make_integrand(id_, 0.01)
    x = np.linspace(-3, 3, 101)
    np.testing.assert_allclose(ti(x), ti(-x), rtol=1e-14)
    reflected = integrate("periodic", "ism", lambda x: ti(-x), ti.primary_singularity, 200)
    assert reflected == pytest.approx(ti.reference, rel=1e-13)


INDEPENDENT = {"periodic": ("ism", "jam"), "aperiodic_complex": ("sinh", "jvh"),
               "aperiodic_real": ("quadratic", "elliptic")}


@pytest.mark.parametrize("id_,eps", GRID)
def test_method_independence(id_, eps):
    ti = make_integrand(id_, eps)
    for method in INDEPENDENT[ti.family]:
        val = integrate(ti.family, method, ti, ti.primary_singularity, 600)
        assert val == pytest.approx(ti.reference, rel=1e-13), method


def test_missing_store_message(tmp_path):
    with pytest.raises(ReferenceMissing, match="nsquad references"):
        reference_value(make_integrand("f1", 0.1), path=tmp_path / "absent.txt")


def test_missing_entry_message(tmp_path):
    p = tmp_path / "partial.txt"
    p.write_text("# id epsilon reference_value oracle1 oracle2\n")
    with pytest.raises(ReferenceMissing, match="nsquad references"):
        reference_value(make_integrand("f1", 0.1), path=p)


def test_oracle_disagreement_raises(monkeypatch):
    monkeypatch.setattr(integrands, "oracle_accelerated", lambda ti: 1.0)
    with pytest.raises(integrands.ReferenceFailure):
        integrands.compute_reference(make_integrand("h2", 1 / 30))
