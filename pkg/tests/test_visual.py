import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hypgroup.cayley import build_ball
from hypgroup.visual import (R_GRID, VisualParams, gromov_domination_fit, holder_fit,
                             minimal_A, qie_gromov_bound_check, rho, sig9)

from conftest import SHIPPED, endo, model

# frozen from tests/oracles.py (scripts/freeze_oracles.py)
ORACLE_MIN_A_DOUBLING_R4 = Fraction(0)  # lambda = 2
ORACLE_MIN_A_AB_BA_R4 = Fraction(0)
ORACLE_MIN_GAP_DOUBLING_R4 = Fraction(0)  # min (u phi|v phi) - (u|v)


def test_rho_examples():
    m = model("F2")
    p = VisualParams()
    assert rho(p, m.parse("ab"), m.parse("ab"), m) == 0
    assert rho(p, m.parse("a"), m.parse("b"), m) == 1
    assert rho(p, m.parse("ab"), m.parse("aB"), m) == pytest.approx(math.exp(-1))
    assert sig9(rho(p, m.parse("ab"), m.parse("aB"), m)) == 0.367879441
    assert rho(VisualParams(gamma=0.5), m.parse("ab"), m.parse("aB"), m) == pytest.approx(math.exp(-0.5))


def test_params_validation():
    with pytest.raises(ValueError):
        VisualParams(gamma=0)
    with pytest.raises(ValueError):
        VisualParams(T=0.5)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_rho_properties(data):
    m = model(data.draw(st.sampled_from(["F2", "Zx2", "Dinf"])))
    words = build_ball(m, 3).words
    g, h = data.draw(st.sampled_from(words)), data.draw(st.sampled_from(words))
    p = VisualParams(gamma=data.draw(st.sampled_from([0.25, 1.0, 2.0])))
    v = rho(p, g, h, m)
    assert v == rho(p, h, g, m)
    assert 0 <= v <= 1
    assert (v == 0) == (g == h)


@pytest.mark.parametrize("group", ["F2", "Zx2", "Dinf", "Z2"])
def test_identity_fits(group):
    phi = endo(group, "identity")
    h = holder_fit(phi, 6)
    assert (h.K, h.r, h.feasible) == (1, 1, True)
    d = gromov_domination_fit(phi, 6)
    assert (d.P, d.Q, d.feasible) == (1, 0, True)
    assert qie_gromov_bound_check(phi, 1, 0, 6).holds


def test_doubling_fits():
    phi = endo("F2", "doubling")
    h = holder_fit(phi, 6)
    assert h.feasible and h.K == 1 and h.r >= 1
    # (u phi|v phi) >= (u|v) on every pair, so (K, r) = (1, 1) and (P, Q) = (1, 0) hold as well
    assert ORACLE_MIN_GAP_DOUBLING_R4 >= 0
    d = gromov_domination_fit(phi, 6)
    assert d.feasible and d.Q == 0 and d.P <= 1
    assert minimal_A(phi, 2, 4) == ORACLE_MIN_A_DOUBLING_R4
    assert minimal_A(endo("F2", "ab_ba"), 2, 4) == ORACLE_MIN_A_AB_BA_R4
    assert qie_gromov_bound_check(phi, 2, ORACLE_MIN_A_DOUBLING_R4, 6).holds
    assert not qie_gromov_bound_check(phi, 1, 0, 6).holds


def test_collapse_fits_infeasible():
    phi = endo("F3", "collapse_c")
    h = holder_fit(phi, 7)
    assert not h.feasible and h.violation_witness is not None
    d = gromov_domination_fit(phi, 7)
    assert not d.feasible
    u, v = d.witness
    assert min(len(u), len(v)) > 0
    chk = qie_gromov_bound_check(phi, 8, 3, 7)
    assert not chk.holds and chk.worst[2] > 0
    # killing c makes the required A grow with the radius
    assert [minimal_A(phi, 2, r) for r in (4, 5, 6)] == sorted({minimal_A(phi, 2, r) for r in (4, 5, 6)})


def test_minimal_A_tight():
    phi = endo("F2", "ab_ba")
    A = minimal_A(phi, 2, 5)
    assert qie_gromov_bound_check(phi, 2, A, 5).holds
    if A > 0:
        assert not qie_gromov_bound_check(phi, 2, A - Fraction(1, 2), 5).holds


@pytest.mark.parametrize("group,name", SHIPPED)
def test_bound_check_monotone_in_radius(group, name):
    phi = endo(group, name)
    A = minimal_A(phi, 2, 5)
    for r in range(1, 5):
        assert qie_gromov_bound_check(phi, 2, A, r).holds


def test_non_identity_basepoint_route():
    phi = endo("Zx2", "identity")
    h = holder_fit(phi, 4, VisualParams(basepoint=phi.model.parse("x")))
    assert (h.K, h.r) == (1, 1)


def test_fit_json():
    phi = endo("F3", "collapse_c")
    doc = holder_fit(phi, 4).to_json(phi.model)
    assert doc["schema"] == "hypgroup.scan/1" and doc["quantity"] == "holder"
    assert doc["grid"]["r"] == [sig9(r) for r in R_GRID]
    doc = gromov_domination_fit(phi, 4).to_json(phi.model)
    assert isinstance(doc["witness"][0], str)
