import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hypgroup.cayley import build_ball
from hypgroup.groups import BudgetExceeded
from hypgroup.hyperbolicity import (GromovContext, basepoint_shift_bound, estimate_delta,
                                    gromov_product, triangle_thinness)

from conftest import model

# frozen from tests/oracles.py (scripts/freeze_oracles.py)
ORACLE_DELTA_ZX2 = [1, 1, 1, 1, 1, 1, 1, 1]  # R = 1..8
ORACLE_DELTA_Z2 = [1, 2, 3, 4, 5, 6]  # R = 1..6
ORACLE_DELTA_DINF = [0, 0, 0, 0, 0, 0]


def test_gromov_examples():
    F2, Z = model("F2"), model("Zx2")
    ctx = GromovContext(F2)
    g, h = F2.parse("ab"), F2.parse("aB")
    assert gromov_product(ctx, g, h) == 1
    assert gromov_product(ctx, g, g) == len(g)
    zc = GromovContext(Z)
    assert gromov_product(zc, Z.parse("xx"), Z.parse("xxt")) == 2


def test_gromov_matches_oracle(oracle_groups):
    import oracles
    for name in ("Zx2", "Dinf"):
        m, G = model(name), oracle_groups[name]
        words = build_ball(m, 3).words
        ctx = GromovContext(m)
        for u, v in itertools.product(words, repeat=2):
            assert gromov_product(ctx, u, v) == oracles.gromov(G, G.eval(u), G.eval(v))


def test_free_gromov_is_common_prefix():
    m = model("F2")
    words = build_ball(m, 5).words
    ctx = GromovContext(m)
    for u, v in itertools.product(words[::7], words[::5]):
        n = 0
        while n < min(len(u), len(v)) and u[n] == v[n]:
            n += 1
        assert gromov_product(ctx, u, v) == n
        assert gromov_product(ctx, u, v) == gromov_product(ctx, v, u)


def test_basepoint_shift():
    m = model("F2")
    ctx = GromovContext(m)
    g, h = m.parse("ab"), m.parse("aB")
    assert basepoint_shift_bound(ctx, g, h, ())
    assert basepoint_shift_bound(ctx, g, h, m.parse("a"))
    words = build_ball(m, 3).words
    for g, h in itertools.combinations(words, 2):
        for q in words[::4]:
            assert basepoint_shift_bound(ctx, g, h, q)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_gromov_properties(data):
    name = data.draw(st.sampled_from(["F2", "Zx2", "Dinf", "Z2"]))
    m = model(name)
    words = build_ball(m, 4).words
    g, h, p = (data.draw(st.sampled_from(words)) for _ in range(3))
    ctx = GromovContext(m, p)
    v = gromov_product(ctx, g, h)
    assert v == gromov_product(ctx, h, g)
    assert (2 * v) == int(2 * v) and v >= 0
    assert v <= min(m.distance(p, g), m.distance(p, h))


def test_delta_trees_and_line():
    for name in ("F2", "F3", "Dinf"):
        R = 4 if name == "F3" else 6
        est = estimate_delta(model(name), R)
        assert est.delta == 0
        assert all(v == 0 for _, v in est.per_radius)
    assert [v for r, v in estimate_delta(model("Dinf"), 6).per_radius][1:] == ORACLE_DELTA_DINF


def test_delta_zx2_plateau_matches_oracle():
    est = estimate_delta(model("Zx2"), 8)
    assert [v for r, v in est.per_radius][1:] == ORACLE_DELTA_ZX2
    assert est.delta == 1


def test_delta_z2_grows_like_oracle():
    est = estimate_delta(model("Z2"), 6)
    assert [v for r, v in est.per_radius][1:] == ORACLE_DELTA_Z2


def test_delta_witness_realises_value():
    m = model("Zx2")
    est = estimate_delta(m, 4)
    x, y, z, w = est.witness
    val, wit = triangle_thinness(m, x, y, z)
    assert val == est.delta >= 1
    assert wit == est.witness


def test_delta_sampled_is_deterministic_and_bounded():
    m = model("Z2")
    a = estimate_delta(m, 5, "sampled", seed=3, count=500)
    b = estimate_delta(m, 5, "sampled", seed=3, count=500)
    assert a.per_radius == b.per_radius and a.witness == b.witness
    assert a.delta <= estimate_delta(m, 5).delta
    doc = a.to_json(m, "Z2")
    assert doc["seed"] == 3 and doc["count"] == 500 and doc["schema"] == "hypgroup.delta/1"


def test_delta_strict_mode():
    assert estimate_delta(model("Zx2"), 3, "strict").delta == 1
    assert estimate_delta(model("F2"), 3, "strict").delta == 0
    with pytest.raises(BudgetExceeded):
        estimate_delta(model("Zx2"), 6, "strict")


def test_delta_budget():
    with pytest.raises(BudgetExceeded):
        estimate_delta(model("F2"), 5, budget=1000)


def test_delta_monotone_in_radius():
    for name in ("Zx2", "Z2"):
        vals = [v for _, v in estimate_delta(model(name), 5).per_radius]
        assert vals == sorted(vals)
