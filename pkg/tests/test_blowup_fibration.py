"""Point blowups (angles, proper transforms, charge relation) and fibrations over P^1."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricstab.blowup_fibration import (adiabatic_equivalence, blowup_charge, blowup_classes,
                                        exceptional_threshold,
                                        fiber_positivity, fibration_angles, fibration_context,
                                        point_blowup, proper_transform_reduction,
                                        pythagorean, schmidt_relation_audit)
from toricstab.charges import ChernCharacter, chern_character, tilt_charge
from toricstab.chow import chow_ring, is_ample, parse_class
from toricstab.errors import (NotAmpleAfterBlowup, PushforwardRegimeViolated, WindowViolated)
from toricstab.exact import ComplexScalar
from toricstab.toric_core import (OrbitClosure, builtin, product, projective_space,
                                  star_subdivision)

P3 = builtin("P3")


def test_blowup_classes_example():
    ctx = blowup_classes(P3, "H", "-H", Fraction(1, 10), Fraction(1, 2))
    assert (ctx.cos, ctx.sin) == (Fraction(3, 5), Fraction(4, 5))
    assert ctx.omega_tilde == parse_class(ctx.total, "H") - parse_class(ctx.total, "E") * Fraction(2, 25)
    assert is_ample(ctx.total, ctx.omega_tilde)
    with pytest.raises(NotAmpleAfterBlowup):
        blowup_classes(P3, "H", "-H", 10, Fraction(1, 2))
    with pytest.raises(ValueError):
        blowup_classes(P3, "H", "-H", Fraction(1, 10), 0)


def test_pullback_of_hyperplane():
    ctx = point_blowup(P3, "H", "-H")
    for lab in ("H1", "H2", "H3", "H"):
        # every hyperplane class pulls back to H
        assert ctx.pullback(parse_class(P3, lab)) == parse_class(ctx.total, "H")


def test_exceptional_threshold_p3():
    rep = exceptional_threshold(3, -1, Fraction(1, 2))
    assert rep.verdict == "pass"
    assert 2 * 2 * math.atan(0.5) < 3 * math.pi / 4
    # rho near pi/2: 2 rho > 3 pi / 4 fails at dim 2 only
    rep = exceptional_threshold(3, -1, Fraction(9, 10))
    assert rep.verdict == "fail"
    assert [i.status for i in rep.items] == ["pos", "neg"]


def test_exceptional_threshold_surface_case():
    # n = 2: single constraint rho < phi
    for t in (Fraction(1, 5), Fraction(1), Fraction(3)):
        rho = 2 * math.atan(float(t))
        rep = exceptional_threshold(2, Fraction(1, 3), t)
        phi = math.atan2(1, 1 / 3)
        assert (rep.verdict == "pass") == (rho < phi)
        assert len(rep.items) == 1


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fraction(1, 50), max_value=5, max_denominator=50),
       st.fractions(min_value=-4, max_value=4, max_denominator=7))
def test_exceptional_threshold_matches_angles(t, cot):
    rho = 2 * math.atan(float(t))
    phi = math.atan2(1, float(cot))
    rep = exceptional_threshold(3, cot, t)
    expect = all(d * rho < phi for d in (1, 2))
    if all(abs(d * rho - phi) > 1e-9 for d in (1, 2)) and 2 * rho < math.pi:
        assert (rep.verdict == "pass") == expect


def test_pythagorean():
    c, s = pythagorean(Fraction(2, 3))
    assert c * c + s * s == 1


def test_proper_transform_example():
    ctx = blowup_classes(P3, "H", "-H", Fraction(1, 10), Fraction(1, 2))
    r = proper_transform_reduction(ctx, OrbitClosure((0,), 2))
    assert r["base_margin"] > 0 and r["blowup_margin"] > 0 and r["signs_agree"]
    assert r["limit_at_zero"] == r["base_margin"]


def test_proper_transform_threshold_near_wall():
    f = builtin("P1xP1xP1")
    w, L = "H1+H2+H3", "-6H1-4H2-1/3H3"
    V = OrbitClosure((0, 2), 1)
    ctx = blowup_classes(f, w, L, Fraction(1, 2), Fraction(1, 2))
    r = proper_transform_reduction(ctx, V)
    th = r["delta_threshold"]
    assert th is not None and 0.6 < float(th) < 0.65
    assert r["signs_agree"]
    past = blowup_classes(f, w, L, Fraction(7, 10), Fraction(1, 2))  # still ample
    r2 = proper_transform_reduction(past, V)
    assert r2["blowup_margin"] < 0 < r2["base_margin"]


def test_blowup_charge_linear_and_zero():
    ctx = point_blowup(P3, "H", "-H")
    ring = chow_ring(ctx.total)
    zero = ChernCharacter.zero(ring)
    assert blowup_charge(ctx, Fraction(1, 3), 0, zero).is_zero()
    a = chern_character(parse_class(ctx.total, "H-E"))
    b = chern_character(parse_class(ctx.total, "2E"))
    assert blowup_charge(ctx, Fraction(1, 3), 1, a + b) == \
        blowup_charge(ctx, Fraction(1, 3), 1, a) + blowup_charge(ctx, Fraction(1, 3), 1, b)


@pytest.mark.parametrize("beta", [0, Fraction(1, 2), -2])
@pytest.mark.parametrize("k", [1, 2, 5])
def test_blowup_charge_matches_base_when_no_higher_direct_images(k, beta):
    """With k*delta = 2 the pushforward of the three twists is (L^k)^3 on the nose."""
    ctx = point_blowup(P3, "H", "-H")
    L = parse_class(P3, "-H")
    tot = ctx.pullback(L) * k + parse_class(ctx.total, "E") * 2
    lhs = blowup_charge(ctx, Fraction(1, 3), beta, chern_character(tot), scale=k)
    rhs = tilt_charge(parse_class(P3, "H") * k, Fraction(1, 3), beta, chern_character(L * k))
    assert lhs == rhs


def test_schmidt_audit_reports_higher_direct_image_gap():
    ctx = point_blowup(P3, "H", "-H")
    rep = schmidt_relation_audit(ctx, "-H", 10, Fraction(3, 10))
    item = rep.items[0]
    # (L^k)^3 alone misses the skyscraper from R^2 pi_* O(3E): length C(3,3) = 1
    assert item.data["difference"] == ComplexScalar(Fraction(-1, 3), 0)
    assert item.data["higher_direct_image_length"] == 1
    assert rep.data["corrected_relation_holds"]
    with pytest.raises(PushforwardRegimeViolated):
        schmidt_relation_audit(ctx, "-H", 10, Fraction(1, 10))


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 8), st.integers(-3, 3), st.sampled_from([0, Fraction(1, 2), -1]))
def test_schmidt_gap_formula(kd, a, beta):
    ctx = point_blowup(builtin("P3"), "H", f"{a}H" if a else "H-H")
    L = "H-H" if a == 0 else f"{a}H"
    rep = schmidt_relation_audit(ctx, L, 1, kd, Fraction(1, 3), beta)
    c = kd - 2
    assert rep.items[0].data["difference"] == ComplexScalar(Fraction(-(c ** 3 + c), 6), 0)
    assert rep.data["corrected_relation_holds"]


def test_schmidt_twisted_variant_in_regime():
    ctx = point_blowup(P3, "H", "-H")
    rep = schmidt_relation_audit(ctx, "-H", 10, Fraction(1, 2), twisted=[(0, 1), (3, 2)])
    assert [i.subject for i in rep.items] == ["L~^k", "L~^k(1H1)", "L~^k(2H)"]
    assert rep.data["corrected_relation_holds"]


# -- fibrations ---------------------------------------------------------------------------

def _p2p1(omega):
    return fibration_context(builtin("P2xP1"), (0, 0, 1), omega)


@pytest.mark.parametrize("m", [1, 3, 100])
def test_pure_pullback_residual_is_zero(m):
    out = fibration_angles(_p2p1("h").at(m), "2h")
    assert out["z_X"] == ComplexScalar(-9 * m, 12 * m)
    assert out["residual"] == 0
    assert out["fiber_window"]


def test_residual_decays_like_one_over_m():
    ctx = _p2p1("h+1/7p")
    vals = [m * abs(fibration_angles(ctx.at(m), "2h+1/7p")["residual"]) for m in (10, 100, 1000, 10000)]
    assert all(v != 0 for v in vals)
    assert max(vals) / min(vals) < 3


def test_fiber_window_flag_false():
    # z_F = (1 + i/2)^2 has positive real part
    out = fibration_angles(_p2p1("h").at(1), "1/2h")
    assert out["z_F"].re > 0 and not out["fiber_window"]
    with pytest.raises(WindowViolated):
        adiabatic_equivalence(_p2p1("h"), "1/2h", m_cap=64)


def test_adiabatic_pass_on_p2_bundle():
    res = adiabatic_equivalence(_p2p1("h"), "2h", m_cap=2 ** 10)
    assert res["fiber_verdict"] == "pass" and res["verdict"] == "pass"
    assert res["m_threshold"] == 1


def test_adiabatic_fail_on_blown_up_fiber():
    B = star_subdivision(projective_space(2, ["h1", "h2", "h"]), 0)
    X = product(B, projective_space(1, ["q1", "q"]))
    ctx = fibration_context(X, (0, 0, 1), "2h-E1")
    fib = fiber_positivity(ctx, "3h")
    assert fib.verdict == "fail"
    assert [i.subject for i in fib.failing()] == ["V(E1,q1)"]
    res = adiabatic_equivalence(ctx, "3h", m_cap=2 ** 12)
    assert res["verdict"] == "fail" and res["trace"][-1]["verdict"] == "fail"


def test_relative_dimension_three():
    X = product(builtin("P3"), projective_space(1, ["q1", "q"]))
    ctx = fibration_context(X, (0, 0, 0, 1), "H")
    out = fibration_angles(ctx.at(4), "2H")
    assert out["z_F"] == ComplexScalar(-11, -2) and out["residual"] == 0
    assert adiabatic_equivalence(ctx, "2H", m_cap=2 ** 6)["verdict"] == "pass"


def test_fibration_requires_submersion():
    with pytest.raises(ValueError):
        fibration_context(builtin("P2xP1"), (1, 0, 0), "h")
