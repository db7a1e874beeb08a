"""Slopes, ch3 bound, divisor conditions, dHYM margins, destabilisers and walls."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricstab.charges import chern_character, twist
from toricstab.chow import ChowClass, as_class, chow_ring, degree, parse_class
from toricstab.errors import HypothesisViolated, NotAmple, NotAmpleAtSample, UndefinedSlope
from toricstab.exact import sign
from toricstab.stability import (INF, NoneFound, bg_check, bg_scan, bmsz_conditions,
                                 bstab_implies_dhym, build_destabilizer, dhym_positivity,
                                 find_parameters, genericity_check, heart_membership,
                                 mumford_slope, tilt_slope, wall_scan)
from toricstab.toric_core import OrbitClosure, builtin

P3 = builtin("P3")
BL = builtin("BlPtP3")
H = parse_class(P3, "H")
THIRD = Fraction(1, 3)


def test_slopes():
    O = chern_character(ChowClass(chow_ring(P3), 1))
    assert mumford_slope(H, 0, chern_character(-H)) == -1
    assert mumford_slope(H, 0, O) == 0
    S = build_destabilizer(P3, -H, OrbitClosure((0, 1), 1), (10, 1, 1)).ch
    assert mumford_slope(H, 0, S) is INF
    assert tilt_slope(H, THIRD, 0, chern_character(-H, shift=1)) == -THIRD
    assert tilt_slope(H, THIRD, 0, S) is INF
    with pytest.raises(UndefinedSlope):
        tilt_slope(H, THIRD, 0, O)


def test_bg_check_examples():
    O = chern_character(ChowClass(chow_ring(P3), 1))
    assert bg_check(H, THIRD, 0, O).verdict == "wall"
    ch = chern_character(-H)
    rep = bg_check(H, THIRD, -1, ch)
    assert rep.items[0].margin == -degree(twist(ch, -1, H)[3])
    assert rep.items[0].margin == 0  # ch^{-1} of O(-1) is ch(O)


def test_bg_scan_finds_violation_on_point_blowup():
    w = parse_class(BL, "2H-E")
    ch = chern_character(parse_class(BL, "H"))
    rep = bg_scan(w, ch, Fraction(1, 4), Fraction(1, 3), 20)
    assert rep.verdict == "fail"
    bad = [i for i in rep.items if sign(i.margin) < 0]
    b = bad[0].data["beta"]
    assert bad[0].margin == (1 - 4 * b) / 42


def test_bmsz_examples():
    assert bmsz_conditions(builtin("P1xP1xP1"), "H1+2H2+H3").verdict == "pass"
    assert bmsz_conditions(builtin("BlLineP3"), "h+2f").verdict == "pass"
    rep = bmsz_conditions(BL, "2H-E")
    assert rep.verdict == "fail"
    bad = rep.failing()
    assert [i.subject for i in bad] == ["(a) E1"] and bad[0].margin == -1
    with pytest.raises(NotAmple):
        bmsz_conditions(BL, "H")


@settings(max_examples=25, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=6), min_size=10, max_size=10))
def test_bmsz_condition_a_equivalence(ws):
    """When the prime checks pass, omega.D^2 >= 0 for nonnegative combinations D."""
    f = builtin("P1xP2")
    w = as_class(f, "2p+3h")
    assert bmsz_conditions(f, w).verdict == "pass"
    D = as_class(f, dict(zip(f.labels, ws[:5])))
    assert degree(w * D * D) >= 0


def test_dhym_p3():
    rep = dhym_positivity(P3, "H", "H")
    assert rep.verdict == "pass"
    assert {i.margin for i in rep.items} == {2}
    rep7 = dhym_positivity(P3, "7H", "7H")
    assert rep7.verdict == "pass"
    for a, b in zip(rep.items, rep7.items):
        assert b.margin == a.margin * 7 ** b.data["dim"]


def test_dhym_window_instance_fails():
    rep = dhym_positivity(BL, "2H-E", "3H-1/2E")
    assert rep.verdict == "fail"
    assert "V(E1)" in [i.subject for i in rep.failing()]


def test_genericity():
    assert genericity_check(P3, "H", "H").verdict == "pass"
    rep = genericity_check(BL, "5/3H-E", "-3H-E")
    assert rep.verdict == "wall" and rep.data["walls"] == ["V(E1)"]
    assert genericity_check(BL, "5H-3E", "-9H-3E").verdict == "wall"


def test_destabilizer_characters():
    S = build_destabilizer(P3, -H, OrbitClosure((0,), 2), (10, 2, 1)).ch
    assert [degree(S[j] * H ** (3 - j)) for j in range(4)] == [0, 2, -18, Fraction(244, 3)]
    C = build_destabilizer(P3, -H, OrbitClosure((0, 1), 1), (10, 1, 1)).ch
    assert C.rank == 0 and degree(C[1] * H * H) == 0
    Z = build_destabilizer(P3, -H, OrbitClosure((0,), 2), (10, 0, 1)).ch
    assert all(p.is_zero() for p in Z.pieces)


def test_heart_membership_examples():
    assert heart_membership(P3, "H", "-H", 0, THIRD, (10, 2, 1)).verdict == "pass"
    rep = heart_membership(P3, "H", "-H", 0, THIRD, (10, 10, 1))
    assert rep.verdict == "fail"
    with pytest.raises(HypothesisViolated):
        heart_membership(P3, "H", "H1-H2", 0, THIRD, (10, 2, 1))


def test_find_parameters_examples():
    p = find_parameters(P3, "H", "-H", 0, k_max=1000)
    assert isinstance(p, dict) and p["k"] <= 1000
    assert heart_membership(P3, "H", "-H", 0, THIRD, p).verdict == "pass"
    q = find_parameters(builtin("P1xP1xP1"), "H1+H2+H3", "-H1-H2-H3", 0)
    assert isinstance(q, dict)
    # omega.L^2 - omega^3/3 = 2(ab+bc+ca) - 2 vanishes for L = -H1-H2
    with pytest.raises(HypothesisViolated):
        find_parameters(builtin("P1xP1xP1"), "H1+H2+H3", "-H1-H2", 0)


def test_find_parameters_is_lexicographically_least():
    p = find_parameters(P3, "H", "-H", 0, k_max=200, k1_max=5, k2_max=2)
    best = None
    for k2 in range(1, 3):
        for k1 in range(1, 6):
            for k in range(1, 201):
                try:
                    ok = heart_membership(P3, "H", "-H", 0, THIRD, (k, k1, k2)).verdict == "pass"
                except HypothesisViolated:
                    ok = False
                if ok:
                    best = (k2, k1, k)
                    break
            if best:
                break
        if best:
            break
    assert (p["k2"], p["k1"], p["k"]) == best


def test_none_found():
    r = find_parameters(P3, "H", "-H", 0, k_max=1, k1_max=1, k2_max=1)
    assert isinstance(r, NoneFound)
    assert r.to_json()["bound"] == {"k": 1, "k1": 1, "k2": 1}


def test_bstab_pipeline_p3():
    p = find_parameters(P3, "H", "-H", 0)
    rep = bstab_implies_dhym(P3, "H", "-H", 0, p)
    assert rep.data["phase_all_hold"] and rep.data["implication_holds"]
    assert dhym_positivity(P3, "H", "H", 0, "strict").verdict == "pass"
    with pytest.raises(HypothesisViolated):
        bstab_implies_dhym(P3, "H", "-H", 0, (10, 10, 1))


def test_bstab_constructed_failure_on_point_blowup():
    rep = bstab_implies_dhym(BL, "2H-E", "-3H+1/2E", 0, (100, 1, 1), check_heart=False)
    assert not rep.data["phase_all_hold"]
    assert rep.data["dhym_semi"] == "fail"
    assert rep.data["implication_holds"]


@pytest.mark.parametrize("k", [2, 3, 10])
def test_bstab_scale_invariance(k):
    base = bstab_implies_dhym(P3, "H", "-H", 0, (5, 1, 1))
    scaled = bstab_implies_dhym(P3, f"{k}H", f"-{k}H", 0, (5, 1, 1), check_heart=False)
    assert base.verdict == scaled.verdict


def test_wall_scan():
    walls = wall_scan(BL, "3H+E", 0, "4/3H-E", "2H-E", steps=10)
    assert len(walls) == 1 and walls[0]["subject"] == "V(E1)"
    lo, hi = (Fraction(x) for x in walls[0]["interval"])
    assert lo <= Fraction(1, 2) <= hi
    assert wall_scan(P3, "-H", 0, "H", "2H", steps=10) == []
    with pytest.raises(NotAmpleAtSample):
        wall_scan(BL, "3H+E", 0, "H-E", "2H-E", steps=4)


def test_wall_scan_root_between_grid_points():
    walls = wall_scan(BL, "3H+E", 0, "4/3H-E", "2H-E", steps=7)
    assert len(walls) == 1
    lo, hi = (Fraction(x) for x in walls[0]["interval"])
    assert lo <= Fraction(1, 2) <= hi and hi - lo < Fraction(1, 2 ** 30)


def test_dhym_jobs_do_not_change_result():
    rng = random.Random(3)
    f = builtin("P1xP1xP1")
    for _ in range(5):
        w = as_class(f, {lab: rng.randint(1, 4) for lab in ("H1", "H2", "H3")})
        a = as_class(f, {lab: rng.randint(-4, 4) for lab in ("H1", "H2", "H3")})
        try:
            r1 = dhym_positivity(f, w, a, 0, "strict", jobs=1).to_json()
            r4 = dhym_positivity(f, w, a, 0, "strict", jobs=4).to_json()
        except Exception:
            continue
        assert r1 == r4
