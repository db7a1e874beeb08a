"""Exact scalars, polynomials and root isolation, LP feasibility."""
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import basic_solution_feasible, real_roots_float, root_intervals
from toricstab.exact import ComplexScalar, QuadraticNumber, as_fraction, fmt_scalar, sign
from toricstab.lp import nonnegative_solution
from toricstab.polynomial import (Poly, interpolate, isolate_real_roots, poly_gcd, sign_at_root,
                                  squarefree_part)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_as_fraction_rejects_floats():
    assert as_fraction("3/4") == Fraction(3, 4)
    assert as_fraction(2) == 2
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_sqrt_of_rational_and_surd():
    assert QuadraticNumber.sqrt_of(Fraction(9, 4)) == Fraction(3, 2)
    r = QuadraticNumber.sqrt_of(2)
    assert isinstance(r, QuadraticNumber)
    assert r * r == 2
    assert QuadraticNumber.sqrt_of(Fraction(8, 3)) * QuadraticNumber.sqrt_of(Fraction(8, 3)) == Fraction(8, 3)


def test_window_example_sign():
    # sqrt(2) - 1 > 0 and sqrt(2) - 3/2 < 0, decided exactly
    r = QuadraticNumber.sqrt_of(2)
    assert sign(r - 1) == 1
    assert sign(r - Fraction(3, 2)) == -1
    assert fmt_scalar(r - 1) in ("-1 + 1√2", "-1 + √2")


@given(small, small, small, small, st.sampled_from([2, 3, 5, 7, 11]))
def test_quadratic_sign_matches_sympy(a, b, c, e, d):
    x = QuadraticNumber(a, b, d)
    y = QuadraticNumber(c, e, d)
    sx = sp.Rational(a.numerator, a.denominator) + sp.Rational(b.numerator, b.denominator) * sp.sqrt(d)
    sy = sp.Rational(c.numerator, c.denominator) + sp.Rational(e.numerator, e.denominator) * sp.sqrt(d)
    assert sign(x) == int(sp.sign(sx))
    assert sign(x * y) == int(sp.sign(sp.expand(sx * sy)))
    if sign(y) != 0:
        q = x / y
        assert q * y == x


@given(small, small, small, small)
def test_complex_scalar_field_laws(a, b, c, d):
    z, w = ComplexScalar(a, b), ComplexScalar(c, d)
    assert z * w == w * z
    assert (z + w) - w == z
    assert (z * w).conj() == z.conj() * w.conj()
    assert z.times_i(4) == z
    if not w.is_zero():
        assert (z / w) * w == z


def test_complex_powers():
    assert ComplexScalar(1, 1) ** 3 == ComplexScalar(-2, 2)
    assert ComplexScalar(1, 2) ** 2 == ComplexScalar(-3, 4)


# -- polynomials ---------------------------------------------------------------------

def test_critical_quartic_roots_against_sympy():
    p = Poly([47, -18, -44, 0, 1])
    roots = isolate_real_roots(p)
    assert [round(float(r), 10) for r in roots] == [round(x, 10) for x in real_roots_float(p.c)]
    assert len(roots) == len(root_intervals(p.c))
    for r in roots:
        assert r.has_root_in_interval()


def test_rational_root_is_exact():
    p = Poly([-1, 0, 4])  # 4s^2 - 1
    roots = isolate_real_roots(p)
    assert [float(r) for r in roots] == [-0.5, 0.5]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=4))
def test_isolation_matches_sympy_on_products(rts):
    p = Poly([1])
    for r in rts:
        p = p * Poly([-r, 1])
    p = p * Poly([-2, 0, 1])  # adds +-sqrt(2)
    ours = isolate_real_roots(p)
    ref = real_roots_float(squarefree_part(p).c)
    assert len(ours) == len(ref)
    for a, b in zip(ours, ref):
        assert abs(float(a) - b) < 1e-12
        assert a.lo <= Fraction(b).limit_denominator(10 ** 12) + Fraction(1, 10 ** 9)


def test_sign_at_root_and_gcd():
    p = Poly([-2, 0, 1])
    (neg, pos) = isolate_real_roots(p)
    assert sign_at_root(Poly([0, 1]), pos) == 1
    assert sign_at_root(Poly([0, 1]), neg) == -1
    assert sign_at_root(Poly([-2, 0, 1]) * Poly([1, 1]), pos) == 0
    g = poly_gcd(Poly([-1, 0, 1]), Poly([1, 1]))
    assert g.monic() == Poly([1, 1])


@given(st.lists(small, min_size=1, max_size=6, unique=True))
def test_interpolation_roundtrip(xs):
    p = Poly([3, Fraction(-1, 2), 0, 2])
    q = interpolate(xs, [p(x) for x in xs])
    if len(xs) >= 4:
        assert q == p
    for x in xs:
        assert q(x) == p(x)


def test_poly_division_identity():
    a = Poly([1, 2, 3, 4, 5])
    b = Poly([-1, 0, 2])
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


# -- LP -------------------------------------------------------------------------------

def test_lp_simple():
    cols = [(1, 0), (0, 1)]
    assert nonnegative_solution(cols, (2, 3)) == [2, 3]
    assert nonnegative_solution(cols, (-1, 3)) is None
    assert nonnegative_solution([], (0, 0)) == []


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=1, max_size=5),
       st.tuples(*[st.integers(-4, 4)] * 3))
def test_lp_matches_bruteforce(cols, target):
    sol = nonnegative_solution(cols, target)
    assert (sol is not None) == basic_solution_feasible(cols, target)
    if sol is not None:
        assert all(x >= 0 for x in sol)
        for i in range(3):
            assert sum(l * c[i] for l, c in zip(sol, cols)) == target[i]
