"""Instability analysis on the blowup of P^3 at a point.

Classes are [omega] = beta H - E and [alpha_s] = p H - s E.  With H^3 = E^3 = 1
and H.E = 0, (alpha_s + i omega)^3 integrates to (p + i beta)^3 - (s + i)^3,
whose real and imaginary parts are N(s) and D(s) below.  The phase angle of the
pair satisfies cot(phi) = N/D, and the pair is supercritical when D > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import (DivisionByZero, EmptyFeasibleSet, HypothesisViolated, NotSupercritical,
                     XiNotGreaterThanR)
from .exact import QuadraticNumber, as_fraction, sign
from .polynomial import AlgebraicNumber, Poly, interpolate, isolate_real_roots, sign_at_root
from .toric_core import det

_MAX_REFINE = 400


def nd_polys(beta, p) -> tuple[Poly, Poly]:
    """N(s) and D(s) as exact polynomials in s."""
    beta, p = as_fraction(beta), as_fraction(p)
    c1 = p ** 3 - 3 * p * beta ** 2
    c2 = 3 * p ** 2 * beta - beta ** 3
    return Poly([c1, 3, 0, -1]), Poly([c2 + 1, 0, -3])


def ratio_at(beta, p, s):
    """(N(s), D(s), N/D) exactly."""
    N, D = nd_polys(beta, p)
    s = as_fraction(s)
    n, d = N(s), D(s)
    if d == 0:
        raise DivisionByZero(f"D({s}) = 0")
    return n, d, n / d


def critical_polynomial(beta, p) -> Poly:
    """(N'D - N D') / 3, monic with integer-friendly coefficients."""
    N, D = nd_polys(beta, p)
    return ((N.derivative() * D - N * D.derivative()) * Fraction(1, 3)).monic()


def window_bound(cot_phi):
    """cot(phi) + sqrt(cot(phi)^2 + 1), exact (Fraction or QuadraticNumber)."""
    cot_phi = as_fraction(cot_phi)
    return QuadraticNumber.sqrt_of(cot_phi * cot_phi + 1) + cot_phi


def cot_phi(beta, p, r) -> Fraction:
    N, D = nd_polys(beta, p)
    r = as_fraction(r)
    d = D(r)
    if d <= 0:
        raise NotSupercritical(f"Im (alpha + i omega)^3 = {d} is not positive")
    return N(r) / d


def instability_window(beta, p, r) -> bool:
    """True when 0 < r < cot(phi) + sqrt(cot(phi)^2 + 1); E then destabilises."""
    beta, r = as_fraction(beta), as_fraction(r)
    if beta <= 1:
        raise HypothesisViolated("beta H - E is ample only for beta > 1")
    c = cot_phi(beta, p, r)
    if r <= 0:
        return False
    return sign(window_bound(c) - r) > 0


# -- interval helpers -----------------------------------------------------------

def _imul(a, b):
    ps = [x * y for x in a for y in b]
    return min(ps), max(ps)


def _ieval(poly: Poly, lo, hi):
    acc = (Fraction(0), Fraction(0))
    for c in reversed(poly.c):
        acc = _imul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


def _idiv_pos(a, b):
    """a / b for an interval b > 0."""
    ps = [x / y for x in a for y in b]
    return min(ps), max(ps)


def _sylvester_resultant(a: list, b: list) -> Fraction:
    """Resultant of polynomials given by coefficient lists (high to low)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + b + [0] * (size - n - 1 - i))
    return det(rows)


def _value_polynomial(q: Poly, N: Poly, D: Poly) -> Poly:
    """R(y) = Res_s(q, N - y D); N(x)/D(x) is a root of R for every root x of q."""
    deg = q.degree
    ys = list(range(deg + 1))
    vals = []
    for y in ys:
        g = N - D * y
        vals.append(_sylvester_resultant(list(reversed(q.c)), list(reversed(g.c))))
    return interpolate(ys, vals)


@dataclass
class Candidate:
    label: str
    value: AlgebraicNumber
    xi: AlgebraicNumber | None


@dataclass
class SupremumResult:
    beta: Fraction
    p: Fraction
    cot_phi_min: AlgebraicNumber | None
    xi: AlgebraicNumber | None
    boundary_case: str | None
    critical_poly: Poly
    feasible_end: object
    candidates: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"beta": str(self.beta), "p": str(self.p),
                "cot_phi_min": None if self.cot_phi_min is None else self.cot_phi_min.to_json(),
                "xi": None if self.xi is None else self.xi.to_json(),
                "boundary_case": self.boundary_case,
                "critical_polynomial": [str(c) for c in self.critical_poly.c],
                "critical_polynomial_text": self.critical_poly.pretty("s"),
                "feasible_end": str(self.feasible_end),
                "candidates": [{"where": c.label, "value": c.value.to_json()}
                               for c in self.candidates]}


def _critical_value(xi: AlgebraicNumber, N: Poly, D: Poly, R: Poly, roots) -> AlgebraicNumber:
    """N(xi)/D(xi) as an algebraic number, picked among the isolated roots of R."""
    width = Fraction(1, 2 ** 20)
    for _ in range(_MAX_REFINE):
        x = xi.refine(width)
        dlo, dhi = _ieval(D, x.lo, x.hi)
        if dlo > 0:
            ylo, yhi = _idiv_pos(_ieval(N, x.lo, x.hi), (dlo, dhi))
            hits = [r for r in roots if r.lo <= yhi and r.hi >= ylo]
            if len(hits) == 1:
                return hits[0]
            roots = [r.refine((r.hi - r.lo) / 2) if r.lo != r.hi else r for r in roots]
        width /= 4
    raise ArithmeticError("could not separate the critical value")


def _compare(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Sign of a - b by refinement; values agreeing to 2^-400 count as equal."""
    for _ in range(_MAX_REFINE):
        if a.is_rational() and b.is_rational():
            return (a.lo > b.lo) - (a.lo < b.lo)
        if a.is_rational():
            return -b.compare_rational(a.lo)
        if b.is_rational():
            return a.compare_rational(b.lo)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        a = a.refine((a.hi - a.lo) / 2)
        b = b.refine((b.hi - b.lo) / 2)
    return 0


def _rationalise(x: AlgebraicNumber) -> AlgebraicNumber:
    """Replace x by an exact rational when it is one."""
    if x.is_rational():
        return x
    fine = x.refine(Fraction(1, 2 ** 80))
    guess = ((fine.lo + fine.hi) / 2).limit_denominator(10 ** 9)
    if x.poly(guess) == 0 and fine.lo <= guess <= fine.hi:
        return AlgebraicNumber(x.poly, guess, guess)
    return x


def phi_min_sup(beta, p) -> SupremumResult:
    """Supremum of N(s)/D(s) over {s > 0 : D(s) > 0}, with its maximiser."""
    beta, p = as_fraction(beta), as_fraction(p)
    N, D = nd_polys(beta, p)
    top = D.c[0]  # D(s) = top - 3 s^2
    if top <= 0:
        raise EmptyFeasibleSet(f"D(s) = {top} - 3s^2 is never positive for s > 0")
    s_max = QuadraticNumber.sqrt_of(top / 3)
    q = critical_polynomial(beta, p)
    candidates = []
    zero_val = N(0) / top
    candidates.append(Candidate("s->0+", AlgebraicNumber(Poly([-zero_val, 1]), zero_val, zero_val),
                                None))
    end = N.c[0] - s_max * (s_max * s_max - 3)
    boundary_inf = sign(end) > 0
    if sign(end) == 0:
        raise HypothesisViolated("N and D vanish together at the end of the feasible interval")
    R = _value_polynomial(q, N, D)
    hi_rat = Fraction(int(float(s_max)) + 2)
    crit = [r for r in isolate_real_roots(q, 0, hi_rat)
            if r.compare_rational(0) > 0 and sign_at_root(D, r) > 0]
    if crit:
        if R.is_zero():
            raise ArithmeticError("critical values are not determined by the resultant")
        roots = isolate_real_roots(R)
        for x in crit:
            x = _rationalise(x)
            if x.is_rational():
                v = N(x.lo) / D(x.lo)
                val = AlgebraicNumber(Poly([-v, 1]), v, v)
            else:
                val = _rationalise(_critical_value(x, N, D, R, roots))
            candidates.append(Candidate("critical", val, x))
    if boundary_inf:
        return SupremumResult(beta, p, None, None, "unbounded", q, s_max, candidates)
    best = candidates[0]
    for c in candidates[1:]:
        if _compare(c.value, best.value) > 0:
            best = c
    boundary = "s->0+" if best.xi is None else None
    fine = Fraction(1, 2 ** 40)
    xi = None if best.xi is None else best.xi.refine(fine)
    return SupremumResult(beta, p, best.value.refine(fine), xi, boundary, q, s_max, candidates)


def quotient_class(p, r, result: SupremumResult) -> dict:
    """Class p H - xi E of the candidate quotient and the excess xi - r."""
    p, r = as_fraction(p), as_fraction(r)
    if p != result.p:
        raise ValueError("p does not match the supremum computation")
    if not instability_window(result.beta, p, r):
        raise HypothesisViolated("r is outside the instability window")
    xi = result.xi
    if xi is None:
        raise HypothesisViolated(f"no interior optimiser ({result.boundary_case})")
    if xi.compare_rational(r) <= 0:
        raise XiNotGreaterThanR(f"xi <= r = {r}")
    out = {"class": {"H": str(p), "E": "-xi"}, "xi": xi.to_json(), "rational": xi.is_rational()}
    if xi.is_rational():
        x = xi.lo
        excess = x - r
        k = lcm(p.denominator, r.denominator, x.denominator)
        out.update({"xi_exact": str(x), "excess": str(excess), "k_divisibility": k,
                    "twist_at_k": str(k * excess)})
    else:
        fine = xi.refine(Fraction(1, 2 ** 40))
        out["excess_interval"] = [str(fine.lo - r), str(fine.hi - r)]
    return out
