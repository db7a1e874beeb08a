"""Slope functions, stability-type inequalities, destabilising objects and walls.

Conventions used throughout:
  * a line bundle L is given by its first Chern class c1(L) (a ChowClass);
    the dHYM class is alpha = c1(L^dual) = -c1(L);
  * the twist parameter beta means B-field beta*omega, and "parameters (k omega, k beta)"
    means polarisation k*omega with the same B-field ratio, i.e. ch * e^{-beta k omega};
  * heart-range charges are compared with ``phase_leq`` (arguments in (0, pi]).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .charges import (ChernCharacter, chern_character, complex_power_integral, phase_data,
                      phase_leq, twist)
from .chow import (ChowClass, as_class, chow_ring, degree, effective_cone_data, is_ample,
                   is_ample_pic)
from .errors import (HypothesisViolated, NoFacetPresentation, NotAmple, NotAmpleAtSample,
                     OutOfRange, UndefinedSlope, WrongDegree, ZeroCharge)
from .exact import ComplexScalar, as_fraction, sign
from .polynomial import Poly, isolate_real_roots
from .report import CheckReport, Item, parallel_map, sign_status, verdict_from_margins
from .toric_core import Fan, OrbitClosure, proper_orbit_closures

THIRD = Fraction(1, 3)


class _PlusInfinity:
    """The +infinity slope value of the torsion convention."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "+inf"

    def to_json(self):
        return "+inf"

    def __gt__(self, other):
        return other is not self

    def __lt__(self, other):
        return False


INF = _PlusInfinity()


def subject_name(fan: Fan, cone) -> str:
    return "V(" + ",".join(fan.labels[i] for i in cone) + ")"


# -- slopes -------------------------------------------------------------------------

def mumford_slope(omega: ChowClass, beta, ch: ChernCharacter):
    n = omega.ring.n
    tb = twist(ch, beta, omega)
    if tb.rank == 0:
        return INF
    return degree(tb[1] * omega ** (n - 1)) / (degree(omega ** n) * tb.rank)


def tilt_slope(omega: ChowClass, alpha2, beta, ch: ChernCharacter):
    n = omega.ring.n
    if n < 2:
        raise WrongDegree("tilt slope needs dimension >= 2")
    alpha2 = as_fraction(alpha2)
    tb = twist(ch, beta, omega)
    num = degree(tb[2] * omega ** (n - 2)) - alpha2 / 2 * degree(omega ** n) * tb.rank
    den = degree(tb[1] * omega ** (n - 1))
    if den == 0:
        if tb.rank == 0:
            return INF
        raise UndefinedSlope("omega^{n-1}.ch1 vanishes on a positive-rank class")
    return num / den


def bg_check(omega: ChowClass, alpha2, beta, ch: ChernCharacter) -> CheckReport:
    """Bogomolov-Gieseker type inequality ch3^beta <= (alpha^2/6) omega^2 ch1^beta."""
    if omega.ring.n != 3:
        raise WrongDegree("the ch3 inequality is stated on threefolds")
    alpha2 = as_fraction(alpha2)
    tb = twist(ch, beta, omega)
    margin = alpha2 / 6 * degree(omega * omega * tb[1]) - degree(tb[3])
    try:
        nu = tilt_slope(omega, alpha2, beta, ch)
    except UndefinedSlope:
        nu = "undefined"
    item = Item("ch3 bound", margin, sign_status(margin), {"nu": nu})
    return CheckReport(verdict_from_margins([margin]), [item],
                       {"alpha2": alpha2, "beta": as_fraction(beta)})


def bg_scan(omega: ChowClass, ch: ChernCharacter, beta_lo, beta_hi, steps: int = 200) -> CheckReport:
    """Scan beta over a grid; at each beta take the alpha^2 > 0 with nu = 0 (if any)
    and evaluate the ch3 bound there."""
    beta_lo, beta_hi = as_fraction(beta_lo), as_fraction(beta_hi)
    n = omega.ring.n
    w3 = degree(omega ** n)
    items = []
    for i in range(steps + 1):
        b = beta_lo + (beta_hi - beta_lo) * i / steps
        tb = twist(ch, b, omega)
        if tb.rank == 0:
            continue
        den = degree(tb[1] * omega ** (n - 1))
        if den == 0:
            continue
        a2 = 2 * degree(tb[2] * omega ** (n - 2)) / (w3 * tb.rank)
        if a2 <= 0:
            continue
        rep = bg_check(omega, a2, b, ch)
        m = rep.items[0].margin
        items.append(Item(f"beta={b}", m, sign_status(m), {"beta": b, "alpha2": a2}))
    verdict = "fail" if any(sign(i.margin) < 0 for i in items) else "pass"
    return CheckReport(verdict, items, {}, {"grid": {"beta_lo": beta_lo, "beta_hi": beta_hi,
                                                       "steps": steps}})


# -- BMSZ conditions -----------------------------------------------------------------

def bmsz_conditions(fan: Fan, omega) -> CheckReport:
    """(a) omega.D^2 >= 0 on prime divisors; (b) zero ones must be extremal and
    pairwise non-orthogonal unless proportional."""
    omega = as_class(fan, omega)
    if not is_ample(fan, omega):
        raise NotAmple("omega is not ample")
    ring = chow_ring(fan)
    w = omega.pic()
    eff = effective_cone_data(fan)
    vecs = eff["pic"]
    items = []
    zero = []
    for r in range(fan.n_rays):
        m = ring.integrate([w, vecs[r], vecs[r]])
        st = "pos" if m > 0 else ("zero" if m == 0 else "fail")
        items.append(Item(f"(a) {fan.labels[r]}", m, st))
        if m == 0:
            zero.append(r)
    for r in zero:
        ok = eff["extremal_flags"][r]
        items.append(Item(f"(b) extremal {fan.labels[r]}", Fraction(1 if ok else -1),
                          "pass" if ok else "fail"))
    for i, r in enumerate(zero):
        for s in zero[i + 1:]:
            if _proportional(vecs[r], vecs[s]):
                continue
            x = ring.integrate([w, vecs[r], vecs[s]])
            ok = x != 0
            items.append(Item(f"(b) pair {fan.labels[r]},{fan.labels[s]}", Fraction(1 if ok else -1),
                              "pass" if ok else "fail", {"omega.D.D'": x}))
    verdict = "fail" if any(i.status == "fail" for i in items) else "pass"
    return CheckReport(verdict, items, {}, {"omega": omega.to_json()})


def _proportional(a, b) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a)))


# -- dHYM positivity ---------------------------------------------------------------------

def dhym_positivity(fan: Fan, omega, alpha, beta=0, mode: str = "strict", jobs: int = 1) -> CheckReport:
    """Nakai-Moishezon type margins Re z_V - cot(phi) Im z_V over all proper toric V."""
    if mode not in ("strict", "semi"):
        raise ValueError("mode must be 'strict' or 'semi'")
    omega, alpha = as_class(fan, omega), as_class(fan, alpha)
    beta = as_fraction(beta)
    pd = phase_data(omega, alpha, beta).require_supercritical()
    a = alpha + omega * beta if beta else alpha
    cot = pd.cot_phi

    def one(V):
        z = complex_power_integral(omega, a, V.dim_subvariety, over=V, convention="i*omega+alpha")
        m = z.re - cot * z.im
        return Item(subject_name(fan, V.cone), m, sign_status(m),
                    {"dim": V.dim_subvariety, "z": z})

    items = parallel_map(one, proper_orbit_closures(fan), jobs)
    margins = [i.margin for i in items]
    verdict = verdict_from_margins(margins, zero_is_wall=(mode == "strict"))
    return CheckReport(verdict, items, {}, {"mode": mode, "phase": pd.to_json()})


def genericity_check(fan: Fan, omega, alpha, beta=0) -> CheckReport:
    rep = dhym_positivity(fan, omega, alpha, beta, "strict")
    walls = [i.subject for i in rep.items if sign(i.margin) == 0]
    for i in rep.items:
        i.status = "wall" if sign(i.margin) == 0 else "off-wall"
    return CheckReport("wall" if walls else "pass", rep.items, {},
                       {"walls": walls, "phase": rep.data["phase"]})


# -- destabilising objects ------------------------------------------------------------

@dataclass
class Params:
    k: int
    k1: int
    k2: int = 1

    def to_json(self):
        return {"k": self.k, "k1": self.k1, "k2": self.k2}


def as_params(p) -> Params:
    if isinstance(p, Params):
        return p
    if isinstance(p, dict):
        return Params(int(p["k"]), int(p["k1"]), int(p.get("k2", 1)))
    return Params(*p)


@dataclass
class DestabilizerSpec:
    V: OrbitClosure
    kind: str
    params: Params
    ch: ChernCharacter
    codim: int
    presentation: tuple
    constituents: list = field(default_factory=list)  # (sign, divisor class)

    def to_json(self):
        fan = self.ch.ring.fan
        return {"V": subject_name(fan, self.V.cone), "kind": self.kind,
                "params": self.params.to_json(), "codim": self.codim,
                "presentation": [fan.labels[i] for i in self.presentation],
                "ch": self.ch.to_json()}


def build_destabilizer(fan: Fan, L, V: OrbitClosure, params) -> DestabilizerSpec:
    """Chern character of S_V: e^{kL}(e^{k1 V} - 1) for divisors and
    e^{kL}(e^{k1 V1} - 1)(e^{k2 V2} - 1) for curves V = V1 . V2."""
    L = as_class(fan, L)
    p = as_params(params)
    ring = chow_ring(fan)
    codim = len(V.cone)
    base = L * p.k
    if codim == 1:
        (r,) = V.cone
        Dv = ChowClass.from_rays(ring, {r: 1})
        cons = [(1, base + Dv * p.k1), (-1, base)]
        kind = "divisor"
    elif codim == 2:
        r1, r2 = sorted(V.cone)
        if not fan.is_cone((r1, r2)):
            raise NoFacetPresentation(f"{subject_name(fan, V.cone)} is not cut out by two facets")
        D1 = ChowClass.from_rays(ring, {r1: 1})
        D2 = ChowClass.from_rays(ring, {r2: 1})
        cons = [(1, base + D1 * p.k1 + D2 * p.k2), (-1, base + D1 * p.k1),
                (-1, base + D2 * p.k2), (1, base)]
        kind = "curve"
    else:
        raise NoFacetPresentation("destabilisers are built for divisors and curves only")
    ch = ChernCharacter.zero(ring)
    for s, D in cons:
        c = chern_character(D)
        ch = ch + c if s > 0 else ch - c
    return DestabilizerSpec(V, kind, p, ch, codim, tuple(sorted(V.cone)), cons)


# -- polynomial-in-k machinery -------------------------------------------------------

class _KData:
    """Intersection numbers needed to write slopes and charges of O(kL + c) at
    polarisation k*omega as polynomials in k (threefolds only)."""

    def __init__(self, fan, omega, L, beta):
        self.fan = fan
        self.ring = chow_ring(fan)
        self.w = omega.pic()
        self.A = tuple(l - beta * x for l, x in zip(L.pic(), self.w))
        self.w3 = self.ring.integrate([self.w] * 3)
        self._cache = {}

    def mixed(self, c):
        c = tuple(c)
        hit = self._cache.get(c)
        if hit is not None:
            return hit
        I = self.ring.integrate
        A, w = self.A, self.w
        m = {}
        for a in range(4):
            for b in range(4 - a):
                e = 3 - a - b
                m[(a, b, e)] = I([A] * a + [c] * b + [w] * e)
        self._cache[c] = m
        return m

    def pieces(self, c):
        """(int w^2 X, int w X^2, int X^3) with X = kA + c, as polynomials in k."""
        m = self.mixed(c)
        w2x = Poly([m[0, 1, 2], m[1, 0, 2]])
        wx2 = Poly([m[0, 2, 1], 2 * m[1, 1, 1], m[2, 0, 1]])
        x3 = Poly([m[0, 3, 0], 3 * m[1, 2, 0], 3 * m[2, 1, 0], m[3, 0, 0]])
        return w2x, wx2, x3

    def mu(self, c):
        w2x, _, _ = self.pieces(c)
        return Poly([0, 0, 1]) * w2x, Poly([0, 0, 0, self.w3])

    def nu(self, c, alpha2):
        w2x, wx2, _ = self.pieces(c)
        num = Poly([0, 1]) * wx2 * Fraction(1, 2) - Poly([0, 0, 0, alpha2 / 2 * self.w3])
        den = Poly([0, 0, 1]) * w2x
        return num, den

    def charge(self, c):
        """Re, Im of -int e^{X - i k omega}."""
        w2x, wx2, x3 = self.pieces(c)
        k = Poly([0, 1])
        x2y = k * wx2
        xy2 = k * k * w2x
        y3 = Poly([0, 0, 0, self.w3])
        re = (x3 - xy2 * 3) * Fraction(-1, 6)
        im = (x2y * 3 - y3) * Fraction(1, 6)
        return re, im

    def vec(self, coeffs: dict):
        return self.ring.pic(coeffs)


def _scaled(v, s):
    return tuple(x * s for x in v)


def _add(*vs):
    return tuple(sum(xs) for xs in zip(*vs))


def _destab_constituents(kd: _KData, cone, k1, k2):
    ring = kd.ring
    zero = tuple(Fraction(0) for _ in ring.basis)
    if len(cone) == 1:
        v = _scaled(kd.vec({cone[0]: 1}), k1)
        return [(1, v), (-1, zero)]
    r1, r2 = sorted(cone)
    v1 = _scaled(kd.vec({r1: 1}), k1)
    v2 = _scaled(kd.vec({r2: 1}), k2)
    return [(1, _add(v1, v2)), (-1, v1), (-1, v2), (1, zero)]


def _destab_charge(kd: _KData, cone, k1, k2):
    re, im = Poly(), Poly()
    for s, c in _destab_constituents(kd, cone, k1, k2):
        r, i = kd.charge(c)
        re, im = re + r * s, im + i * s
    sg = -1 if len(cone) % 2 else 1
    return re * sg, im * sg


@dataclass
class _Cond:
    subject: str
    kind: str
    num: Poly
    den: Poly | None
    need: str  # neg | nonpos | lead_sign

    def product(self) -> Poly:
        return self.num * self.den if self.den is not None else self.num

    def check(self, k):
        if self.need == "lead_sign":
            v = self.num(k)
            lead = next((a for a in reversed(self.num.c) if a != 0), Fraction(0))
            return v, sign(v) == sign(lead), "pass" if sign(v) == sign(lead) else "fail"
        d = self.den(k)
        if d == 0:
            return None, False, "undefined"
        v = Fraction(self.num(k)) / d
        if v < 0:
            return v, True, "pass"
        if v == 0 and self.need == "nonpos":
            return v, True, "boundary"
        return v, False, "fail"


def _check_hypotheses(fan, omega, L, beta):
    if fan.dim != 3:
        raise WrongDegree("heart conditions are implemented for threefolds")
    mu = mumford_slope(omega, beta, chern_character(L))
    if mu >= 0:
        raise HypothesisViolated(f"mu_(omega,beta)(L) = {mu} is not negative")
    pd = phase_data(omega, -L, beta)
    if sign(pd.z_top.re) >= 0:
        raise HypothesisViolated("cos(theta_beta) is not negative")
    return mu, pd


def _heart_conditions(kd: _KData, fan, alpha2, k1, k2, with_dominance: bool):
    conds = []
    seen = set()
    ring = kd.ring
    zero = tuple(Fraction(0) for _ in ring.basis)

    def line_items(label, c):
        if c in seen:
            return
        seen.add(c)
        num, den = kd.mu(c)
        conds.append(_Cond(f"(1) mu {label}", "mu", num, den, "neg"))
        num, den = kd.nu(c, alpha2)
        conds.append(_Cond(f"(3) nu {label}[1]", "nu", num, den, "neg"))

    num, den = kd.nu(zero, alpha2)
    conds.append(_Cond("(2) nu L^k[1]", "nu", num, den, "nonpos" if alpha2 == THIRD else "neg"))
    seen.add(zero)
    for r in range(fan.n_rays):
        line_items(f"L^k({k1}{fan.labels[r]})", _scaled(kd.vec({r: 1}), k1))
    for cone in fan.cones(2):
        r1, r2 = cone
        v1 = _scaled(kd.vec({r1: 1}), k1)
        v2 = _scaled(kd.vec({r2: 1}), k2)
        line_items(f"L^k({k2}{fan.labels[r2]})", v2)
        line_items(f"L^k({k1}{fan.labels[r1]}+{k2}{fan.labels[r2]})", _add(v1, v2))
    if with_dominance:
        zl = kd.charge(zero)
        for cone in fan.cones(1) + fan.cones(2):
            zv = _destab_charge(kd, cone, k1, k2)
            f = zv[1] * zl[0] - zv[0] * zl[1]
            conds.append(_Cond(f"dominance {subject_name(fan, cone)}", "dominance", f, None, "lead_sign"))
    return conds


def _curve_identity_items(fan, omega, L, p: Params):
    items = []
    for cone in fan.cones(2):
        V = OrbitClosure(cone, fan.dim - 2)
        spec = build_destabilizer(fan, L, V, p)
        ch0 = spec.ch.rank
        w2ch1 = degree(spec.ch[1] * omega * omega)
        ok = ch0 == 0 and w2ch1 == 0
        items.append(Item(f"(4) torsion {subject_name(fan, cone)}", Fraction(1 if ok else -1),
                          "pass" if ok else "fail", {"ch0": ch0, "omega^2.ch1": w2ch1,
                                                     "nu": "+inf" if ok else "finite"}))
    return items


def heart_membership(fan: Fan, omega, L, beta, alpha2, params) -> CheckReport:
    omega, L = as_class(fan, omega), as_class(fan, L)
    beta, alpha2 = as_fraction(beta), as_fraction(alpha2)
    p = as_params(params)
    _check_hypotheses(fan, omega, L, beta)
    kd = _KData(fan, omega, L, beta)
    items = []
    for c in _heart_conditions(kd, fan, alpha2, p.k1, p.k2, with_dominance=False):
        v, ok, st = c.check(p.k)
        items.append(Item(c.subject, None if v is None else -v, st, {"value": v}))
    items += _curve_identity_items(fan, omega, L, p)
    verdict = "pass" if all(i.status in ("pass", "boundary") for i in items) else "fail"
    return CheckReport(verdict, items, p.to_json(), {"alpha2": alpha2, "beta": beta})


@dataclass
class NoneFound:
    bound: dict

    def to_json(self):
        return {"none_found": True, "bound": self.bound}


def _int_poly(p: Poly):
    den = 1
    for a in p.c:
        den = den * a.denominator // math.gcd(den, a.denominator)
    return [int(a * den) for a in p.c]


def _horner(ints, k):
    acc = 0
    for a in reversed(ints):
        acc = acc * k + a
    return acc


def _cauchy(ints) -> int:
    if not ints:
        return 0
    lead = abs(ints[-1])
    return 1 + max((abs(a) for a in ints[:-1]), default=0) // lead + 1


def _scan_k(conds, k_max):
    """Least k in 1..k_max satisfying every condition, or None."""
    compiled = []
    bound = 0
    for c in conds:
        prod = _int_poly(c.product())
        den = _int_poly(c.den) if c.den is not None else None
        if c.need == "lead_sign":
            lead = prod[-1] if prod else 0
            target = (lead > 0) - (lead < 0)
        else:
            target = None
        compiled.append((c.need, prod, den, target))
        bound = max(bound, _cauchy(prod), _cauchy(den) if den else 0)
    last = 0
    for k in range(1, min(k_max, bound + 1) + 1):
        order = [last] + [i for i in range(len(compiled)) if i != last]
        for i in order:
            need, prod, den, target = compiled[i]
            v = _horner(prod, k)
            if need == "lead_sign":
                ok = ((v > 0) - (v < 0)) == target
            elif need == "neg":
                ok = v < 0
            else:
                ok = v <= 0 and _horner(den, k) != 0
            if not ok:
                last = i
                break
        else:
            return k
    return None


def find_parameters(fan: Fan, omega, L, beta, alpha2=THIRD, k_max: int = 10 ** 4,
                    k1_max: int = 100, k2_max: int = 10):
    """Lexicographically least (k2, k1, k) passing heart membership for every toric
    divisor and curve, with the k-leading term of every phase comparison dominant."""
    omega, L = as_class(fan, omega), as_class(fan, L)
    beta, alpha2 = as_fraction(beta), as_fraction(alpha2)
    _check_hypotheses(fan, omega, L, beta)
    kd = _KData(fan, omega, L, beta)
    for k2 in range(1, k2_max + 1):
        for k1 in range(1, k1_max + 1):
            conds = _heart_conditions(kd, fan, alpha2, k1, k2, with_dominance=True)
            k = _scan_k(conds, k_max)
            if k is None:
                continue
            p = Params(k, k1, k2)
            if all(i.status == "pass" for i in _curve_identity_items(fan, omega, L, p)):
                return p.to_json()
    return NoneFound({"k": k_max, "k1": k1_max, "k2": k2_max})


def _line_charge(kd: _KData, c, k):
    re, im = kd.charge(c)
    return ComplexScalar(re(k), im(k))


def destabilizer_charges(fan, omega, L, beta, params):
    """[(cone, heart charge of S_V, charge of L^k)] for every divisor and curve."""
    omega, L = as_class(fan, omega), as_class(fan, L)
    p = as_params(params)
    kd = _KData(fan, omega, L, as_fraction(beta))
    zl = kd.charge(tuple(Fraction(0) for _ in kd.ring.basis))
    ZL = ComplexScalar(zl[0](p.k), zl[1](p.k))
    out = []
    for cone in fan.cones(1) + fan.cones(2):
        re, im = _destab_charge(kd, cone, p.k1, p.k2)
        out.append((cone, ComplexScalar(re(p.k), im(p.k)), ZL))
    return out


def bstab_implies_dhym(fan: Fan, omega, L, beta, params, alpha2=THIRD,
                       check_heart: bool = True) -> CheckReport:
    """Audit: destabiliser phase inequalities for all toric V => dHYM semipositivity."""
    omega, L = as_class(fan, omega), as_class(fan, L)
    beta = as_fraction(beta)
    p = as_params(params)
    if check_heart:
        hm = heart_membership(fan, omega, L, beta, alpha2, p)
        if hm.verdict != "pass":
            bad = [i.subject for i in hm.items if i.status not in ("pass", "boundary")]
            raise HypothesisViolated(f"heart membership fails at {p.to_json()}: {bad[:5]}")
    items = []
    all_hold = True
    for cone, zv, zl in destabilizer_charges(fan, omega, L, beta, p):
        try:
            holds = phase_leq(zv, zl)
            st = "holds" if holds else "violated"
        except (ZeroCharge, OutOfRange) as e:
            holds, st = False, "out_of_range" if isinstance(e, OutOfRange) else "zero_charge"
        all_hold &= holds
        margin = -(zv * zl.conj()).im
        items.append(Item(f"phase {subject_name(fan, cone)}", margin, st,
                          {"Z_S": zv, "Z_L": zl}))
    dh = dhym_positivity(fan, omega, -L, beta, "semi")
    for i in dh.items:
        items.append(Item(f"dHYM {i.subject}", i.margin, i.status))
    dhym_ok = dh.verdict == "pass"
    implication = (not all_hold) or dhym_ok
    verdict = "pass" if (dhym_ok and implication) else "fail"
    return CheckReport(verdict, items, p.to_json(),
                       {"phase_all_hold": all_hold, "dhym_semi": dh.verdict,
                        "implication_holds": implication})


# -- pencils and walls ---------------------------------------------------------------

def _complex_power_poly(ring, X, Y, cone, d):
    """Re, Im of int_V (X + iY)^d with polynomial-coefficient divisor vectors."""
    re, im = Poly(), Poly()
    for j in range(d + 1):
        val = ring.integrate([X] * (d - j) + [Y] * j, over=cone)
        if not isinstance(val, Poly):
            val = Poly([val])
        term = val * comb(d, j)
        r = j % 4
        if r == 0:
            re = re + term
        elif r == 1:
            im = im + term
        elif r == 2:
            re = re - term
        else:
            im = im - term
    return re, im


def wall_polynomials(fan: Fan, L, beta, omega0, omega1, alpha=None):
    """For each proper toric V, W_V(t) with sign(W_V) = sign(margin_V) * sign(Im z_X)
    along omega_t = (1-t) omega0 + t omega1."""
    omega0, omega1 = as_class(fan, omega0), as_class(fan, omega1)
    beta = as_fraction(beta)
    alpha = -as_class(fan, L) if alpha is None else as_class(fan, alpha)
    ring = chow_ring(fan)
    w0, w1, a = omega0.pic(), omega1.pic(), alpha.pic()
    Y = [Poly([x0, x1 - x0]) for x0, x1 in zip(w0, w1)]
    X = [y * beta + ai for y, ai in zip(Y, a)]
    n = ring.n
    cre, cim = _complex_power_poly(ring, X, Y, (), n)
    out = []
    for V in proper_orbit_closures(fan):
        zr, zi = _complex_power_poly(ring, X, Y, V.cone, V.dim_subvariety)
        out.append((V, zr * cim - cre * zi))
    return out, (cre, cim), (w0, w1)


def wall_scan(fan: Fan, L, beta, omega0, omega1, steps: int = 100, alpha=None,
              width=Fraction(1, 2 ** 40)) -> list:
    polys, (cre, cim), (w0, w1) = wall_polynomials(fan, L, beta, omega0, omega1, alpha)
    grid = [Fraction(i, steps) for i in range(steps + 1)]
    for t in grid:
        wt = tuple((1 - t) * x + t * y for x, y in zip(w0, w1))
        if not is_ample_pic(fan, wt):
            raise NotAmpleAtSample(f"omega_t is not ample at t = {t}")
    walls = []
    for V, W in polys:
        if W.is_zero():
            walls.append({"subject": subject_name(fan, V.cone), "interval": ["0", "1"],
                          "identically_zero": True})
            continue
        vals = [W(t) for t in grid]
        seen = set()
        for i in range(steps):
            a, b = grid[i], grid[i + 1]
            if vals[i] == 0 and i == 0:
                cells = [(a - Fraction(1, 10 ** 9), a)]
            else:
                cells = []
            if sign(vals[i]) * sign(vals[i + 1]) < 0 or vals[i + 1] == 0:
                cells.append((a, b))
            for lo, hi in cells:
                for r in isolate_real_roots(W, lo, hi):
                    r = r.refine(width)
                    key = (r.lo, r.hi)
                    if key in seen or r.hi < 0 or r.lo > 1:
                        continue
                    seen.add(key)
                    supercrit = sign(cim(r.hi)) > 0
                    walls.append({"subject": subject_name(fan, V.cone),
                                  "interval": [str(r.lo), str(r.hi)],
                                  "approx": float(r), "exact": r.is_rational(),
                                  "supercritical": supercrit})
    return walls


def wall_series(fan, L, beta, omega0, omega1, steps=100, alpha=None):
    """(t, subject, W_V(t)) rows for plotting."""
    polys, _, _ = wall_polynomials(fan, L, beta, omega0, omega1, alpha)
    rows = []
    for i in range(steps + 1):
        t = Fraction(i, steps)
        for V, W in polys:
            rows.append((t, subject_name(fan, V.cone), W(t)))
    return rows
