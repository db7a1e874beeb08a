"""Point blowups and fibrations over P^1.

Blowup side: pulled-back and perturbed classes on a star subdivision, the
angle condition along the exceptional divisor, proper-transform margins as
polynomials in delta, the twisted central charge on the blowup and the audit
of its relation to the base charge.

Fibration side: X -> P^1 given by a lattice functional u, with omega_m =
m*kappa*[F] + omega_X; compares the phase on X with the phase on a fibre.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .charges import (ChernCharacter, chern_character, complex_power_integral, phase_data,
                      tilt_charge)
from .chow import ChowClass, as_class, chow_ring, degree, is_ample
from .errors import (NotAmple, NotAmpleAfterBlowup, NotSupercritical, PushforwardRegimeViolated,
                     WindowViolated)
from .exact import ComplexScalar, as_fraction, sign
from .polynomial import Poly, isolate_real_roots
from .report import CheckReport, Item, sign_status, verdict_from_margins
from .stability import _complex_power_poly, dhym_positivity, subject_name
from .toric_core import Fan, OrbitClosure, star_subdivision


def pythagorean(t) -> tuple[Fraction, Fraction]:
    """(cos rho, sin rho) for tan(rho/2) = t."""
    t = as_fraction(t)
    if t <= 0:
        raise ValueError("rho must be positive: need t > 0")
    d = 1 + t * t
    return (1 - t * t) / d, 2 * t / d


@dataclass
class BlowupContext:
    base: Fan
    total: Fan
    cone_index: int
    E: ChowClass
    omega: ChowClass
    L: ChowClass
    delta: Fraction
    t: Fraction
    cos: Fraction
    sin: Fraction
    omega_tilde: ChowClass = None      # pi^* omega - delta sin(rho) E
    L_tilde: ChowClass = None          # pi^* L + cos(rho) delta E
    blown_cone: tuple = ()

    @property
    def alpha_tilde(self) -> ChowClass:
        return -self.L_tilde

    def pullback(self, D: ChowClass) -> ChowClass:
        return pullback(self.base, self.total, self.blown_cone, D)

    def to_json(self):
        return {"cone_index": self.cone_index, "delta": self.delta, "t": self.t,
                "cos_rho": self.cos, "sin_rho": self.sin,
                "omega_tilde": self.omega_tilde.to_json(), "L_tilde": self.L_tilde.to_json(),
                "E": self.total.labels[self.e_index]}

    @property
    def e_index(self) -> int:
        return len(self.total.rays) - 1


def pullback(base: Fan, total: Fan, cone, D: ChowClass) -> ChowClass:
    """pi^* of a divisor class: D_rho -> D_rho + E for rho in the blown-up cone."""
    coeffs = dict(D.ray_coeffs())
    e = len(total.rays) - 1
    ce = sum((c for r, c in coeffs.items() if r in cone), Fraction(0))
    if ce:
        coeffs[e] = ce
    return ChowClass.from_rays(chow_ring(total), coeffs)


def blowup_classes(base: Fan, omega, L, delta, t, cone_index: int = 0) -> BlowupContext:
    omega, L = as_class(base, omega), as_class(base, L)
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not is_ample(base, omega):
        raise NotAmple("omega is not ample on the base")
    c, s = pythagorean(t)
    total = star_subdivision(base, cone_index)
    cone = base.max_cones[cone_index]
    ring = chow_ring(total)
    e = len(total.rays) - 1
    E = ChowClass.from_rays(ring, {e: 1})
    pw = pullback(base, total, cone, omega)
    pl = pullback(base, total, cone, L)
    ctx = BlowupContext(base, total, cone_index, E, omega, L, delta, as_fraction(t), c, s,
                        pw - E * (delta * s), pl + E * (c * delta), cone)
    if not is_ample(total, ctx.omega_tilde):
        raise NotAmpleAfterBlowup(f"pi^*omega - {delta * s}E is not ample (delta too large)")
    return ctx


def point_blowup(base: Fan, omega, L, cone_index: int = 0) -> BlowupContext:
    """Unperturbed context (delta = 0): omega~ = pi^*omega is only nef."""
    omega, L = as_class(base, omega), as_class(base, L)
    total = star_subdivision(base, cone_index)
    cone = base.max_cones[cone_index]
    e = len(total.rays) - 1
    E = ChowClass.from_rays(chow_ring(total), {e: 1})
    return BlowupContext(base, total, cone_index, E, omega, L, Fraction(0), Fraction(0),
                         Fraction(1), Fraction(0), pullback(base, total, cone, omega),
                         pullback(base, total, cone, L), cone)


# -- exceptional divisor angle condition -------------------------------------------------

def exceptional_threshold(n: int, cot_phi, t) -> CheckReport:
    """For each d = 1..n-1 the margin cos(d rho) - cot(phi) sin(d rho), which is positive
    exactly when d*rho < phi (for d*rho in (0, pi)).  rho is given by tan(rho/2) = t."""
    cot_phi = as_fraction(cot_phi)
    c, s = pythagorean(t)
    z = ComplexScalar(1, 0)
    step = ComplexScalar(c, s)
    items = []
    for d in range(1, n):
        z = z * step
        m = z.re - cot_phi * z.im
        items.append(Item(f"dim {d}", m, sign_status(m), {"cos": z.re, "sin": z.im}))
    verdict = verdict_from_margins([i.margin for i in items])
    binding = min(items, key=lambda i: i.margin).subject if items else None
    return CheckReport(verdict, items, {"t": as_fraction(t)},
                       {"n": n, "cot_phi": cot_phi, "binding": binding})


def exceptional_crossing(n: int, cot_phi, t_lo, t_hi, steps: int = 1000):
    """Scan t on a grid; return (t_pass, t_fail) bracketing the first verdict change, or None."""
    t_lo, t_hi = as_fraction(t_lo), as_fraction(t_hi)
    prev_t, prev_v = None, None
    for i in range(steps + 1):
        t = t_lo + (t_hi - t_lo) * i / steps
        if t <= 0:
            continue
        v = exceptional_threshold(n, cot_phi, t).verdict
        if prev_v is not None and v != prev_v:
            return prev_t, t
        prev_t, prev_v = t, v
    return None


# -- proper transforms -------------------------------------------------------------------

def _margin_polys(ring, A, W, cone, d):
    """(W_V, Im w_X, Re w_X) as polynomials in delta, where w = integral (iW + A)^.
    sign(margin_V) = sign(W_V) * sign(Im w_X)."""
    xr, xi = _complex_power_poly(ring, A, W, (), ring.n)
    zr, zi = _complex_power_poly(ring, A, W, cone, d)
    return zr * xi - xr * zi, xi, xr


def proper_transform_reduction(ctx: BlowupContext, V: OrbitClosure, beta=0) -> dict:
    """Compare the margin along V (base) with the margin along its proper transform
    for (omega~_delta, L~_delta^dual); delta-threshold from the delta-polynomial."""
    beta = as_fraction(beta)
    base, total = ctx.base, ctx.total
    alpha = -ctx.L
    base_rep = dhym_positivity(base, ctx.omega, alpha, beta, "semi")
    base_item = next(i for i in base_rep.items if i.subject == subject_name(base, V.cone))
    ring = chow_ring(total)
    pw, pa, E = ctx.pullback(ctx.omega).pic(), ctx.pullback(alpha).pic(), ctx.E.pic()
    # delta-dependent vectors
    W = [Poly([w, -ctx.sin * e]) for w, e in zip(pw, E)]
    A = [Poly([a, -ctx.cos * e]) + w * beta for a, e, w in zip(pa, E, W)]
    if not total.is_cone(V.cone):
        raise ValueError("proper transform cone missing from the blown-up fan")
    Wv, xi, xr = _margin_polys(ring, A, W, V.cone, V.dim_subvariety)
    d = ctx.delta
    blow_margin = (Fraction(Wv(d)) / xi(d)) if xi(d) != 0 else None
    base_margin = base_item.margin
    roots = []
    for p in (Wv, xi):
        if p.degree > 0:
            roots += [r.refine(Fraction(1, 2 ** 40)) for r in isolate_real_roots(p)
                      if r.compare_rational(0) > 0]
    threshold = min(roots, key=float) if roots else None
    return {
        "subject": subject_name(total, V.cone),
        "base_margin": base_margin,
        "blowup_margin": blow_margin,
        "delta": d,
        "signs_agree": blow_margin is not None and sign(blow_margin) == sign(base_margin),
        "limit_at_zero": Fraction(Wv(0)) / xi(0) if xi(0) != 0 else None,
        "delta_threshold": threshold,
        "wall_polynomial": [str(c) for c in Wv.c],
    }


# -- blowup central charge ---------------------------------------------------------------

def blowup_charge(ctx: BlowupContext, alpha2, beta, ch: ChernCharacter, scale=1) -> ComplexScalar:
    """Charge on the blowup with omega~ = scale * pi^*omega, B~ = 2E + beta*omega~ and
    Gamma~ = -E^2/6."""
    alpha2, beta, scale = as_fraction(alpha2), as_fraction(beta), as_fraction(scale)
    w = ctx.pullback(ctx.omega) * scale
    E = ctx.E
    B = E * 2 + w * beta
    tb = ch * chern_character(-B)
    gamma = E * E * Fraction(-1, 6)
    re = -degree(tb[3]) + alpha2 * 3 / 2 * degree(w * w * tb[1]) + degree(gamma * tb[1])
    im = degree(w * tb[2]) - alpha2 / 2 * degree(w * w * w) * tb.rank
    return ComplexScalar(re, im)


def schmidt_relation_audit(ctx: BlowupContext, L, k: int, delta, alpha2=Fraction(1, 3), beta=0,
                           twisted=()) -> CheckReport:
    """Check Z~(L~^k(k1 V~)) = (1/3) Z(j Phi(...)) with Phi = (L^k(k1 V))^{+3}, where
    L~ = pi^*L(delta E) and the charges use (k omega, k beta).

    Each item also records the same comparison when Phi includes the higher direct
    images R^2 pi_* O(aE) (length C(a,3) at the point) that appear for a >= 3.
    ``twisted`` lists (ray index on the base, k1) pairs.
    """
    base, total = ctx.base, ctx.total
    L = as_class(base, L)
    delta, alpha2, beta = as_fraction(delta), as_fraction(alpha2), as_fraction(beta)
    kd = k * delta
    if kd.denominator != 1:
        raise ValueError("k*delta must be an integer")
    kd = int(kd)
    ring_t, ring_b = chow_ring(total), chow_ring(base)
    cases = [(None, 0)] + [(int(r), int(k1)) for r, k1 in twisted]
    e = ctx.e_index
    point = ChowClass(ring_b, base.dim, {tuple(base.max_cones[0]): Fraction(1)})
    ch_point = ChernCharacter(ring_b, [ChowClass(ring_b, j) for j in range(base.dim)] + [point])
    z_point = tilt_charge(ctx.omega * k, alpha2, beta, ch_point)
    items = []
    for r, k1 in cases:
        m = 1 if (r is not None and r in ctx.blown_cone) else 0
        c = kd - 2 - m * k1
        if c <= 0:
            raise PushforwardRegimeViolated(f"k*delta - 2 - m*k1 = {c} <= 0")
        base_div = L * k
        tot = ctx.pullback(L) * k + ChowClass.from_rays(ring_t, {e: kd})
        name = "L~^k"
        if r is not None:
            base_div = base_div + ChowClass.from_rays(ring_b, {r: k1})
            tot = tot + ChowClass.from_rays(ring_t, {r: k1})
            name = f"L~^k({k1}{total.labels[r]})"
        lhs = blowup_charge(ctx, alpha2, beta, chern_character(tot), scale=k)
        z_base = tilt_charge(ctx.omega * k, alpha2, beta, chern_character(base_div))
        rhs = z_base  # (1/3) * 3 * Z(L^k(...))
        extra = sum(comb(c + i, 3) for i in range(3))
        rhs_full = z_base + z_point * Fraction(extra, 3)
        diff = lhs - rhs
        ok = diff.is_zero()
        ok_full = (lhs - rhs_full).is_zero()
        mag = -(abs(diff.re) + abs(diff.im))
        items.append(Item(name, mag, "equal" if ok else "unequal",
                          {"lhs": lhs, "rhs": rhs, "difference": diff,
                           "higher_direct_image_length": extra,
                           "rhs_with_higher_direct_images": rhs_full,
                           "equal_with_higher_direct_images": ok_full}))
    verdict = "pass" if all(i.status == "equal" for i in items) else "fail"
    return CheckReport(verdict, items, {"k": k, "delta": delta},
                       {"alpha2": alpha2, "beta": beta,
                        "corrected_relation_holds": all(
                            i.data["equal_with_higher_direct_images"] for i in items)})


# -- fibrations over P^1 ----------------------------------------------------------------------

@dataclass
class FibrationContext:
    total: Fan
    u: tuple
    rho_plus: int
    F: ChowClass
    omega_X: ChowClass
    m: Fraction
    kappa: Fraction = Fraction(1)
    fiber_cones: list = field(default_factory=list)

    @property
    def omega_m(self) -> ChowClass:
        return self.F * (self.m * self.kappa) + self.omega_X

    def at(self, m) -> "FibrationContext":
        return FibrationContext(self.total, self.u, self.rho_plus, self.F, self.omega_X,
                                as_fraction(m), self.kappa, self.fiber_cones)


def fibration_context(total: Fan, u, omega_X, m=1, kappa=1) -> FibrationContext:
    """X -> P^1 induced by the lattice functional u (a toric submersion: exactly one
    ray on the positive side, with <u, v> = 1, and one on the negative side)."""
    u = tuple(int(x) for x in u)
    vals = [sum(a * b for a, b in zip(u, v)) for v in total.rays]
    pos = [i for i, x in enumerate(vals) if x > 0]
    neg = [i for i, x in enumerate(vals) if x < 0]
    if len(pos) != 1 or len(neg) != 1 or vals[pos[0]] != 1 or vals[neg[0]] != -1:
        raise ValueError("u does not define a toric submersion onto P^1")
    for c in total.max_cones:
        if any(i in c for i in pos) and any(i in c for i in neg):
            raise ValueError("u does not map cones into cones of P^1")
    rp = pos[0]
    ring = chow_ring(total)
    F = ChowClass.from_rays(ring, {rp: 1})
    cones = []
    for size in range(2, total.dim):
        cones += [c for c in total.cones(size) if rp in c]
    return FibrationContext(total, u, rp, F, as_class(total, omega_X), as_fraction(m),
                            as_fraction(kappa), cones)


def _fiber_phase(ctx: FibrationContext, alpha: ChowClass):
    d = ctx.total.dim - 1
    zF = complex_power_integral(ctx.omega_X, alpha, d, over=OrbitClosure((ctx.rho_plus,), d))
    w = zF.conj().times_i(d)
    return zF, w


def fibration_angles(ctx: FibrationContext, alpha) -> dict:
    alpha = as_class(ctx.total, alpha)
    wm = ctx.omega_m
    if not is_ample(ctx.total, wm):
        raise NotAmple(f"omega_m is not ample at m = {ctx.m}")
    pX = phase_data(wm, alpha)
    zF, wF = _fiber_phase(ctx, alpha)
    cotF = wF.re / wF.im if sign(wF.im) != 0 else None
    tanF = (1 / cotF) if cotF not in (None, 0) else None
    window = sign(wF.re) > 0 and sign(wF.im) > 0
    residual = None
    if pX.cot_phi is not None and tanF is not None:
        residual = pX.cot_phi + tanF
    return {"m": ctx.m, "z_X": pX.z_top, "cot_phi_X": pX.cot_phi, "supercritical_X": pX.supercritical,
            "z_F": zF, "cot_phi_F": cotF, "tan_phi_F": tanF, "fiber_window": window,
            "residual": residual}


def fiber_positivity(ctx: FibrationContext, alpha) -> CheckReport:
    """dHYM margins of the fibre problem (dimension n-1) over toric subvarieties of F."""
    alpha = as_class(ctx.total, alpha)
    zF, wF = _fiber_phase(ctx, alpha)
    if sign(wF.im) <= 0:
        raise NotSupercritical("fibre phase is not supercritical")
    cot = wF.re / wF.im
    items = []
    for cone in ctx.fiber_cones:
        dim = ctx.total.dim - len(cone)
        z = complex_power_integral(ctx.omega_X, alpha, dim, over=OrbitClosure(cone, dim),
                                   convention="i*omega+alpha")
        mval = z.re - cot * z.im
        items.append(Item(subject_name(ctx.total, cone), mval, sign_status(mval), {"dim": dim}))
    return CheckReport(verdict_from_margins([i.margin for i in items]), items, {},
                       {"cot_phi_F": cot})


def adiabatic_equivalence(ctx: FibrationContext, alpha, m_start=1, m_cap=2 ** 20) -> dict:
    """Total-space verdicts for m = m_start, 2 m_start, ... <= m_cap against the fibre
    verdict; returns the least sampled m from which they agree."""
    alpha = as_class(ctx.total, alpha)
    m_start = as_fraction(m_start)
    top = fibration_angles(ctx.at(m_cap), alpha)
    if not (top["supercritical_X"] and top["cot_phi_X"] is not None and top["cot_phi_X"] < 0):
        raise WindowViolated("phi_X is not in (pi/2, pi) for large m")
    fib = fiber_positivity(ctx, alpha)
    trace = []
    m = m_start
    while m <= m_cap:
        c = ctx.at(m)
        wm = c.omega_m
        if not is_ample(ctx.total, wm):
            v = "not_ample"
        else:
            try:
                v = dhym_positivity(ctx.total, wm, alpha, 0, "strict").verdict
            except NotSupercritical:
                v = "not_supercritical"
        trace.append((m, v))
        m *= 2
    m0 = None
    for m, v in reversed(trace):
        if v != fib.verdict:
            break
        m0 = m
    return {"m_threshold": m0, "fiber_verdict": fib.verdict,
            "verdict": fib.verdict if m0 is not None else "fail",
            "trace": [{"m": m, "verdict": v} for m, v in trace],
            "fiber_report": fib}
