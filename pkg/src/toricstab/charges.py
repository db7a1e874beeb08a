"""Chern characters, complex power integrals, phases and central charges."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .chow import ChowClass, ChowRing, degree
from .errors import NotSupercritical, OutOfRange, WrongDegree, ZeroCharge
from .exact import ComplexScalar, as_fraction, fmt_q, sign
from .toric_core import OrbitClosure

CONVENTIONS = ("omega+i*alpha", "i*omega+alpha", "alpha+i*omega")


class ChernCharacter:
    """Graded pieces ch_0 .. ch_n, each a ChowClass of matching degree."""

    __slots__ = ("ring", "pieces")

    def __init__(self, ring: ChowRing, pieces):
        self.ring = ring
        pieces = list(pieces)
        n = ring.n
        pieces += [ChowClass(ring, j) for j in range(len(pieces), n + 1)]
        for j, p in enumerate(pieces):
            if p.degree != j:
                raise WrongDegree(f"piece {j} has degree {p.degree}")
        self.pieces = tuple(pieces[: n + 1])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @property
    def rank(self) -> Fraction:
        return self.pieces[0].constant()

    def __getitem__(self, j) -> ChowClass:
        return self.pieces[j]

    def __add__(self, o):
        return ChernCharacter(self.ring, [a + b for a, b in zip(self.pieces, o.pieces)])

    def __neg__(self):
        return ChernCharacter(self.ring, [-a for a in self.pieces])

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return ChernCharacter(self.ring, [a * c for a in self.pieces])

    def shift(self, m: int):
        """Homological shift [m]."""
        return self.scale(-1 if m % 2 else 1)

    def __mul__(self, o: "ChernCharacter"):
        n = self.ring.n
        out = []
        for d in range(n + 1):
            acc = ChowClass(self.ring, d)
            for j in range(d + 1):
                acc = acc + self.pieces[j] * o.pieces[d - j]
            out.append(acc)
        return ChernCharacter(self.ring, out)

    def __eq__(self, o):
        return isinstance(o, ChernCharacter) and all(a == b for a, b in zip(self.pieces, o.pieces))

    __hash__ = None

    def numbers_against(self, omega: ChowClass) -> list:
        """[omega^{n-j} . ch_j for j = 0..n] as exact rationals."""
        n = self.ring.n
        return [degree(self.pieces[j] * omega ** (n - j)) for j in range(n + 1)]

    def to_json(self) -> dict:
        return {"pieces": [p.to_json() if p.degree else fmt_q(p.constant()) for p in self.pieces]}

    def __repr__(self):
        return "ChernCharacter(" + ", ".join(str(p) for p in self.pieces) + ")"


def exp_class(D: ChowClass) -> ChernCharacter:
    ring = D.ring
    pieces = [ChowClass.scalar(ring, 1)]
    for j in range(1, ring.n + 1):
        pieces.append(pieces[-1] * D / j)
    return ChernCharacter(ring, pieces)


def chern_character(D: ChowClass, shift: int = 0) -> ChernCharacter:
    """ch(O(D)[shift])."""
    if D.degree != 1:
        raise WrongDegree("line bundles are given by degree-1 classes")
    return exp_class(D).shift(shift)


def twist(ch: ChernCharacter, beta, omega: ChowClass) -> ChernCharacter:
    beta = as_fraction(beta)
    if beta == 0:
        return ch
    return ch * exp_class(omega * (-beta))


def _vector(omega, alpha, convention):
    w, a = omega.pic(), alpha.pic()
    if convention == "omega+i*alpha":
        return [ComplexScalar(x, y) for x, y in zip(w, a)]
    if convention in ("i*omega+alpha", "alpha+i*omega"):
        return [ComplexScalar(y, x) for x, y in zip(w, a)]
    raise ValueError(f"unknown convention {convention!r}; choose from {CONVENTIONS}")


def complex_power_integral(omega: ChowClass, alpha: ChowClass, k: int,
                           over: OrbitClosure | None = None,
                           convention: str = "omega+i*alpha") -> ComplexScalar:
    """Exact value of the integral of (omega + i alpha)^k over X or over V."""
    ring = omega.ring
    dim = ring.n if over is None else over.dim_subvariety
    if k != dim:
        raise WrongDegree(f"power {k} over a {dim}-dimensional domain")
    v = _vector(omega, alpha, convention)
    cone = () if over is None else over.cone
    val = ring.integrate([v] * k, over=cone)
    return val if isinstance(val, ComplexScalar) else ComplexScalar(val, 0)


@dataclass(frozen=True)
class PhaseData:
    z_top: ComplexScalar
    supercritical: bool
    cot_phi: Fraction | None
    n: int

    @property
    def theta_interval(self) -> str:
        return f"(({self.n}-2)pi/2, {self.n}pi/2)"

    @property
    def z_phase(self) -> ComplexScalar:
        """Integral of (i omega + alpha)^n; its argument is phi."""
        return self.z_top.conj().times_i(self.n)

    def require_supercritical(self):
        if not self.supercritical:
            raise NotSupercritical(f"phase is not supercritical (z_top = {self.z_top.to_json()})")
        return self

    def to_json(self) -> dict:
        return {"z_top": self.z_top.to_json(), "supercritical": self.supercritical,
                "cot_phi": None if self.cot_phi is None else fmt_q(self.cot_phi),
                "theta_interval": self.theta_interval}


def phase_data(omega: ChowClass, alpha: ChowClass, beta=0) -> PhaseData:
    """Phase of (omega, alpha + beta*omega).

    With z = integral (omega + i a)^n, the number i^n * conj(z) is the integral of
    (i omega + a)^n, whose argument is phi = n pi/2 - theta.  Supercritical means
    phi in (0, pi), i.e. its imaginary part is positive.
    """
    beta = as_fraction(beta)
    a = alpha + omega * beta if beta else alpha
    n = omega.ring.n
    z = complex_power_integral(omega, a, n)
    w = z.conj().times_i(n)
    s = sign(w.im)
    cot = (w.re / w.im) if s != 0 else None
    return PhaseData(z, s > 0, cot, n)


def _omega_powers(omega: ChowClass):
    ring = omega.ring
    out = [ChowClass.scalar(ring, 1)]
    for _ in range(ring.n):
        out.append(out[-1] * omega)
    return out


def douglas_charge(omega: ChowClass, beta, ch: ChernCharacter) -> ComplexScalar:
    """-integral of e^{-i omega} e^{-beta omega} ch."""
    beta = as_fraction(beta)
    n = omega.ring.n
    powers = _omega_powers(omega)
    base = ComplexScalar(-beta, -1)
    coeff = ComplexScalar(1, 0)
    total = ComplexScalar(0, 0)
    for j in range(n + 1):
        num = degree(ch.pieces[n - j] * powers[j])
        if num:
            total = total + coeff * (num / factorial(j))
        coeff = coeff * base
    return -total


def tilt_charge(omega: ChowClass, alpha2, beta, ch: ChernCharacter) -> ComplexScalar:
    """Tilt central charge on a threefold, with alpha given through alpha^2."""
    alpha2 = as_fraction(alpha2)
    if alpha2 <= 0:
        raise ValueError("alpha^2 must be positive")
    if omega.ring.n != 3:
        raise WrongDegree("the tilt charge is defined on threefolds")
    tb = twist(ch, beta, omega)
    w = omega
    re = -degree(tb[3]) + alpha2 * 3 / 2 * degree(w * w * tb[1])
    im = degree(w * tb[2]) - alpha2 / 2 * degree(w * w * w) * tb.rank
    return ComplexScalar(re, im)


def in_heart_range(z: ComplexScalar) -> bool:
    s_im = sign(z.im)
    return s_im > 0 or (s_im == 0 and sign(z.re) < 0)


def phase_leq(z1: ComplexScalar, z2: ComplexScalar) -> bool:
    """arg z1 <= arg z2 with both arguments in (0, pi]."""
    for z in (z1, z2):
        if z.is_zero():
            raise ZeroCharge("zero central charge has no phase")
        if not in_heart_range(z):
            raise OutOfRange(f"argument of {z.to_json()} is not in (0, pi]")
    return sign((z1 * z2.conj()).im) <= 0


def line_bundle_charge(omega_pic, beta, divisor_pic, ring: ChowRing) -> ComplexScalar:
    """Fast path for -integral e^{-(beta+i) omega} e^{D} using Picard coordinates."""
    v = [ComplexScalar(d - beta * w, -w) for d, w in zip(divisor_pic, omega_pic)]
    n = ring.n
    return -(ring.integrate([v] * n) / factorial(n))

