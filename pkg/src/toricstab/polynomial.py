"""Univariate polynomials over Q, Sturm sequences and real-root isolation."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce


class Poly:
    """Dense polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def const(cls, a):
        return cls([a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lead(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def _lift(self, o):
        return o if isinstance(o, Poly) else Poly([o])

    def __add__(self, o):
        o = self._lift(o)
        n = max(len(self.c), len(o.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = o.c + (Fraction(0),) * (n - len(o.c))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-a for a in self.c])

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        if not self.c or not o.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.c == o.c
        if isinstance(o, (int, Fraction)):
            return self.c == Poly([o]).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def derivative(self):
        return Poly([i * a for i, a in enumerate(self.c)][1:])

    def divmod(self, o: "Poly"):
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [Fraction(0)] * max(len(r) - len(o.c) + 1, 0)
        lo = o.lead()
        while len(r) >= len(o.c) and any(r):
            shift = len(r) - len(o.c)
            f = r[-1] / lo
            q[shift] = f
            for i, b in enumerate(o.c):
                r[i + shift] -= f * b
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __mod__(self, o):
        return self.divmod(o)[1]

    def monic(self):
        return Poly([a / self.lead() for a in self.c]) if self.c else self

    def primitive_integer(self) -> "Poly":
        """Scale to coprime integer coefficients with positive leading term."""
        if not self.c:
            return self
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (a.denominator for a in self.c), 1)
        ints = [int(a * den) for a in self.c]
        g = reduce(math.gcd, ints)
        if ints[-1] < 0:
            g = -g
        return Poly([Fraction(a, g) for a in ints])

    def compose(self, o: "Poly") -> "Poly":
        acc = Poly()
        for a in reversed(self.c):
            acc = acc * o + a
        return acc

    def int_coeffs(self) -> list[int]:
        p = self.primitive_integer()
        return [int(a) for a in p.c]

    def __repr__(self):
        return f"Poly({[str(a) for a in self.c]})"

    def pretty(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        parts = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            mag = abs(a)
            sgn = "-" if a < 0 else "+"
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sgn, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sgn, body in parts[1:]:
            s += f" {sgn} {body}"
        return s


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return p.divmod(g)[0]


def sturm_sequence(p: Poly) -> list[Poly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return seq


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq: list[Poly], a, b) -> int:
    """Distinct real roots in (a, b] of a square-free polynomial."""
    va = _sign_changes([q(a) for q in seq])
    vb = _sign_changes([q(b) for q in seq])
    return va - vb


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p.lead())
    return 1 + max((abs(a) / lead for a in p.c[:-1]), default=Fraction(0))


class AlgebraicNumber:
    """A real root of a square-free rational polynomial, given by an isolating
    interval (lo, hi].  When lo == hi the root is the rational lo itself."""

    __slots__ = ("poly", "lo", "hi", "_seq")

    def __init__(self, poly: Poly, lo, hi, seq=None):
        self.poly = poly
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._seq = seq

    @property
    def seq(self):
        if self._seq is None:
            self._seq = sturm_sequence(self.poly)
        return self._seq

    def is_rational(self) -> bool:
        return self.lo == self.hi

    def refine(self, width) -> "AlgebraicNumber":
        """Bisect until hi - lo < width (exact)."""
        lo, hi = self.lo, self.hi
        width = Fraction(width)
        p = self.poly
        while hi - lo >= width and lo != hi:
            mid = (lo + hi) / 2
            pm = p(mid)
            if pm == 0:
                lo = hi = mid
                break
            if count_roots(self.seq, lo, mid) > 0:
                hi = mid
            else:
                lo = mid
        return AlgebraicNumber(p, lo, hi, self._seq)

    def __float__(self):
        if self.lo == self.hi:
            return float(self.lo)
        r = self.refine(Fraction(1, 2 ** 60))
        return float((r.lo + r.hi) / 2)

    def compare_rational(self, q) -> int:
        """Sign of (self - q), exact."""
        q = Fraction(q)
        if self.lo == self.hi:
            return (self.lo > q) - (self.lo < q)
        if q <= self.lo:
            return 1
        if q >= self.hi:
            # root in (lo, hi]; q == hi could be the root itself
            if q == self.hi and self.poly(q) == 0:
                return 0
            return -1
        if self.poly(q) == 0:
            return 0
        return -1 if count_roots(self.seq, self.lo, q) > 0 else 1

    def has_root_in_interval(self) -> bool:
        if self.lo == self.hi:
            return self.poly(self.lo) == 0
        seq = sturm_sequence(squarefree_part(self.poly))
        return count_roots(seq, self.lo, self.hi) > 0

    def to_json(self) -> dict:
        return {"poly": [str(a) for a in self.poly.primitive_integer().c],
                "interval": [str(self.lo), str(self.hi)],
                "approx": repr(float(self))}

    def __repr__(self):
        return f"AlgebraicNumber({self.poly.pretty('s')}, ({self.lo}, {self.hi}])"


def isolate_real_roots(p: Poly, lo=None, hi=None) -> list[AlgebraicNumber]:
    """Isolate the distinct real roots of p in (lo, hi] (default: all real roots).

    Returns roots in increasing order, each with an interval containing
    exactly one root.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no isolated roots")
    if p.degree <= 0:
        return []
    q = squarefree_part(p).monic()
    seq = sturm_sequence(q)
    if lo is None or hi is None:
        b = root_bound(q)
        lo = -b if lo is None else Fraction(lo)
        hi = b if hi is None else Fraction(hi)
    lo, hi = Fraction(lo), Fraction(hi)
    out: list[AlgebraicNumber] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            if q(b) == 0:
                out.append(AlgebraicNumber(q, b, b, seq))
            else:
                out.append(AlgebraicNumber(q, a, b, seq))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    out.sort(key=lambda r: (r.lo, r.hi))
    return out


def interpolate(xs, ys) -> Poly:
    """Lagrange interpolation through exact points."""
    xs = [Fraction(x) for x in xs]
    total = Poly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = Poly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Poly([-xj, 1])
                denom *= xi - xj
        total = total + basis * (Fraction(yi) / denom)
    return total


def sign_at_root(f: Poly, root: AlgebraicNumber) -> int:
    """Exact sign of f at an algebraic number."""
    if root.is_rational():
        v = f(root.lo)
        return (v > 0) - (v < 0)
    g = poly_gcd(f, root.poly)
    if g.degree > 0 and AlgebraicNumber(g, root.lo, root.hi).has_root_in_interval():
        return 0
    # no common root: refine until f has no root in the interval
    r = root
    fs = squarefree_part(f) if f.degree > 0 else f
    fseq = sturm_sequence(fs) if f.degree > 0 else None
    while True:
        if fseq is None or count_roots(fseq, r.lo, r.hi) == 0:
            v = f(r.hi)
            if v == 0:
                v = f((r.lo + r.hi) / 2)
            return (v > 0) - (v < 0)
        r = r.refine((r.hi - r.lo) / 4)

