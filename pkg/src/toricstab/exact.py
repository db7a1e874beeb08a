"""Exact scalars.

Rationals are plain ``fractions.Fraction``.  ``QuadraticNumber`` is a + b*sqrt(d)
with rational a, b and a fixed square-free d > 1.  ``ComplexScalar`` is a pair of
either of those.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import DivisionByZero


def as_fraction(x) -> Fraction:
    """Coerce int / Fraction / "p/q" / decimal string to a Fraction.

    Floats are refused: everything downstream is exact.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational")
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fmt_q(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, f) with n = s * f**2 and s square-free (n > 0).

    Trial division; fine for the small discriminants that show up here.
    """
    if n <= 0:
        raise ValueError("need a positive integer")
    s, f = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            f *= p ** (e // 2)
            if e % 2:
                s *= p
        p += 1 if p == 2 else 2
    s *= m
    return s, f


class QuadraticNumber:
    """a + b*sqrt(d), d square-free > 1.  Immutable."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 2):
        if d <= 1:
            raise ValueError("d must be a square-free integer > 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @classmethod
    def sqrt_of(cls, q) -> "QuadraticNumber | Fraction":
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("negative radicand")
        if q == 0:
            return Fraction(0)
        # sqrt(n/m) = sqrt(n*m)/m
        num = q.numerator * q.denominator
        s, f = squarefree_decompose(num)
        coeff = Fraction(f, q.denominator)
        if s == 1:
            return coeff
        return cls(0, coeff, s)

    # coercion ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError(f"mixed extensions Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return NotImplemented

    def simplify(self):
        return self.a if self.b == 0 else self

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a * o.a + self.b * o.b * self.d,
                               self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DivisionByZero("division by zero in quadratic field")
        c = self.conjugate()
        return QuadraticNumber(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"QuadraticNumber({fmt_q(self.a)}, {fmt_q(self.b)}, {self.d})"

    def __str__(self):
        return fmt_scalar(self)


Scalar = "Fraction | QuadraticNumber"


def sign(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def radicand(x) -> int:
    return x.d if isinstance(x, QuadraticNumber) else 1


def fmt_scalar(x) -> str:
    if isinstance(x, QuadraticNumber):
        if x.b == 0:
            return fmt_q(x.a)
        b = x.b
        root = f"√{x.d}"
        bpart = root if b == 1 else ("-" + root if b == -1 else f"{fmt_q(b)}{root}")
        if x.a == 0:
            return bpart
        if b > 0:
            return f"{fmt_q(x.a)} + {bpart}"
        return f"{fmt_q(x.a)} - {bpart.lstrip('-')}"
    return fmt_q(x)


def to_float(x) -> float:
    return float(x)


class ComplexScalar:
    """Exact complex number re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, QuadraticNumber) else Fraction(re)
        self.im = im if isinstance(im, QuadraticNumber) else Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, ComplexScalar):
            return other
        if isinstance(other, (int, Fraction, QuadraticNumber)):
            return ComplexScalar(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadraticNumber)):
            return ComplexScalar(self.re * other, self.im * other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexScalar(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadraticNumber)):
            if other == 0:
                raise DivisionByZero("complex division by zero")
            return ComplexScalar(self.re / other, self.im / other)
        o = self._lift(other)
        n = o.norm2()
        if n == 0:
            raise DivisionByZero("complex division by zero")
        return (self * o.conj()) / n

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = ComplexScalar(1, 0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self):
        return ComplexScalar(self.re, -self.im)

    def times_i(self, power: int = 1):
        z = self
        for _ in range(power % 4):
            z = ComplexScalar(-z.im, z.re)
        return z

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return sign(self.re) == 0 and sign(self.im) == 0

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return sign(self.re - o.re) == 0 and sign(self.im - o.im) == 0

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def d(self) -> int:
        return max(radicand(self.re), radicand(self.im))

    def to_json(self) -> dict:
        return {"re": fmt_scalar(self.re), "im": fmt_scalar(self.im), "d": self.d}

    def __repr__(self):
        return f"ComplexScalar({fmt_scalar(self.re)}, {fmt_scalar(self.im)})"


I = ComplexScalar(0, 1)
