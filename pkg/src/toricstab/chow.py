"""Intersection theory on smooth complete toric varieties.

Monomials in prime divisors are evaluated by the local reduction: a square-free
monomial on a maximal cone is 1, a monomial whose support is not a cone is 0,
and a repeated factor D_rho is traded for a linear combination of divisors
outside the ambient maximal cone, which strictly enlarges the support.
"""
from __future__ import annotations

import itertools
import re
import threading
from fractions import Fraction
from functools import lru_cache

from . import lp
from .errors import WrongDegree
from .exact import as_fraction, fmt_q
from .toric_core import Fan, OrbitClosure, solve


class ChowRing:
    """Per-fan reduction data.  Obtain through ``chow_ring(fan)``."""

    def __init__(self, fan: Fan):
        self.fan = fan
        self.n = fan.dim
        self._memo: dict = {}
        self._lock = threading.Lock()
        cone0 = fan.max_cones[0]
        self.basis = tuple(i for i in range(fan.n_rays) if i not in cone0)
        self._pos = {r: k for k, r in enumerate(self.basis)}
        # D_rho for rho in cone0, written in the basis divisors
        self._elim = {}
        rows = [fan.rays[i] for i in cone0]
        for a, rho in enumerate(cone0):
            # dual vector m with <m, v_rho'> = delta for rho' in cone0
            e = [Fraction(int(b == a)) for b in range(self.n)]
            m = _dual_vector(rows, e)
            self._elim[rho] = {j: -_dot(m, fan.rays[j]) for j in self.basis}
        self._tensor = None

    # -- monomials ---------------------------------------------------------
    def monomial_degree(self, mono) -> Fraction:
        """Degree of a product of n prime divisors given as ray indices."""
        mono = tuple(sorted(mono))
        if len(mono) != self.n:
            raise WrongDegree(f"monomial of degree {len(mono)} on a {self.n}-fold")
        hit = self._memo.get(mono)
        if hit is not None:
            return hit
        val = self._reduce(mono)
        with self._lock:
            self._memo[mono] = val
        return val

    def _reduce(self, mono) -> Fraction:
        fan = self.fan
        support = sorted(set(mono))
        if not fan.is_cone(support):
            return Fraction(0)
        if len(support) == self.n:
            return Fraction(1)
        rho = min(i for i in support if mono.count(i) > 1)
        tau = fan.max_cone_containing(support)
        rows = [fan.rays[i] for i in tau]
        e = [Fraction(int(i == rho)) for i in tau]
        m = _dual_vector(rows, e)
        rest = list(mono)
        rest.remove(rho)
        total = Fraction(0)
        for j in range(fan.n_rays):
            if j in tau:
                continue
            c = _dot(m, fan.rays[j])
            if c:
                total -= c * self.monomial_degree(tuple(rest) + (j,))
        return total

    # -- Picard coordinates --------------------------------------------------
    def pic(self, coeffs: dict) -> tuple:
        """Basis coordinates of sum coeffs[ray] * D_ray."""
        out = [Fraction(0)] * len(self.basis)
        for r, c in coeffs.items():
            if c == 0:
                continue
            if r in self._pos:
                out[self._pos[r]] += c
            else:
                for j, a in self._elim[r].items():
                    out[self._pos[j]] += c * a
        return tuple(out)

    @property
    def tensor(self) -> dict:
        if self._tensor is None:
            t = {}
            for combo in itertools.combinations_with_replacement(range(len(self.basis)), self.n):
                v = self.monomial_degree(tuple(self.basis[k] for k in combo))
                if v:
                    t[combo] = v
            self._tensor = t
        return self._tensor

    def integrate(self, vectors, over=()):
        """Integral of the product of divisors (basis coordinates, entries in any
        commutative ring containing Q) over the orbit closure of the cone ``over``."""
        vectors = list(vectors) + [self.pic({r: 1}) for r in over]
        if len(vectors) != self.n:
            raise WrongDegree(f"{len(vectors)} divisor factors on a {self.n}-fold")
        t = self.tensor
        supports = [[(k, a) for k, a in enumerate(v) if a != 0] for v in vectors]
        total = 0
        for choice in itertools.product(*supports):
            key = tuple(sorted(k for k, _ in choice))
            val = t.get(key)
            if val is None:
                continue
            term = val
            for _, a in choice:
                term = a * term
            total = term + total
        return total


def _dot(a, b):
    return sum(Fraction(x) * y for x, y in zip(a, b))


def _dual_vector(rows, e):
    """m with <m, rows[i]> = e[i] (rows a lattice basis)."""
    n = len(rows)
    # rows as matrix R (n x n): R m = e  ->  m * R^T = e
    cols = [[rows[i][k] for i in range(n)] for k in range(n)]
    return solve(cols, e)


@lru_cache(maxsize=None)
def chow_ring(fan: Fan) -> ChowRing:
    return ChowRing(fan)


class ChowClass:
    """Homogeneous class: exact combination of monomials in prime divisors."""

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: ChowRing, degree: int, terms: dict | None = None):
        self.ring = ring
        self.degree = degree
        clean = {}
        for k, v in (terms or {}).items():
            if v != 0:
                clean[tuple(sorted(k))] = clean.get(tuple(sorted(k)), 0) + v
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @property
    def fan(self) -> Fan:
        return self.ring.fan

    @classmethod
    def scalar(cls, ring, c):
        return cls(ring, 0, {(): Fraction(c)})

    @classmethod
    def from_rays(cls, ring, coeffs: dict):
        return cls(ring, 1, {(r,): Fraction(c) for r, c in coeffs.items()})

    def _check(self, o):
        if not isinstance(o, ChowClass):
            raise TypeError("expected a ChowClass")
        if o.ring is not self.ring:
            raise ValueError("classes live on different varieties")
        if o.degree != self.degree:
            raise WrongDegree(f"adding degree {self.degree} and degree {o.degree}")

    def __add__(self, o):
        if isinstance(o, int) and o == 0:
            return self
        self._check(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return ChowClass(self.ring, self.degree, t)

    __radd__ = __add__

    def __neg__(self):
        return ChowClass(self.ring, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, ChowClass):
            if o.ring is not self.ring:
                raise ValueError("classes live on different varieties")
            d = self.degree + o.degree
            if d > self.ring.n:
                return ChowClass(self.ring, d)
            t = {}
            for k1, v1 in self.terms.items():
                for k2, v2 in o.terms.items():
                    k = tuple(sorted(k1 + k2))
                    t[k] = t.get(k, 0) + v1 * v2
            return ChowClass(self.ring, d, t)
        o = as_fraction(o) if not isinstance(o, Fraction) else o
        return ChowClass(self.ring, self.degree, {k: v * o for k, v in self.terms.items()})

    def __rmul__(self, o):
        return self * o

    def __truediv__(self, o):
        return self * (1 / as_fraction(o))

    def __pow__(self, k: int):
        out = ChowClass.scalar(self.ring, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        n = self.ring.n
        if self.degree > n:
            return True
        comp = n - self.degree
        for mono in itertools.combinations_with_replacement(self.ring.basis, comp):
            if self._pair(mono) != 0:
                return False
        return True

    def _pair(self, mono) -> Fraction:
        return sum((v * self.ring.monomial_degree(k + mono) for k, v in self.terms.items()),
                   Fraction(0))

    def __eq__(self, o):
        if isinstance(o, int) and o == 0:
            return self.is_zero()
        if not isinstance(o, ChowClass) or o.ring is not self.ring or o.degree != self.degree:
            return NotImplemented if not isinstance(o, ChowClass) else False
        return (self - o).is_zero()

    __hash__ = None

    def pic(self) -> tuple:
        if self.degree != 1:
            raise WrongDegree("Picard coordinates need a degree-1 class")
        return self.ring.pic({k[0]: v for k, v in self.terms.items()})

    def ray_coeffs(self) -> dict:
        if self.degree != 1:
            raise WrongDegree("ray coefficients need a degree-1 class")
        return {k[0]: v for k, v in sorted(self.terms.items())}

    def constant(self) -> Fraction:
        if self.degree != 0:
            raise WrongDegree("not a degree-0 class")
        return self.terms.get((), Fraction(0))

    def to_json(self) -> dict:
        if self.degree == 1:
            return {"coeffs": {self.fan.labels[r]: fmt_q(v) for r, v in self.ray_coeffs().items()}}
        return {"degree": self.degree,
                "terms": [{"rays": [self.fan.labels[i] for i in k], "coeff": fmt_q(v)}
                          for k, v in sorted(self.terms.items())]}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            mono = "*".join(self.fan.labels[i] for i in k) or "1"
            parts.append(f"{fmt_q(v)}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


# -- public operations -----------------------------------------------------------

def divisor_class(fan: Fan, ray_label: str) -> ChowClass:
    idx = fan.index_of(ray_label)
    return ChowClass.from_rays(chow_ring(fan), {idx: 1})


def class_from_coeffs(fan: Fan, coeffs: dict) -> ChowClass:
    return ChowClass.from_rays(chow_ring(fan), {fan.index_of(k): as_fraction(v) for k, v in coeffs.items()})


_TERM = re.compile(r"\s*([+-])?\s*(\(?\s*\d+(?:\.\d+)?(?:\s*/\s*\d+)?\s*\)?)?\s*\*?\s*([A-Za-z][A-Za-z0-9_']*)\s*")


def parse_class(fan: Fan, expr: str) -> ChowClass:
    """Parse "2H-E", "1/3H1+H2", "-(1/2)*h + f" into a divisor class."""
    s = expr.strip()
    if not s:
        raise ValueError("empty class expression")
    pos = 0
    coeffs: dict = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse class expression {expr!r} at position {pos}")
        sgn, num, lab = m.groups()
        if sgn is None and not first:
            raise ValueError(f"missing sign before {lab!r} in {expr!r}")
        c = Fraction(num.replace("(", "").replace(")", "").replace(" ", "")) if num else Fraction(1)
        if sgn == "-":
            c = -c
        idx = fan.index_of(lab)
        coeffs[idx] = coeffs.get(idx, 0) + c
        pos = m.end()
        first = False
    return ChowClass.from_rays(chow_ring(fan), coeffs)


def as_class(fan: Fan, x) -> ChowClass:
    if isinstance(x, ChowClass):
        return x
    if isinstance(x, str):
        return parse_class(fan, x)
    if isinstance(x, dict):
        return class_from_coeffs(fan, x)
    raise TypeError(f"cannot interpret {x!r} as a divisor class")


def degree(cls: ChowClass) -> Fraction:
    ring = cls.ring
    if cls.degree != ring.n:
        raise WrongDegree(f"degree() needs a class of degree {ring.n}, got {cls.degree}")
    return sum((v * ring.monomial_degree(k) for k, v in cls.terms.items()), Fraction(0))


def orbit_class(fan: Fan, V: OrbitClosure) -> ChowClass:
    return ChowClass(chow_ring(fan), len(V.cone), {tuple(V.cone): Fraction(1)})


def restrict_degree(V: OrbitClosure, cls: ChowClass) -> Fraction:
    if cls.degree != V.dim_subvariety:
        raise WrongDegree(f"class of degree {cls.degree} on a {V.dim_subvariety}-dimensional subvariety")
    return degree(cls * orbit_class(cls.fan, V))


def curve_degrees(fan: Fan, divisor: ChowClass) -> list:
    """(cone, D . V(cone)) for every torus-invariant curve."""
    ring = chow_ring(fan)
    v = divisor.pic()
    return [(w, ring.integrate([v], over=w)) for w in fan.cones(fan.dim - 1)]


def is_ample(fan: Fan, divisor: ChowClass) -> bool:
    if divisor.degree != 1:
        raise WrongDegree("ampleness is a property of divisor classes")
    return all(d > 0 for _, d in curve_degrees(fan, divisor))


def is_ample_pic(fan: Fan, vec) -> bool:
    ring = chow_ring(fan)
    return all(ring.integrate([vec], over=w) > 0 for w in fan.cones(fan.dim - 1))


def _proportional_pos(a, b) -> bool:
    """a = c*b for some c > 0."""
    ratio = None
    for x, y in zip(a, b):
        if (x == 0) != (y == 0):
            return False
        if x != 0:
            r = Fraction(x) / y
            if r <= 0 or (ratio is not None and r != ratio):
                return False
            ratio = r
    return ratio is not None


def effective_cone_data(fan: Fan) -> dict:
    """Prime divisor classes and, for each, whether it spans an extremal ray of
    the cone they generate (exact LP over Q)."""
    ring = chow_ring(fan)
    gens = [ChowClass.from_rays(ring, {r: 1}) for r in range(fan.n_rays)]
    vecs = [g.pic() for g in gens]
    flags = []
    for i, v in enumerate(vecs):
        others = [w for j, w in enumerate(vecs) if j != i and not _proportional_pos(w, v)]
        flags.append(lp.nonnegative_solution(others, v) is None)
    return {"generators": gens, "extremal_flags": flags, "pic": vecs}
