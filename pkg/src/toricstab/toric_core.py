"""Fans of smooth complete toric varieties.

A fan is stored as integral ray generators plus the list of maximal cones
(index tuples into the ray list).  Construction goes through ``build_fan``,
which checks primitivity, smoothness and that the maximal cones tile R^n.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

from .errors import (BadCodim, FanError, NonPrimitiveRay, NonSmoothCone, NotComplete,
                     NotMaximalCone, OverlappingCones, UnknownBuiltin, UnknownLabel)


def det(rows) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d


def solve(rows, rhs):
    """Solve x * M = rhs for x, where M has the given rows (square, invertible)."""
    n = len(rows)
    # transpose: M^T x^T = rhs^T
    a = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] for i in range(n)]


def _normal(rows, n):
    """Integer vector orthogonal to the n-1 given vectors (generalised cross product)."""
    if n == 1:
        return [1]
    u = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in rows]
        u.append(int(det(minor)) * (-1) ** i)
    return u


@dataclass(frozen=True)
class OrbitClosure:
    cone: tuple
    dim_subvariety: int

    @property
    def codim(self) -> int:
        return len(self.cone)


@dataclass(frozen=True, eq=True)
class Fan:
    dim: int
    rays: tuple
    max_cones: tuple
    labels: tuple = field(default=())
    complete: bool = True

    @cached_property
    def _cone_sets(self):
        return [frozenset(c) for c in self.max_cones]

    @cached_property
    def _cones_by_size(self):
        out = {}
        for c in self.max_cones:
            for k in range(len(c) + 1):
                for sub in itertools.combinations(sorted(c), k):
                    out.setdefault(k, set()).add(sub)
        return {k: sorted(v) for k, v in out.items()}

    def cones(self, size: int) -> list:
        return list(self._cones_by_size.get(size, []))

    def is_cone(self, idx) -> bool:
        s = set(idx)
        return any(s <= c for c in self._cone_sets)

    def max_cone_containing(self, idx) -> tuple:
        s = set(idx)
        for c in self.max_cones:
            if s <= set(c):
                return c
        raise FanError(f"{sorted(s)} is not a cone")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def label(self, i: int) -> str:
        return self.labels[i]

    def index_of(self, token: str) -> int:
        """Ray index for a label.  A bare "E" that is not itself a label refers to
        the most recent exceptional ray E<n>."""
        if token in self.labels:
            return self.labels.index(token)
        if token == "E":
            ex = [(int(m.group(1)), i) for i, lab in enumerate(self.labels)
                  if (m := re.fullmatch(r"E(\d+)", lab))]
            if ex:
                return max(ex)[1]
        raise UnknownLabel(f"no ray labelled {token!r}; labels are {list(self.labels)}")

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays],
                "max_cones": [list(c) for c in self.max_cones], "labels": list(self.labels)}

    def __repr__(self):
        return f"Fan(dim={self.dim}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"


def build_fan(rays, max_cones, labels=None, require_complete: bool = True) -> Fan:
    """Validate fan data and return an immutable Fan."""
    rays = [tuple(int(x) for x in r) for r in rays]
    if not rays:
        raise FanError("a fan needs at least one ray")
    n = len(rays[0])
    if n < 1:
        raise FanError("dimension must be positive")
    for r in rays:
        if len(r) != n:
            raise FanError("rays have inconsistent dimensions")
        g = reduce(math.gcd, (abs(x) for x in r))
        if g == 0:
            raise NonPrimitiveRay(f"zero ray {r}")
        if g != 1:
            raise NonPrimitiveRay(f"ray {r} is not primitive (gcd {g})")
    if len(set(rays)) != len(rays):
        raise FanError("duplicate rays")
    cones = []
    for c in max_cones:
        c = tuple(sorted(int(i) for i in c))
        if any(i < 0 or i >= len(rays) for i in c):
            raise FanError(f"cone {list(c)} references a missing ray")
        if len(set(c)) != len(c):
            raise FanError(f"cone {list(c)} repeats a ray")
        if len(c) != n:
            raise NonSmoothCone(f"cone {list(c)} has {len(c)} rays; maximal cones must be simplicial of dimension {n}")
        d = det([rays[i] for i in c])
        if abs(d) != 1:
            raise NonSmoothCone(f"cone {list(c)} has determinant {d}")
        cones.append(c)
    if len(set(cones)) != len(cones):
        raise OverlappingCones("repeated maximal cone")
    used = set(itertools.chain.from_iterable(cones))
    if used != set(range(len(rays))):
        raise FanError(f"rays {sorted(set(range(len(rays))) - used)} lie in no maximal cone")
    if labels is None:
        labels = [f"D{i}" for i in range(len(rays))]
    labels = tuple(str(x) for x in labels)
    if len(labels) != len(rays):
        raise FanError("one label per ray required")
    if len(set(labels)) != len(labels):
        raise FanError("labels must be distinct")

    _check_walls(rays, cones, n, require_complete)
    if require_complete:
        _check_degree_one(rays, cones, n)
    return Fan(n, tuple(rays), tuple(cones), labels, require_complete)


def _check_walls(rays, cones, n, require_complete):
    walls = {}
    for c in cones:
        for j in range(n):
            w = c[:j] + c[j + 1:]
            walls.setdefault(w, []).append(c[j])
    for w, opp in walls.items():
        if len(opp) > 2:
            raise OverlappingCones(f"wall {list(w)} lies in {len(opp)} maximal cones")
        if len(opp) == 1:
            if require_complete:
                raise NotComplete(f"wall {list(w)} bounds only one maximal cone")
            continue
        u = _normal([rays[i] for i in w], n)
        s = [sum(a * b for a, b in zip(u, rays[k])) for k in opp]
        if (s[0] > 0) == (s[1] > 0):
            raise OverlappingCones(f"cones across wall {list(w)} lie on the same side")


def _check_degree_one(rays, cones, n):
    # With every wall shared by two cones on opposite sides, the number of cones
    # containing a generic point is constant; it must be exactly one.
    for attempt in range(1, 50):
        weights = [Fraction(1) + Fraction(i * attempt, 7 * n + 3) for i in range(n)]
        p = [sum(w * rays[c][k] for w, c in zip(weights, cones[0])) for k in range(n)]
        p = [x + Fraction(attempt, 97 + k) for k, x in enumerate(p)]
        count = 0
        generic = True
        for c in cones:
            coords = solve([rays[i] for i in c], p)
            if any(x == 0 for x in coords):
                generic = False
                break
            if all(x > 0 for x in coords):
                count += 1
        if generic:
            if count != 1:
                raise OverlappingCones(f"a generic point lies in {count} maximal cones")
            return
    raise FanError("could not find a generic test point")


def orbit_closures(fan: Fan, codim: int) -> list:
    if not 1 <= codim <= fan.dim:
        raise BadCodim(f"codim must be in 1..{fan.dim}, got {codim}")
    return [OrbitClosure(c, fan.dim - codim) for c in fan.cones(codim)]


def proper_orbit_closures(fan: Fan) -> list:
    """All orbit closures of dimension 1..n-1, by increasing codimension."""
    out = []
    for codim in range(1, fan.dim):
        out.extend(orbit_closures(fan, codim))
    return out


def _next_exceptional_label(labels) -> str:
    nums = [int(m.group(1)) for lab in labels if (m := re.fullmatch(r"E(\d+)", lab))]
    return f"E{max(nums, default=0) + 1}"


def blowup_cone(fan: Fan, cone, label: str | None = None) -> Fan:
    """Star subdivision of ``fan`` at a (not necessarily maximal) smooth cone.

    The new ray is the sum of the cone's generators; every maximal cone
    containing ``cone`` is split.  Existing ray indices are unchanged.
    """
    cone = tuple(sorted(cone))
    if not fan.is_cone(cone) or len(cone) < 2:
        raise FanError(f"{list(cone)} is not a cone of dimension >= 2")
    new = tuple(sum(fan.rays[i][k] for i in cone) for k in range(fan.dim))
    ni = len(fan.rays)
    kept, split = [], []
    for c in fan.max_cones:
        if set(cone) <= set(c):
            for j in cone:
                split.append(tuple(sorted([x for x in c if x != j] + [ni])))
        else:
            kept.append(c)
    label = label or _next_exceptional_label(fan.labels)
    return build_fan(list(fan.rays) + [new], kept + sorted(split),
                     list(fan.labels) + [label], fan.complete)


def star_subdivision(fan: Fan, max_cone_index: int) -> Fan:
    """Blow up the torus-fixed point of maximal cone ``max_cone_index``."""
    if not isinstance(max_cone_index, int) or not 0 <= max_cone_index < len(fan.max_cones):
        raise NotMaximalCone(f"no maximal cone with index {max_cone_index}")
    return blowup_cone(fan, fan.max_cones[max_cone_index])


def product(a: Fan, b: Fan, labels=None) -> Fan:
    rays = [tuple(r) + (0,) * b.dim for r in a.rays] + [(0,) * a.dim + tuple(r) for r in b.rays]
    off = len(a.rays)
    cones = [tuple(ca) + tuple(i + off for i in cb) for ca in a.max_cones for cb in b.max_cones]
    if labels is None:
        labels = list(a.labels)
        for lab in b.labels:
            while lab in labels:
                lab = lab + "'"
            labels.append(lab)
    return build_fan(rays, cones, labels)


def projective_space(n: int, labels=None) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = list(itertools.combinations(range(n + 1), n))
    return build_fan(rays, cones, labels)


def _bl_line_p3() -> Fan:
    # P^3 blown up along the line V(e1, e2); projective bundle over P^1.
    # h pulls back O_{P^3}(1), f = h - E pulls back O_{P^1}(1).
    p3 = projective_space(3, ["f1", "f", "h1", "h"])
    return blowup_cone(p3, (0, 1), label="E")


def _builtins():
    p1 = lambda a, b: projective_space(1, [a, b])  # noqa: E731
    p2 = lambda: projective_space(2, ["h1", "h2", "h"])  # noqa: E731
    return {
        "P3": lambda: projective_space(3, ["H1", "H2", "H3", "H"]),
        "BlPtP3": lambda: star_subdivision(projective_space(3, ["H1", "H2", "H3", "H"]), 0),
        "P1xP2": lambda: product(p1("p1", "p"), p2()),
        "P2xP1": lambda: product(p2(), p1("p1", "p")),
        "P1xP1xP1": lambda: product(product(p1("H1", "H1b"), p1("H2", "H2b")), p1("H3", "H3b")),
        "BlLineP3": _bl_line_p3,
    }


BUILTIN_NAMES = ("P3", "P1xP2", "P1xP1xP1", "BlLineP3", "BlPtP3", "P2xP1")

_cache: dict = {}


def builtin(name: str) -> Fan:
    table = _builtins()
    if name not in table:
        raise UnknownBuiltin(f"unknown built-in {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    if name not in _cache:
        _cache[name] = table[name]()
    return _cache[name]


def fan_from_json(data: dict) -> Fan:
    try:
        return build_fan(data["rays"], data["max_cones"], data.get("labels"))
    except KeyError as e:
        raise FanError(f"fan file missing key {e}") from None


def load_fan(spec: str) -> Fan:
    """``builtin:NAME`` or a path to a fan JSON file."""
    if spec.startswith("builtin:"):
        return builtin(spec.split(":", 1)[1])
    with open(spec) as fh:
        return fan_from_json(json.load(fh))
