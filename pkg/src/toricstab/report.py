"""Check reports shared by every module, plus a deterministic parallel map."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import ComplexScalar, QuadraticNumber, fmt_scalar, sign


@dataclass
class Item:
    subject: str
    margin: object  # Fraction | QuadraticNumber | None
    status: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"subject": self.subject,
               "margin": None if self.margin is None else fmt_scalar(self.margin),
               "status": self.status}
        for k, v in self.data.items():
            out[k] = jsonable(v)
        return out


@dataclass
class CheckReport:
    verdict: str  # pass | fail | wall
    items: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict,
               "items": [i.to_json() for i in self.items],
               "witness": jsonable(self.witness)}
        for k, v in self.data.items():
            out[k] = jsonable(v)
        return out

    def failing(self) -> list:
        return [i for i in self.items if i.status in ("fail", "neg")]


def sign_status(margin, zero_status: str = "zero") -> str:
    s = sign(margin)
    return "pos" if s > 0 else ("neg" if s < 0 else zero_status)


def verdict_from_margins(margins, zero_is_wall: bool = True) -> str:
    signs = [sign(m) for m in margins]
    if any(s < 0 for s in signs):
        return "fail"
    if zero_is_wall and any(s == 0 for s in signs):
        return "wall"
    return "pass"


def jsonable(v):
    if v is None or isinstance(v, (bool, int, str, float)):
        return v
    if isinstance(v, (Fraction, QuadraticNumber)):
        return fmt_scalar(v)
    if isinstance(v, ComplexScalar):
        return jsonable(v.to_json())
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if hasattr(v, "to_json"):
        return jsonable(v.to_json())
    return str(v)


def parallel_map(fn, items, jobs: int = 1) -> list:
    """map() that may use threads; output order always follows ``items``."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))
