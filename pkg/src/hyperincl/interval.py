"""Closed intervals with outward-rounded arithmetic.

Intervals are plain immutable values; the arithmetic functions take the
:class:`~hyperincl.scalar.ScalarMode` that the endpoints live in.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyIntersectionError, PreconditionError
from .scalar import Rounding, ScalarMode, as_fraction

DOWN, UP, NEAREST = Rounding.DOWN, Rounding.UP, Rounding.NEAREST


@dataclass(frozen=True, slots=True)
class Interval:
    lo: object
    hi: object

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise PreconditionError(f"invalid interval [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def thin(cls, x) -> "Interval":
        return cls(x, x)

    @property
    def is_thin(self) -> bool:
        return self.lo == self.hi

    def format(self, mode: ScalarMode, digits: int = 6) -> str:
        return f"[{mode.format(self.lo, digits)}, {mode.format(self.hi, digits)}]"


def add(a: Interval, b: Interval, mode: ScalarMode) -> Interval:
    return Interval(mode.add(a.lo, b.lo, DOWN), mode.add(a.hi, b.hi, UP))


def sub(a: Interval, b: Interval, mode: ScalarMode) -> Interval:
    return Interval(mode.sub(a.lo, b.hi, DOWN), mode.sub(a.hi, b.lo, UP))


def neg(a: Interval, mode: ScalarMode) -> Interval:
    return Interval(mode.neg(a.hi), mode.neg(a.lo))


def mul(a: Interval, b: Interval, mode: ScalarMode) -> Interval:
    if a.lo == a.hi and b.lo == b.hi:
        if mode.exact:
            p = a.lo * b.lo
            return Interval(p, p)
        return Interval(mode.mul(a.lo, b.lo, DOWN), mode.mul(a.lo, b.lo, UP))
    if mode.exact:
        ps = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
        return Interval(min(ps), max(ps))
    pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
    return Interval(
        min(mode.mul(x, y, DOWN) for x, y in pairs),
        max(mode.mul(x, y, UP) for x, y in pairs),
    )


def intersect(a: Interval, b: Interval) -> Interval:
    lo = a.lo if a.lo >= b.lo else b.lo
    hi = a.hi if a.hi <= b.hi else b.hi
    if lo > hi:
        raise EmptyIntersectionError(f"empty intersection of [{a.lo}, {a.hi}] and [{b.lo}, {b.hi}]")
    return Interval(lo, hi)


def midpoint(a: Interval, mode: ScalarMode):
    """Midpoint, guaranteed to be a member of ``a``."""
    if a.lo == a.hi:
        return a.lo
    if mode.exact:
        return (a.lo + a.hi) / 2
    m = mode.add(a.lo, mode.div(mode.sub(a.hi, a.lo), 2), NEAREST)
    # clamp guards against a rounded midpoint escaping the interval
    if m < a.lo:
        return a.lo
    if m > a.hi:
        return a.hi
    return m


def width(a: Interval, mode: ScalarMode):
    return mode.sub(a.hi, a.lo, UP)


def mag(a: Interval, mode: ScalarMode):
    return max(mode.abs(a.lo), mode.abs(a.hi))


def contains(a: Interval, x) -> bool:
    """Exact membership test; ``x`` may be any scalar type, e.g. a Fraction."""
    try:
        return bool(a.lo <= x <= a.hi)
    except TypeError:
        f = as_fraction(x)
        return as_fraction(a.lo) <= f <= as_fraction(a.hi)


def subset(a: Interval, b: Interval) -> bool:
    return b.lo <= a.lo and a.hi <= b.hi
