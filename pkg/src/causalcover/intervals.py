"""Closed float intervals used to make comparisons that cannot silently lie.

A value computed through rounding (a square root, a cosine, a multiple of pi)
is carried as an interval of width ``eps``; a value known exactly (a sum of
two floats whose rounding error is zero, an input) is a point interval.
Comparisons return :class:`Ordering.UNKNOWN` whenever the intervals overlap
and are not both the same point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

DEFAULT_EPS = 1e-12


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(float(x), float(x))

    @classmethod
    def around(cls, x: float, eps: float = DEFAULT_EPS) -> "Interval":
        """Interval of relative half-width ``eps`` (absolute below magnitude 1)."""
        rad = eps * max(1.0, abs(x))
        return cls(x - rad, x + rad)

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


def exact_sum(a: float, b: float) -> Interval:
    """``a + b`` as a point when float addition is exact, else one ulp wide."""
    s = a + b
    if Fraction(a) + Fraction(b) == Fraction(s):
        return Interval.point(s)
    return Interval(math.nextafter(s, -math.inf), math.nextafter(s, math.inf))


def exact_diff(a: float, b: float) -> Interval:
    return exact_sum(a, -b)


def compare(a: Interval, b: Interval) -> Ordering:
    if a.hi < b.lo:
        return Ordering.LESS
    if a.lo > b.hi:
        return Ordering.GREATER
    if a.is_point and b.is_point and a.lo == b.lo:
        return Ordering.EQUAL
    return Ordering.UNKNOWN


def compare_to_pi(x: float, eps: float = DEFAULT_EPS) -> Ordering:
    """Compare a rounded angle against pi; pi itself is never representable."""
    return compare(Interval.around(x, eps), Interval.around(math.pi, eps))
