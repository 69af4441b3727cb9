"""Chronology on 2D Minkowski space with the punctures ``(0, 0)`` and ``(0, -1/k)``.

Points are ``(t, x)`` pairs of exact rationals.  A future timelike curve from
``t < 0`` to ``t > 0`` crosses the axis ``t = 0`` once; where it may cross is
an open window on the axis, and the gap between consecutive punctures that it
crosses in labels its homotopy class, i.e. the sheet of the universal cover
its lift ends on.  The puncture family is never materialized: gap membership
is decided from ``k -> -1/k`` directly, so the accumulation at 0 is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Number = Union[int, Fraction, str, float]


class UnsupportedShapeError(ValueError):
    """Query outside the crossing shape ``t_p < 0 < t_q`` this module decides."""


def _q(v: Number) -> Fraction:
    if isinstance(v, float):
        # floats are taken at face value through their shortest repr
        return Fraction(repr(v))
    return Fraction(v)


@dataclass(frozen=True)
class MEvent:
    t: Fraction
    x: Fraction

    def __init__(self, t: Number, x: Number):
        object.__setattr__(self, "t", _q(t))
        object.__setattr__(self, "x", _q(x))
        if is_puncture(self):
            raise ValueError(f"{self} is a removed point")

    def __repr__(self):
        return f"MEvent(t={self.t}, x={self.x})"


def puncture_position(k: int) -> Fraction:
    """Axis position of puncture ``k``: 0 for ``k == 0``, else ``-1/k``."""
    if k < 0:
        raise ValueError("puncture index must be non-negative")
    return Fraction(0) if k == 0 else Fraction(-1, k)


def is_puncture(e: MEvent) -> bool:
    if e.t != 0:
        return False
    x = e.x
    return x == 0 or (x < 0 and x.numerator == -1)


INF = None  # unbounded endpoint marker


@dataclass(frozen=True)
class QInterval:
    """Interval of rationals; ``None`` endpoints are infinite."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def closure(self) -> "QInterval":
        if self.is_empty():
            return self
        return QInterval(self.lo, self.hi, self.lo is not None, self.hi is not None)

    def intersect(self, other: "QInterval") -> "QInterval":
        lo, lo_c = _tighter(self.lo, self.lo_closed, other.lo, other.lo_closed, low=True)
        hi, hi_c = _tighter(self.hi, self.hi_closed, other.hi, other.hi_closed, low=False)
        return QInterval(lo, hi, lo_c, hi_c)

    def meets(self, other: "QInterval") -> bool:
        return not self.intersect(other).is_empty()

    def __contains__(self, c: Fraction) -> bool:
        if self.lo is not None and (c < self.lo or (c == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (c > self.hi or (c == self.hi and not self.hi_closed)):
            return False
        return True

    def __str__(self):
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"


def _tighter(a, a_closed, b, b_closed, low: bool):
    if a is None:
        return b, b_closed
    if b is None:
        return a, a_closed
    if a == b:
        return a, a_closed and b_closed
    pick_a = (a > b) if low else (a < b)
    return (a, a_closed) if pick_a else (b, b_closed)


@dataclass(frozen=True, order=True)
class Gap:
    """Connected component of the axis minus the punctures.

    ``Gap("Right")`` is ``(0, inf)``, ``Gap("Left")`` is ``(-inf, -1)`` and
    ``Gap("Mid", k)`` is ``(-1/k, -1/(k+1))``.
    """

    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("Right", "Left", "Mid"):
            raise ValueError(f"unknown gap kind {self.kind!r}")
        if self.kind == "Mid" and self.k < 1:
            raise ValueError("Mid gaps are indexed from k = 1")
        if self.kind != "Mid" and self.k != 0:
            raise ValueError("only Mid gaps carry an index")

    @property
    def interval(self) -> QInterval:
        if self.kind == "Right":
            return QInterval(Fraction(0), None)
        if self.kind == "Left":
            return QInterval(None, Fraction(-1))
        return QInterval(Fraction(-1, self.k), Fraction(-1, self.k + 1))

    def __str__(self):
        return f"Mid({self.k})" if self.kind == "Mid" else self.kind


RIGHT = Gap("Right")
LEFT = Gap("Left")


def Mid(k: int) -> Gap:
    return Gap("Mid", k)


def sheets(k_max: int) -> list:
    return [RIGHT, LEFT] + [Mid(k) for k in range(1, k_max + 1)]


@dataclass(frozen=True)
class GapSet:
    """Finite description of a set of gaps: two flags plus a range of Mid indices."""

    right: bool = False
    left: bool = False
    mid_lo: Optional[int] = None  # None: no Mid gaps
    mid_hi: Optional[int] = None  # None with mid_lo set: unbounded

    def __contains__(self, g: Gap) -> bool:
        if g.kind == "Right":
            return self.right
        if g.kind == "Left":
            return self.left
        if self.mid_lo is None:
            return False
        return g.k >= self.mid_lo and (self.mid_hi is None or g.k <= self.mid_hi)

    def is_empty(self) -> bool:
        return not (self.right or self.left or self.mid_lo is not None)

    def members(self, k_max: int) -> list:
        return [g for g in sheets(k_max) if g in self]

    def __str__(self):
        parts = [n for n, f in (("Right", self.right), ("Left", self.left)) if f]
        if self.mid_lo is not None:
            hi = "inf" if self.mid_hi is None else str(self.mid_hi)
            parts.append(f"Mid({self.mid_lo}..{hi})")
        return "{" + ", ".join(parts) + "}"


def window(p: MEvent, strict: bool = True) -> QInterval:
    """Axis positions reachable from ``p`` along straight (timelike or causal) segments."""
    if p.t == 0:
        raise ValueError("window needs an off-axis event")
    a = abs(p.t)
    return QInterval(p.x - a, p.x + a, not strict, not strict)


def _crossing(p: MEvent, q: MEvent):
    if p.t == 0 or q.t == 0:
        raise ValueError("on-axis endpoints are not supported")
    if not (p.t < 0 < q.t):
        raise UnsupportedShapeError("relation queries on the cover need t_p < 0 < t_q")


def chron_base(p: MEvent, q: MEvent) -> bool:
    """``q in I+(p)`` in the punctured plane."""
    if p.t == 0 or q.t == 0:
        raise ValueError("on-axis endpoints are not supported")
    if p.t < 0 < q.t:
        # an open window cannot be exhausted by countably many punctures
        return window(p).meets(window(q))
    if q.t <= p.t:
        return False
    # same side of the axis: the straight segment never meets a puncture
    return q.t - p.t > abs(q.x - p.x)


def closed_base_future(p: MEvent, q: MEvent) -> bool:
    """``q in cl I+(p)`` in the punctured plane."""
    if p.t < 0 < q.t:
        return window(p, strict=False).meets(window(q, strict=False))
    return q.t - p.t >= abs(q.x - p.x)


def closed_base_past(p: MEvent, q: MEvent) -> bool:
    """``q in cl I-(p)``."""
    return closed_base_future(q, p)


def _floor(x: Fraction) -> int:
    return math.floor(x)


def gaps_meeting(w: QInterval) -> GapSet:
    """Every gap whose open interval meets the open interval ``w``."""
    if w.is_empty():
        return GapSet()
    a, b = w.lo, w.hi
    right = b is None or b > 0
    left = a is None or a < -1
    # Mid(k) = (-1/k, -1/(k+1)) meets (a, b) iff -1/k < b and a < -1/(k+1)
    if a is not None and a >= 0:
        return GapSet(right, left)
    if b is not None and b <= -1:
        return GapSet(right, left)
    if a is None or a < -1 or a == -1:
        k_lo = 1
    else:
        # a in (-1, 0): need k + 1 > 1/(-a)
        k_lo = max(1, _floor(1 / (-a)))
    if b is None or b >= 0:
        k_hi = None
    else:
        # b in (-1, 0): need k < 1/(-b)
        bound = 1 / (-b)
        k_hi = bound.numerator // bound.denominator
        if k_hi == bound:
            k_hi -= 1
    if k_hi is not None and k_hi < k_lo:
        return GapSet(right, left)
    return GapSet(right, left, k_lo, k_hi)


def gaps_reachable(p: MEvent, q: MEvent) -> GapSet:
    """Gaps in which a future timelike curve from ``p`` to ``q`` can cross the axis."""
    _crossing(p, q)
    return gaps_meeting(window(p).intersect(window(q)))


@dataclass(frozen=True)
class CoverPoint:
    """A point of the universal cover, for crossing queries only.

    The past endpoint of a query carries ``sheet=None`` (the fixed base lift);
    the future endpoint carries the gap its lift was reached through.
    """

    event: MEvent
    sheet: Optional[Gap] = None


def _shape(pt: CoverPoint, qt: CoverPoint) -> Gap:
    _crossing(pt.event, qt.event)
    if pt.sheet is not None:
        raise UnsupportedShapeError("the past endpoint must be the base lift (sheet=None)")
    if qt.sheet is None:
        raise UnsupportedShapeError("the future endpoint needs a sheet")
    return qt.sheet


def lifted_chron(pt: CoverPoint, qt: CoverPoint) -> bool:
    g = _shape(pt, qt)
    return g in gaps_reachable(pt.event, qt.event)


def in_closure_future(pt: CoverPoint, qt: CoverPoint) -> bool:
    """``q~ in cl I~+(p~)``: ``p`` fixed (strict window), ``q`` perturbed (closed window)."""
    g = _shape(pt, qt)
    near = g.interval.intersect(window(pt.event, strict=True))
    if near.is_empty():
        return False
    return near.closure().meets(window(qt.event, strict=False))


def in_closure_past(pt: CoverPoint, qt: CoverPoint) -> bool:
    """``p~ in cl I~-(q~)``: ``q`` fixed (strict window), ``p`` perturbed (closed window)."""
    g = _shape(pt, qt)
    near = g.interval.intersect(window(qt.event, strict=True))
    if near.is_empty():
        return False
    return near.closure().meets(window(pt.event, strict=False))


@dataclass(frozen=True)
class SheetRow:
    sheet: Gap
    future_closure: bool
    past_closure: bool

    @property
    def violated(self) -> bool:
        return self.future_closure and not self.past_closure


@dataclass(frozen=True)
class PuncturedReflectivity:
    p: MEvent
    q: MEvent
    k_max: int
    rows: tuple
    base_future_closure: bool
    base_past_closure: bool

    @property
    def base_violated(self) -> bool:
        return self.base_future_closure and not self.base_past_closure

    @property
    def violating_sheets(self) -> list:
        return [r.sheet for r in self.rows if r.violated]

    @property
    def future_sheets(self) -> list:
        return [r.sheet for r in self.rows if r.future_closure]

    @property
    def past_sheets(self) -> list:
        return [r.sheet for r in self.rows if r.past_closure]


def reflectivity_report(p: MEvent, q: MEvent, k_max: int) -> PuncturedReflectivity:
    """Per-sheet check of ``q~ in cl I~+(p~) => p~ in cl I~-(q~)``."""
    _crossing(p, q)
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    base_lift = CoverPoint(p)
    rows = []
    for g in sheets(k_max):
        qt = CoverPoint(q, g)
        rows.append(SheetRow(g, in_closure_future(base_lift, qt), in_closure_past(base_lift, qt)))
    return PuncturedReflectivity(
        p, q, k_max, tuple(rows),
        # q in cl I+(p) and p in cl I-(q), each seen from its own endpoint
        closed_base_future(p, q), closed_base_past(q, p),
    )
