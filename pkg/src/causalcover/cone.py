"""Geodesics on a flat cone without its apex, and on its cyclic and universal covers.

Every geometry is handled in developed polar coordinates ``(r, psi)``: the
induced metric is ``dr**2 + r**2 dpsi**2``, so geodesics are straight planar
segments once the sector (or the strip of copies of it) is laid flat.  Two
points are joined by a segment avoiding the apex exactly when some admissible
winding brings their angular separation below pi; otherwise the infimum of
lengths is ``r_p + r_q`` and is not attained because the apex is removed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .intervals import (
    DEFAULT_EPS,
    Interval,
    Ordering,
    compare,
    compare_to_pi,
    exact_diff,
    exact_sum,
)

TWO_PI = 2.0 * math.pi


class ConeKind(enum.Enum):
    BASE = "BaseCone"
    CYCLIC = "CyclicCover"
    UNIVERSAL = "UniversalCover"


def sector_angle(A: float) -> float:
    """Total angle of the developed sector of the cone ``(A u cos v, A u sin v, u)``."""
    if not A > 0:
        raise ValueError(f"cone slope must be positive, got {A!r}")
    return 2.0 * A * math.pi / math.sqrt(1.0 + A * A)


@dataclass(frozen=True)
class ConePoint:
    r: float
    psi: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"cone points need r > 0 (apex is removed), got r={self.r!r}")


@dataclass(frozen=True)
class ApexRoute:
    """Infimal route through the removed apex; never realized by a curve."""

    infimum: float


@dataclass(frozen=True)
class Undecided:
    """Separation within rounding of pi: segment and apex route are indistinguishable."""

    candidates: tuple


@dataclass(frozen=True)
class GeodesicResult:
    infimum: float
    bounds: Interval
    attained: Optional[bool]
    winding: Optional[int] = None

    @property
    def witness(self):
        if self.attained is None:
            return None
        return self.winding if self.attained else "ApexRoute"

    @property
    def determinate(self) -> bool:
        return self.attained is not None


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: Optional[bool]
    rule: str
    classical_sufficient: bool
    witness: Optional[tuple] = None
    witness_infimum: Optional[float] = None


def _chord(r_p: float, r_q: float, dpsi: float) -> float:
    # law of cosines written to avoid cancellation at small separations
    s = math.sin(0.5 * dpsi)
    return math.sqrt((r_p - r_q) ** 2 + 4.0 * r_p * r_q * s * s)


def segment_length(r_p: float, r_q: float, dpsi: float, eps: float = DEFAULT_EPS):
    """Length of the developed straight segment, or the apex route when none exists.

    Returns a float when ``|dpsi| < pi``, an :class:`ApexRoute` when
    ``|dpsi| >= pi`` and an :class:`Undecided` when ``|dpsi|`` is within
    rounding of pi.
    """
    if not (r_p > 0 and r_q > 0):
        raise ValueError("segment_length needs positive radii")
    order = compare_to_pi(abs(dpsi), eps)
    if order is Ordering.LESS:
        return _chord(r_p, r_q, dpsi)
    if order is Ordering.GREATER:
        return ApexRoute(r_p + r_q)
    return Undecided((_chord(r_p, r_q, dpsi), r_p + r_q))


@dataclass(frozen=True)
class ConeGeometry:
    """A flat cone, a finite cyclic cover of one, or the universal cover.

    ``base_angle`` is the total angle of the underlying cone; the developed
    period of a cyclic cover is ``fold * base_angle``.  The universal cover
    keeps ``base_angle`` only to place witnesses and draw diagrams.
    """

    kind: ConeKind
    base_angle: float
    fold: Optional[int] = None
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not 0 < self.base_angle < TWO_PI:
            raise ValueError(f"base cone angle must lie in (0, 2pi), got {self.base_angle!r}")
        if self.kind is ConeKind.CYCLIC:
            if self.fold is None or int(self.fold) != self.fold or self.fold < 1:
                raise ValueError(f"cyclic cover needs a positive integer fold, got {self.fold!r}")
        elif self.fold is not None:
            raise ValueError("fold is only meaningful for a cyclic cover")

    @classmethod
    def base(cls, angle: float, eps: float = DEFAULT_EPS) -> "ConeGeometry":
        return cls(ConeKind.BASE, angle, eps=eps)

    @classmethod
    def from_slope(cls, A: float, eps: float = DEFAULT_EPS) -> "ConeGeometry":
        return cls.base(sector_angle(A), eps=eps)

    @classmethod
    def cyclic(cls, base_angle: float, fold: int, eps: float = DEFAULT_EPS) -> "ConeGeometry":
        return cls(ConeKind.CYCLIC, base_angle, fold=fold, eps=eps)

    @classmethod
    def universal(cls, base_angle: float, eps: float = DEFAULT_EPS) -> "ConeGeometry":
        return cls(ConeKind.UNIVERSAL, base_angle, eps=eps)

    @property
    def angle(self) -> Optional[float]:
        """Developed period; ``None`` on the universal cover."""
        if self.kind is ConeKind.BASE:
            return self.base_angle
        if self.kind is ConeKind.CYCLIC:
            return self.fold * self.base_angle
        return None

    @property
    def periodic(self) -> bool:
        return self.kind is not ConeKind.UNIVERSAL

    def describe(self) -> dict:
        return {
            "kind": self.kind.value,
            "base_angle": self.base_angle,
            "fold": self.fold,
            "angle": self.angle,
        }

    def windings(self, p: ConePoint, q: ConePoint) -> range:
        if not self.periodic:
            return range(0, 1)
        theta = self.angle
        centre = -round((q.psi - p.psi) / theta)
        bound = math.ceil(math.pi / theta) + 1
        return range(centre - bound, centre + bound + 1)

    def developed_separation(self, p: ConePoint, q: ConePoint, w: int = 0) -> float:
        if not self.periodic:
            if w != 0:
                raise ValueError("the universal cover has no winding freedom")
            return q.psi - p.psi
        return (q.psi - p.psi) + w * self.angle

    def distance(self, p: ConePoint, q: ConePoint) -> GeodesicResult:
        best_w, best_d = None, math.inf
        for w in self.windings(p, q):
            d = abs(self.developed_separation(p, q, w))
            if d < best_d or (d == best_d and abs(w) < abs(best_w)):
                best_w, best_d = w, d

        if best_d == 0.0:
            if p.r == q.r:
                return GeodesicResult(0.0, Interval.point(0.0), True, best_w)
            b = exact_diff(max(p.r, q.r), min(p.r, q.r))
            return GeodesicResult(abs(p.r - q.r), b, True, best_w)

        apex = exact_sum(p.r, q.r)
        order = compare_to_pi(best_d, self.eps)
        if order is Ordering.LESS:
            length = _chord(p.r, q.r, best_d)
            return GeodesicResult(length, Interval.around(length, self.eps), True, best_w)
        if order is Ordering.GREATER:
            return GeodesicResult(p.r + q.r, apex, False)
        chord = Interval.around(_chord(p.r, q.r, best_d), self.eps)
        hull = Interval(min(chord.lo, apex.lo), max(chord.hi, apex.hi))
        return GeodesicResult(p.r + q.r, hull, None)

    def is_geodesically_convex(self) -> ConvexityVerdict:
        classical_ok = compare_to_pi(self.base_angle, self.eps) is Ordering.LESS
        if not self.periodic:
            a, b = self.universal_witness()
            return ConvexityVerdict(False, "universal cover: never convex", classical_ok,
                                    (a, b), self.distance(a, b).infimum)
        theta = self.angle
        two_pi = Interval.around(TWO_PI, self.eps)
        order = compare(Interval.around(theta, self.eps), two_pi)
        rule = "derived: convex iff developed angle < 2pi"
        if order is Ordering.LESS:
            return ConvexityVerdict(True, rule, classical_ok and self.kind is ConeKind.BASE)
        if order is Ordering.GREATER:
            a, b = ConePoint(1.0, 0.0), ConePoint(1.0, 0.5 * theta)
            return ConvexityVerdict(False, rule, classical_ok and self.kind is ConeKind.BASE,
                                    (a, b), self.distance(a, b).infimum)
        return ConvexityVerdict(None, rule, classical_ok and self.kind is ConeKind.BASE)

    def universal_witness(self) -> tuple:
        # the unwrapped class [gamma_1]: a on a side, b on the bisector of the next copy
        psi = 1.5 * self.base_angle
        if compare_to_pi(psi, self.eps) is not Ordering.GREATER:
            psi = 1.5 * math.pi
        return ConePoint(1.0, 0.0), ConePoint(1.0, psi)

    def sample_point(self, rng: np.random.Generator, r_range=(0.1, 10.0), psi_window=None) -> ConePoint:
        """Log-uniform radius, uniform developed angle."""
        lo, hi = r_range
        r = float(math.exp(rng.uniform(math.log(lo), math.log(hi))))
        if psi_window is None:
            psi_window = (0.0, self.angle) if self.periodic else (-TWO_PI, TWO_PI)
        return ConePoint(r, float(rng.uniform(*psi_window)))


def developed_separation(p: ConePoint, q: ConePoint, w: int, geom: ConeGeometry) -> float:
    return geom.developed_separation(p, q, w)


def distance(p: ConePoint, q: ConePoint, geom: ConeGeometry) -> GeodesicResult:
    return geom.distance(p, q)


def is_geodesically_convex(geom: ConeGeometry) -> ConvexityVerdict:
    return geom.is_geodesically_convex()
