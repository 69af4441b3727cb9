"""Causal relations of static products ``(R x Sigma, -dt^2 + kappa)``.

A causal curve from ``(t_p, x)`` to ``(t_q, y)`` exists iff the base admits a
curve from ``x`` to ``y`` of length at most ``t_q - t_p``.  So everything is
decided by comparing the base distance infimum ``d`` with the time gap:
``d < dt`` gives a timelike reparametrization, ``d == dt`` needs a minimizer
actually realized in the base, and an unrealized ``d == dt`` leaves the pair
only in the closure of the causal relation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Optional, Protocol

import numpy as np

from .cone import GeodesicResult
from .intervals import Interval, Ordering, compare, exact_diff


class BaseGeometry(Protocol):
    def distance(self, x, y) -> GeodesicResult: ...

    def is_geodesically_convex(self): ...

    def sample_point(self, rng: np.random.Generator, **kw): ...


class Verdict(enum.Enum):
    EQUAL = "Equal"
    CHRONOLOGICAL = "Chronological"
    CAUSAL_NOT_CHRONOLOGICAL = "CausalNotChronological"
    CLOSURE_ONLY = "ClosureOnly"
    UNRELATED = "Unrelated"
    INDETERMINATE = "Indeterminate"


# height in the relation lattice; INDETERMINATE has no rank
RANK = {
    Verdict.UNRELATED: 0,
    Verdict.CLOSURE_ONLY: 1,
    Verdict.CAUSAL_NOT_CHRONOLOGICAL: 1,
    Verdict.CHRONOLOGICAL: 2,
    Verdict.EQUAL: 2,
}


@dataclass(frozen=True)
class Event:
    t: float
    x: Any


@dataclass(frozen=True)
class CausalVerdict:
    verdict: Verdict
    distance: Optional[GeodesicResult] = None
    dt: Optional[float] = None

    @property
    def in_closure(self) -> bool:
        return self.verdict not in (Verdict.UNRELATED, Verdict.INDETERMINATE)

    @property
    def causal(self) -> bool:
        return self.verdict in (Verdict.EQUAL, Verdict.CHRONOLOGICAL, Verdict.CAUSAL_NOT_CHRONOLOGICAL)


def _same_base(p: Event, q: Event):
    if type(p.x) is not type(q.x):
        raise ValueError("events live over different base geometries")


def classify(p: Event, q: Event, base: BaseGeometry) -> CausalVerdict:
    _same_base(p, q)
    dt = q.t - p.t
    d = base.distance(p.x, q.x)
    if dt == 0 and d.bounds.is_point and d.infimum == 0.0:
        return CausalVerdict(Verdict.EQUAL, d, dt)
    if dt < 0:
        return CausalVerdict(Verdict.UNRELATED, d, dt)

    # exact_diff widens dt by one ulp whenever q.t - p.t rounds
    order = compare(d.bounds, exact_diff(q.t, p.t))
    if order is Ordering.LESS:
        return CausalVerdict(Verdict.CHRONOLOGICAL, d, dt)
    if order is Ordering.GREATER:
        return CausalVerdict(Verdict.UNRELATED, d, dt)
    if order is Ordering.EQUAL:
        if d.attained is True:
            return CausalVerdict(Verdict.CAUSAL_NOT_CHRONOLOGICAL, d, dt)
        if d.attained is False:
            return CausalVerdict(Verdict.CLOSURE_ONLY, d, dt)
    return CausalVerdict(Verdict.INDETERMINATE, d, dt)


@dataclass(frozen=True)
class ClosureVerdict:
    closed: Optional[bool]
    rule: str
    witness: Optional[tuple] = None
    witness_verdict: Optional[CausalVerdict] = None


def is_causal_relation_closed(base: BaseGeometry) -> ClosureVerdict:
    """Closedness of J via geodesic convexity of the base (Hedicke-Suhr)."""
    conv = base.is_geodesically_convex()
    rule = "Hedicke-Suhr: J closed iff base geodesically convex; " + conv.rule
    if conv.convex is not False:
        return ClosureVerdict(conv.convex, rule)
    x, y = conv.witness
    d = base.distance(x, y)
    p, q = Event(0.0, x), Event(d.infimum, y)
    return ClosureVerdict(False, rule, (p, q), classify(p, q, base))


def in_closed_future(p: Event, q: Event, base: BaseGeometry):
    """``q in cl I+(p)``, i.e. ``d(x_p, x_q) <= t_q - t_p``; ``None`` if undecidable."""
    return _within(base.distance(p.x, q.x), exact_diff(q.t, p.t))


def in_closed_past(p: Event, q: Event, base: BaseGeometry):
    """``q in cl I-(p)``, measured with the distance from ``p``'s side."""
    return _within(base.distance(p.x, q.x), exact_diff(p.t, q.t))


def _within(d: GeodesicResult, dt: Interval):
    order = compare(d.bounds, dt)
    if order in (Ordering.LESS, Ordering.EQUAL):
        return True
    if order is Ordering.GREATER:
        return False
    return None


@dataclass
class ReflectivityReport:
    n: int
    seed: int
    past_violations: list = field(default_factory=list)
    future_violations: list = field(default_factory=list)
    undecided: int = 0
    closure_pairs: int = 0

    @property
    def violations(self) -> int:
        return len(self.past_violations) + len(self.future_violations)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "past_violations": len(self.past_violations),
            "future_violations": len(self.future_violations),
            "undecided": self.undecided,
            "closure_pairs": self.closure_pairs,
        }


def sample_pair(base: BaseGeometry, seed: int, index: int, dt_window=(-4.0, 4.0),
                boundary_fraction=0.25, **kw):
    """Deterministic random event pair number ``index`` of the stream ``seed``.

    A ``boundary_fraction`` of the pairs get ``|dt|`` equal to the base distance
    infimum, which is where closure and relation can differ.
    """
    rng = np.random.default_rng([seed, index])
    x = base.sample_point(rng, **kw)
    y = base.sample_point(rng, **kw)
    if rng.uniform() < boundary_fraction:
        dt = base.distance(x, y).infimum * (1.0 if rng.uniform() < 0.5 else -1.0)
    else:
        dt = float(rng.uniform(*dt_window))
    return Event(0.0, x), Event(dt, y)


def check_reflectivity_samples(base: BaseGeometry, n: int, seed: int = 0, dt_window=(-4.0, 4.0),
                               boundary_fraction=0.25, **sample_kw) -> ReflectivityReport:
    """Test both reflectivity implications on ``n`` random event pairs.

    Past: ``q in cl I+(p) => p in cl I-(q)``; future is the time dual.  The
    second membership is computed from ``q``'s side so that an asymmetric
    distance would show up as a violation.
    """
    if n < 0:
        raise ValueError("sample count must be non-negative")
    rep = ReflectivityReport(n=n, seed=seed)
    for i in range(n):
        p, q = sample_pair(base, seed, i, dt_window, boundary_fraction, **sample_kw)
        fwd = in_closed_future(p, q, base)
        back = in_closed_past(q, p, base)
        past_q = in_closed_past(p, q, base)
        fut_p = in_closed_future(q, p, base)
        if None in (fwd, back, past_q, fut_p):
            rep.undecided += 1
            continue
        rep.closure_pairs += fwd or past_q
        if fwd and not back:
            rep.past_violations.append((p, q))
        if past_q and not fut_p:
            rep.future_violations.append((p, q))
    return rep

