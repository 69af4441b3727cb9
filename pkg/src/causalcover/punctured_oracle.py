"""Grid oracle for chronology in the punctured plane.

Timelike curves are replaced by t-monotone lattice paths: vertices on the
lattice ``(i*dt, j*dx)`` and every edge of slope ``|dx/dt| <= speed``.  Two
lattices are run.  The *strict* one uses ``speed = 1 - delta`` so every path
it finds is honestly timelike; the *loose* one uses ``speed = 1`` plus one
extra cell, so it over-approximates.  An answer is reported only when the
two agree or the strict one already succeeds; otherwise the oracle says
``None`` (inconclusive).

The axis crossing of a path is a lattice vertex at ``t = 0``; its gap is
looked up in a materialized, sorted puncture list, independently of the exact
module.  Gaps narrower than a few cells, or beyond the materialized list, are
reported as unresolvable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter1d

from .punctured import Gap, MEvent

CELLS_PER_STEP = 8
RIGHT_LABEL, LEFT_LABEL, TAIL_LABEL, PUNCTURE_LABEL = -1, -2, -3, -4


@dataclass(frozen=True)
class Lattice:
    dt: float
    dx: float
    speed: float
    slack: int  # extra cells granted on the first and last hop
    j0: int
    n: int

    @property
    def x(self) -> np.ndarray:
        return (self.j0 + np.arange(self.n)) * self.dx


def _lattice(resolution: float, speed: float, slack: int, lo: float, hi: float) -> Lattice:
    dt = resolution
    dx = speed * dt / CELLS_PER_STEP
    j0 = int(math.floor(lo / dx)) - 2 * CELLS_PER_STEP
    n = int(math.ceil(hi / dx)) + 2 * CELLS_PER_STEP - j0
    return Lattice(dt, dx, speed, slack, j0, n)


def _reach_axis(lat: Lattice, starts) -> np.ndarray:
    """Axis vertices reachable from any of ``starts`` (``(t, x)`` pairs, any side of the axis).

    All starts are propagated together: each joins the front at its first
    lattice time, then the front is dilated one lattice step at a time.
    """
    seeds = {}
    for t, x in starts:
        a = abs(t)
        steps = int(math.ceil(a / lat.dt)) - 1  # full lattice steps after the first hop
        reach = lat.speed * (a - steps * lat.dt) + lat.slack * lat.dx
        hop = np.abs(lat.x - x) <= reach * (1 + 1e-12)
        seeds[steps] = seeds[steps] | hop if steps in seeds else hop
    m = np.zeros(lat.n, np.uint8)
    for s in range(max(seeds, default=-1), -1, -1):
        if s in seeds:
            m |= seeds[s]
        if s > 0 and m.any():
            m = maximum_filter1d(m, size=2 * CELLS_PER_STEP + 1, mode="constant")
    return m.astype(bool)


def _reach_event(lat: Lattice, p: MEvent, q: MEvent) -> bool:
    """Same-side query: is ``q`` reachable from ``p`` without meeting the axis."""
    tp, tq = float(p.t), float(q.t)
    if tq <= tp:
        return False
    i_first = math.floor(tp / lat.dt) + 1
    i_last = math.ceil(tq / lat.dt) - 1
    if i_last < i_first:
        bound = lat.speed * (tq - tp) + 2 * lat.slack * lat.dx
        return abs(float(q.x) - float(p.x)) <= bound
    reach = lat.speed * (i_first * lat.dt - tp) + lat.slack * lat.dx
    mask = np.abs(lat.x - float(p.x)) <= reach * (1 + 1e-12)
    m = mask.astype(np.uint8)
    for _ in range(i_last - i_first):
        m = maximum_filter1d(m, size=2 * CELLS_PER_STEP + 1, mode="constant")
    last = lat.speed * (tq - i_last * lat.dt) + lat.slack * lat.dx
    return bool(np.any(m.astype(bool) & (np.abs(lat.x - float(q.x)) <= last * (1 + 1e-12))))


def axis_labels(x: np.ndarray, dx: float) -> tuple:
    """Gap label per axis vertex, plus the materialized list size."""
    kmax = int(math.ceil(1.0 / dx))
    punct = np.concatenate([-1.0 / np.arange(1, kmax + 1), [0.0]])  # ascending
    labels = np.full(x.shape, TAIL_LABEL, dtype=np.int64)
    labels[x > 0] = RIGHT_LABEL
    labels[x < -1] = LEFT_LABEL
    inner = (x > -1) & (x < 0)
    idx = np.searchsorted(punct, x[inner])
    # punct[idx-1] < x < punct[idx]; that is the gap between -1/idx and -1/(idx+1)
    k = idx.astype(np.int64)
    k[k >= kmax] = TAIL_LABEL
    labels[inner] = k
    tol = 0.5 * dx
    j = np.clip(np.searchsorted(punct, x), 1, len(punct) - 1)
    close = np.minimum(np.abs(x - punct[j - 1]), np.abs(x - punct[j])) < tol
    on_axis = (x >= -1 - tol) & (x <= tol)
    labels[close & on_axis] = PUNCTURE_LABEL
    return labels, kmax


def gap_label(g: Gap) -> int:
    return {"Right": RIGHT_LABEL, "Left": LEFT_LABEL}.get(g.kind, g.k)


def resolvable(g: Gap, dx: float) -> bool:
    if g.kind != "Mid":
        return True
    return 1.0 / (g.k * (g.k + 1)) >= CELLS_PER_STEP * dx


def _ball(e: MEvent, radius: float, n_ring: int = 16):
    if radius == 0:
        return [(float(e.t), float(e.x))]
    pts = [(float(e.t), float(e.x))]
    for rr in (radius, 0.5 * radius):
        for a in np.linspace(0, 2 * np.pi, n_ring, endpoint=False):
            pts.append((float(e.t) + rr * np.cos(a), float(e.x) + rr * np.sin(a)))
    return pts


class CrossingOracle:
    """Labels of axis vertices reachable from both ends, for strict and loose lattices.

    ``perturb`` names the endpoint (``"p"`` or ``"q"``) replaced by a ball of
    radius ``radius``, which turns chronology into closure membership.
    """

    def __init__(self, p: MEvent, q: MEvent, resolution: float = 1e-3, delta=None,
                 perturb=None, radius: float = 0.0):
        if not (p.t < 0 < q.t):
            raise ValueError("crossing oracle needs t_p < 0 < t_q")
        self.resolution = resolution
        delta = 0.1 * resolution if delta is None else delta
        pad = radius + 0.1
        lo = min(float(p.x) - abs(float(p.t)), float(q.x) - float(q.t)) - pad
        hi = max(float(p.x) + abs(float(p.t)), float(q.x) + float(q.t)) + pad
        self.found = {}
        for mode, speed, slack in (("strict", 1.0 - delta, 0), ("loose", 1.0, 1)):
            lat = _lattice(resolution, speed, slack, lo, hi)
            sides = []
            for name, e in (("p", p), ("q", q)):
                pts = _ball(e, radius) if perturb == name else _ball(e, 0.0)
                pts = [(t, x) for t, x in pts if t != 0 and (t < 0) == (name == "p")]
                sides.append(_reach_axis(lat, pts))
            both = sides[0] & sides[1]
            labels, kmax = axis_labels(lat.x[both], lat.dx)
            self.found[mode] = set(labels.tolist())
            self.dx = lat.dx
            self.kmax = kmax

    def decide(self, g: Gap):
        if not resolvable(g, self.dx) or (g.kind == "Mid" and g.k >= self.kmax):
            return None
        label = gap_label(g)
        if label in self.found["strict"]:
            return True
        if label not in self.found["loose"]:
            return False
        return None


def oracle_grid_search(p: MEvent, q: MEvent, sheet=None, resolution: float = 1e-3):
    """Lattice search for a future timelike curve from ``p`` to ``q`` crossing in ``sheet``.

    Returns ``True``/``False`` or ``None`` when the lattice cannot decide.
    Same-side pairs (no crossing) ignore ``sheet``.
    """
    if (p.t < 0) == (q.t < 0):
        span = abs(float(q.t - p.t)) + 0.1
        lo, hi = float(min(p.x, q.x)) - span, float(max(p.x, q.x)) + span
        strict = _reach_event(_lattice(resolution, 1 - 0.1 * resolution, 0, lo, hi), p, q)
        loose = _reach_event(_lattice(resolution, 1.0, 1, lo, hi), p, q)
        if strict:
            return True
        return False if not loose else None
    if q.t < 0 < p.t:
        return False
    return CrossingOracle(p, q, resolution).decide(sheet)


def oracle_closure(p: MEvent, q: MEvent, sheets, direction: str, resolution: float = 1e-3,
                   radius=None) -> dict:
    """Endpoint-ball relaxation of the lattice search, for closure memberships.

    ``direction="future"`` perturbs ``q`` (``q~ in cl I~+(p~)``);
    ``direction="past"`` perturbs ``p`` (``p~ in cl I~-(q~)``).
    """
    if direction not in ("future", "past"):
        raise ValueError("direction must be 'future' or 'past'")
    radius = 4 * resolution if radius is None else radius
    oracle = CrossingOracle(p, q, resolution, perturb="q" if direction == "future" else "p",
                            radius=radius)
    return {g: oracle.decide(g) for g in sheets}
