"""Numerical check of the conformal-Killing route to past reflectivity.

A past-complete conformal timelike Killing field makes a spacetime past
reflecting, and the lifted field keeps all three properties on every Lorentz
covering.  This module checks the three properties numerically:

* conformal Killing: ``L_X g = sigma g`` via central differences, with sigma
  fitted pointwise by least squares;
* timelike: ``g(X, X) < 0`` at the samples;
* past complete: the backward flow of ``X`` stays in the domain up to a
  parameter budget (a probe, so it can refute completeness but only certify
  it relative to the budget).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import RK45

DEFAULT_H = 1e-4
DEFAULT_TOL = 1e-6
GUARD_RADIUS = 1e-6


class MetricError(ValueError):
    pass


@dataclass
class MetricField:
    """Lorentz metric components in one chart.

    ``clearance(pt)`` returns the distance from ``pt`` to the excised set
    (``inf`` when nothing is removed); it is what the completeness probe
    watches.
    """

    dim: int
    components: Callable[[np.ndarray], np.ndarray]
    name: str = "metric"
    chart: str = "(t, x, ...)"
    clearance: Callable[[np.ndarray], float] = lambda pt: math.inf

    def __call__(self, pt) -> np.ndarray:
        return np.asarray(self.components(np.asarray(pt, float)), float)


@dataclass
class VectorFieldCandidate:
    components: Callable[[np.ndarray], np.ndarray]
    name: str = "X"

    def __call__(self, pt) -> np.ndarray:
        return np.asarray(self.components(np.asarray(pt, float)), float)


def check_signature(g: np.ndarray) -> None:
    ev = np.linalg.eigvalsh(0.5 * (g + g.T))
    if not (ev[0] < 0 and np.all(ev[1:] > 0)):
        raise MetricError(f"metric is not Lorentzian (-,+,...,+) here: eigenvalues {ev}")


def _jacobian(f, pt: np.ndarray, h: float) -> np.ndarray:
    """``J[k] = d f / d x^k`` by second-order central differences."""
    cols = []
    for k in range(len(pt)):
        e = np.zeros_like(pt)
        e[k] = h
        cols.append((f(pt + e) - f(pt - e)) / (2 * h))
    return np.stack(cols)


@dataclass(frozen=True)
class Residual:
    residual: float
    sigma: float
    lie: np.ndarray


def lie_derivative_residual(X: VectorFieldCandidate, g: MetricField, pt, h: float = DEFAULT_H) -> Residual:
    """``||L_X g - sigma g||_F`` with the best-fitting ``sigma`` at ``pt``."""
    if not h > 0:
        raise ValueError("step must be positive")
    pt = np.asarray(pt, float)
    g0 = g(pt)
    check_signature(g0)
    x0 = X(pt)
    dg = _jacobian(g, pt, h)  # dg[k, i, j] = d_k g_ij
    dX = _jacobian(X, pt, h)  # dX[i, k] = d_i X^k
    # (L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k
    lie = np.einsum("k,kij->ij", x0, dg) + dX @ g0 + (dX @ g0).T
    sigma = float(np.sum(lie * g0) / np.sum(g0 * g0))
    return Residual(float(np.linalg.norm(lie - sigma * g0)), sigma, lie)


@dataclass
class KillingCheck:
    passed: bool
    max_residual: float
    sigma_range: tuple
    worst_point: Optional[tuple]
    non_timelike: list = field(default_factory=list)
    bad_residual: list = field(default_factory=list)


def is_conformal_timelike_killing(X: VectorFieldCandidate, g: MetricField, samples,
                                  h: float = DEFAULT_H, tol: float = DEFAULT_TOL) -> KillingCheck:
    samples = [np.asarray(s, float) for s in samples]
    if not samples:
        raise ValueError("need at least one sample point")
    worst, worst_pt, sigmas = -1.0, None, []
    non_timelike, bad = [], []
    for pt in samples:
        res = lie_derivative_residual(X, g, pt, h)
        sigmas.append(res.sigma)
        if res.residual > worst:
            worst, worst_pt = res.residual, tuple(pt)
        if not res.residual < tol:
            bad.append((tuple(pt), res.residual))
        v = X(pt)
        norm = float(v @ g(pt) @ v)
        if not norm < 0:
            non_timelike.append((tuple(pt), norm))
    return KillingCheck(not (bad or non_timelike), worst, (min(sigmas), max(sigmas)),
                        worst_pt, non_timelike, bad)


def convergence_slope(X, g, pt, steps=(1e-2, 1e-3, 1e-4), floor: float = 1e-12):
    """Log-log slope of the residual against the step size.

    Returns ``inf`` when every residual is at the rounding floor, i.e. the
    difference quotients are exact for this field.
    """
    res = np.array([lie_derivative_residual(X, g, pt, h).residual for h in steps])
    if np.all(res <= floor):
        return math.inf, res
    use = res > floor
    if use.sum() < 2:
        return math.inf, res
    slope = np.polyfit(np.log(np.asarray(steps)[use]), np.log(res[use]), 1)[0]
    return float(slope), res


class ProbeStatus(enum.Enum):
    SURVIVED = "Survived"
    ESCAPED = "EscapedDomain"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ProbeResult:
    status: ProbeStatus
    budget: float
    guard_radius: float
    escapes: list = field(default_factory=list)  # (start, parameter, point)
    failures: list = field(default_factory=list)


def probe_past_completeness(X: VectorFieldCandidate, g: MetricField, starts, T: float,
                            guard_radius: float = GUARD_RADIUS, atol: float = 1e-9,
                            escape_radius: float = 1e8) -> ProbeResult:
    """Integrate the backward flow of ``X`` from each start up to parameter ``-T``.

    Steps are capped so that no step can travel further than 90% of the
    current clearance, so an excised point cannot be jumped over.
    """
    if T < 0:
        raise ValueError("parameter budget must be non-negative")
    out = ProbeResult(ProbeStatus.SURVIVED, T, guard_radius)
    if T == 0:
        return out

    def rhs(_s, y):
        return -X(y)

    for start in starts:
        y0 = np.asarray(start, float)
        got = _flow_until_exit(rhs, g.clearance, y0, T, guard_radius, atol, escape_radius)
        if got[0] == "escaped":
            out.escapes.append((tuple(y0), -got[1], tuple(got[2])))
        elif got[0] == "failed":
            out.failures.append((tuple(y0), got[1]))
    if out.escapes:
        out.status = ProbeStatus.ESCAPED
    elif out.failures:
        out.status = ProbeStatus.INCONCLUSIVE
    return out


def _flow_until_exit(rhs, clearance, y0, T, guard_radius, atol, escape_radius):
    c = clearance(y0)
    if c <= guard_radius:
        return "escaped", 0.0, y0
    solver = RK45(rhs, 0.0, y0, T, atol=atol, rtol=1e-9)
    while solver.status == "running":
        speed = float(np.linalg.norm(rhs(solver.t, solver.y)))
        if speed > 0 and math.isfinite(c):
            solver.max_step = max(0.9 * c / speed, 1e-15)
        msg = solver.step()
        if solver.status == "failed":
            return "failed", str(msg)
        c = clearance(solver.y)
        if c <= guard_radius:
            return "escaped", float(solver.t), solver.y.copy()
        if not np.all(np.isfinite(solver.y)) or np.linalg.norm(solver.y) > escape_radius:
            return "failed", "trajectory left every bounded region"
    return "survived", float(solver.t), solver.y.copy()


class CertificateVerdict(enum.Enum):
    CERTIFIED = "CertifiedPastReflecting"
    FAILED = "Failed"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Certificate:
    verdict: CertificateVerdict
    reason: str
    killing: KillingCheck
    probe: Optional[ProbeResult]
    covering_clause: bool
    budget: float
    witness: Optional[tuple] = None

    def as_dict(self) -> dict:
        k = self.killing
        d = {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "covering_clause": self.covering_clause,
            "max_residual": k.max_residual,
            "sigma_min": k.sigma_range[0],
            "sigma_max": k.sigma_range[1],
            "probe_status": None if self.probe is None else self.probe.status.value,
            "probe_budget": self.budget,
            "witness": None if self.witness is None else [float(v) for v in self.witness],
        }
        if self.verdict is CertificateVerdict.CERTIFIED:
            d["scope"] = "certified relative to probe budget"
        return d


def certify_past_reflectivity(X: VectorFieldCandidate, g: MetricField, samples, starts,
                              T: float = 1e3, h: float = DEFAULT_H, tol: float = DEFAULT_TOL,
                              guard_radius: float = GUARD_RADIUS) -> Certificate:
    kc = is_conformal_timelike_killing(X, g, samples, h, tol)
    if kc.non_timelike:
        pt, _ = kc.non_timelike[0]
        return Certificate(CertificateVerdict.FAILED, "not timelike", kc, None, False, T, pt)
    if kc.bad_residual:
        pt, _ = kc.bad_residual[0]
        return Certificate(CertificateVerdict.FAILED, "not conformal Killing", kc, None, False, T, pt)
    probe = probe_past_completeness(X, g, starts, T, guard_radius)
    if probe.status is ProbeStatus.ESCAPED:
        return Certificate(CertificateVerdict.FAILED, "incomplete flow", kc, probe, False, T,
                           probe.escapes[0][2])
    if probe.status is ProbeStatus.INCONCLUSIVE:
        return Certificate(CertificateVerdict.INCONCLUSIVE, probe.failures[0][1], kc, probe, False, T)
    return Certificate(CertificateVerdict.CERTIFIED, "conformal timelike Killing, past flow survived",
                       kc, probe, True, T)
