"""Metric and vector-field fixtures for the criterion checker."""

from __future__ import annotations

import math

import numpy as np

from .criterion import MetricField, VectorFieldCandidate


def minkowski(n: int = 2) -> MetricField:
    eta = np.diag([-1.0] + [1.0] * (n - 1))
    return MetricField(n, lambda pt: eta, name=f"minkowski{n}d", chart="(t, x^1, ...)")


def puncture_clearance(pt) -> float:
    """Euclidean distance from ``(t, x)`` to ``{(0, 0)} U {(0, -1/k)}``."""
    t, x = float(pt[0]), float(pt[1])
    cands = [0.0]
    if x <= -1.0:
        cands.append(-1.0)
    elif x < 0.0:
        k = -1.0 / x
        for kk in {max(1, math.floor(k)), math.ceil(k), math.floor(k) + 1}:
            cands.append(-1.0 / kk)
    return min(math.hypot(t, x - c) for c in cands)


def punctured_plane() -> MetricField:
    """2D Minkowski minus the origin and the points ``(0, -1/k)``."""
    g = minkowski(2)
    g.name = "punctured-plane"
    g.clearance = puncture_clearance
    return g


def line_removed_minkowski(n: int, centers) -> MetricField:
    """``n``-dimensional Minkowski minus the static lines ``{(t, z_j)}``."""
    centers = [np.asarray(c, float) for c in centers]
    if any(c.shape != (n - 1,) for c in centers):
        raise ValueError("line positions must be spatial points")
    g = minkowski(n)
    g.name = f"minkowski{n}d-minus-{len(centers)}-lines"
    g.clearance = lambda pt: min(float(np.linalg.norm(np.asarray(pt[1:]) - c)) for c in centers)
    return g


def cone_spacetime() -> MetricField:
    """``-dt^2 + dr^2 + r^2 dpsi^2`` in the developed chart ``(t, r, psi)``."""
    return MetricField(
        3,
        lambda pt: np.diag([-1.0, 1.0, pt[1] ** 2]),
        name="cone-spacetime",
        chart="(t, r, psi)",
        clearance=lambda pt: float(pt[1]),
    )


def conformastationary(dim: int, g0, beta0, omega0, lam0, name="conformastationary") -> MetricField:
    """``Lambda0^2 (-beta^2 dt^2 + omega dt + dt omega + g0)`` from component evaluators.

    ``g0(x)``, ``beta0(x)``, ``omega0(x)`` act on the spatial point, ``lam0(t, x)``
    on the full point.
    """

    def comps(pt):
        t, x = pt[0], pt[1:]
        m = np.empty((dim, dim))
        w = np.asarray(omega0(x), float)
        m[0, 0] = -beta0(x) ** 2
        m[0, 1:] = w
        m[1:, 0] = w
        m[1:, 1:] = g0(x)
        return lam0(t, x) ** 2 * m

    return MetricField(dim, comps, name=name)


def sample_conformastationary() -> MetricField:
    """A 3D conformastationary metric with every datum non-trivial."""
    return conformastationary(
        3,
        g0=lambda x: np.array([[1.0 + 0.1 * x[0] ** 2, 0.05 * x[1]], [0.05 * x[1], 1.0]]),
        beta0=lambda x: 1.0 + 0.2 * math.sin(x[0]),
        omega0=lambda x: np.array([0.1 * x[1], 0.05 * math.cos(x[0])]),
        lam0=lambda t, x: math.exp(0.3 * t + 0.1 * math.sin(t) * x[0]),
        name="sample-conformastationary",
    )


def sample_conformastationary_sigma(pt) -> float:
    """Closed form of ``d_t log Lambda0^2`` for :func:`sample_conformastationary`."""
    return 2.0 * (0.3 + 0.1 * math.cos(pt[0]) * pt[1])


def conformal_minkowski(n: int, log_omega, name="conformal-minkowski") -> MetricField:
    """``exp(2 log_omega) * eta``."""
    eta = np.diag([-1.0] + [1.0] * (n - 1))
    return MetricField(n, lambda pt: math.exp(2.0 * log_omega(pt)) * eta, name=name)


def time_translation(n: int) -> VectorFieldCandidate:
    e = np.zeros(n)
    e[0] = 1.0
    return VectorFieldCandidate(lambda pt: e, name="d_t")


def dilation_in_time(n: int) -> VectorFieldCandidate:
    def comps(pt):
        v = np.zeros(n)
        v[0] = pt[0]
        return v

    return VectorFieldCandidate(comps, name="t d_t")


def translation(n: int, axis: int) -> VectorFieldCandidate:
    e = np.zeros(n)
    e[axis] = 1.0
    return VectorFieldCandidate(lambda pt: e, name=f"d_x{axis}")


def drifting_time_translation(speed: float = 0.5) -> VectorFieldCandidate:
    """``d_t + speed * d_x`` written in the polar chart ``(t, r, psi)``.

    Killing for the flat cone metric, with non-constant components, so its
    difference quotients carry genuine truncation error.
    """

    def comps(pt):
        _, r, psi = pt
        return np.array([1.0, speed * math.cos(psi), -speed * math.sin(psi) / r])

    return VectorFieldCandidate(comps, name=f"d_t + {speed} d_x (polar)")
