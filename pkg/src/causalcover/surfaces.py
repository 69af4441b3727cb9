"""Null convergences of codimension-two surfaces in a ``t = 0`` slice of Minkowski space.

Mean curvature is the *trace* of the second fundamental form (not divided by
``n - 2``); only the signs of ``k+`` and ``k-`` are convention-free, the
magnitudes carry this choice, which is recorded in every result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

CONVENTION = "H = trace of second fundamental form (unaveraged)"


class RankError(ValueError):
    """Parametrization has a degenerate first fundamental form at the sample."""


@dataclass
class SlicedSurface:
    """An ``(n-2)``-parameter surface in the slice ``{t = 0}`` of ``n``-dimensional Minkowski.

    ``embed(u)`` returns the spatial point in ``R^(n-1)``.  The outward normal
    ``N+`` points away from ``interior_point``; ``swap=True`` exchanges the
    roles of outside and inside.  ``domain`` is a list of ``(lo, hi)``
    parameter bounds used to build sample grids.
    """

    n: int
    embed: Callable[[np.ndarray], np.ndarray]
    domain: list
    interior_point: Optional[np.ndarray] = None
    outward_hint: Optional[np.ndarray] = None
    swap: bool = False
    name: str = "surface"

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("ambient dimension must be at least 3")
        if len(self.domain) != self.n - 2:
            raise ValueError("need one parameter range per surface dimension")

    def __call__(self, u) -> np.ndarray:
        u = np.asarray(u)
        if u.dtype != np.longdouble:
            u = u.astype(float)
        return np.asarray(self.embed(u))

    def grid(self, m: int, margin: float = 0.05) -> np.ndarray:
        """``m`` points per parameter, kept ``margin`` (relative) away from the bounds."""
        axes = []
        for lo, hi in self.domain:
            w = hi - lo
            axes.append(np.linspace(lo + margin * w, hi - margin * w, m))
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([a.ravel() for a in mesh], axis=1)

    def flipped(self) -> "SlicedSurface":
        return SlicedSurface(self.n, self.embed, self.domain, self.interior_point,
                             self.outward_hint, not self.swap, self.name + " (swapped)")

    def moved(self, rotation, translation) -> "SlicedSurface":
        """Rigidly moved copy: ``x -> R x + b`` in the slice."""
        R = np.asarray(rotation, float)
        b = np.asarray(translation, float)
        inner = None if self.interior_point is None else R @ self.interior_point + b
        hint = None if self.outward_hint is None else R @ self.outward_hint
        return SlicedSurface(self.n, lambda u: R @ self.embed(u) + b, self.domain, inner, hint,
                             self.swap, self.name + " (moved)")


def _derivatives(S: SlicedSurface, u: np.ndarray, h: float):
    # difference quotients in extended precision: second differences at
    # h = 1e-4 would otherwise be dominated by rounding of the embedding
    u = np.asarray(u, np.longdouble)
    h = np.longdouble(h)
    d = len(u)
    x0 = S(u)
    first = np.empty((d, len(x0)), np.longdouble)
    second = np.empty((d, d, len(x0)), np.longdouble)
    for a in range(d):
        ea = np.zeros(d, np.longdouble)
        ea[a] = h
        xp, xm = S(u + ea), S(u - ea)
        first[a] = (xp - xm) / (2 * h)
        second[a, a] = (xp - 2 * x0 + xm) / (h * h)
        for b in range(a + 1, d):
            eb = np.zeros(d, np.longdouble)
            eb[b] = h
            mixed = (S(u + ea + eb) - S(u + ea - eb) - S(u - ea + eb) + S(u - ea - eb)) / (4 * h * h)
            second[a, b] = second[b, a] = mixed
    return x0.astype(float), first.astype(float), second.astype(float)


def unit_normal(S: SlicedSurface, u, h: float = 1e-4) -> np.ndarray:
    """Outward unit normal ``N+`` in the slice (honouring ``swap``)."""
    x0, first, _ = _derivatives(S, np.asarray(u, float), h)
    return _normal(S, x0, first)


def _normal(S, x0, first):
    # orthogonal complement of the tangent rows in R^(n-1)
    _, sv, vt = np.linalg.svd(first, full_matrices=True)
    if sv.min() < 1e-12 * max(1.0, sv.max()):
        raise RankError("degenerate first fundamental form")
    nrm = vt[-1]
    if S.outward_hint is not None:
        ref = S.outward_hint
    elif S.interior_point is not None:
        ref = x0 - S.interior_point
    else:
        raise ValueError("surface needs an interior point or an outward hint")
    if nrm @ ref < 0:
        nrm = -nrm
    return -nrm if S.swap else nrm


def mean_curvature_fd(S: SlicedSurface, u, h: float = 1e-4) -> np.ndarray:
    """Mean curvature vector as a spacetime vector ``(0, H_slice)``."""
    u = np.asarray(u, float)
    x0, first, second = _derivatives(S, u, h)
    G = first @ first.T
    if abs(np.linalg.det(G)) < 1e-14 * max(1.0, np.abs(G).max()) ** len(u):
        raise RankError("degenerate first fundamental form")
    trace = np.einsum("ab,abk->k", np.linalg.inv(G), second)
    nrm = _normal(S, x0, first)
    H = (trace @ nrm) * nrm
    return np.concatenate([[0.0], H])


def minkowski_dot(a: np.ndarray, b: np.ndarray) -> float:
    return float(-a[0] * b[0] + a[1:] @ b[1:])


@dataclass(frozen=True)
class ConvergenceSample:
    u: tuple
    H: np.ndarray
    k_plus: float
    k_minus: float
    convention: str = CONVENTION


def null_convergences(S: SlicedSurface, u, h: float = 1e-4) -> ConvergenceSample:
    """``k+- = <H, U + N+->`` with ``U = d_t``."""
    u = np.asarray(u, float)
    H = mean_curvature_fd(S, u, h)
    x0, first, _ = _derivatives(S, u, h)
    n_plus = np.concatenate([[0.0], _normal(S, x0, first)])
    U = np.zeros(S.n)
    U[0] = 1.0
    return ConvergenceSample(tuple(u), H, minkowski_dot(H, U + n_plus), minkowski_dot(H, U - n_plus))


@dataclass(frozen=True)
class TrappedVerdict:
    inner_trapped: bool
    min_k_minus: float
    argmin: tuple
    n_samples: int
    convention: str = CONVENTION


def is_inner_trapped(S: SlicedSurface, grid, h: float = 1e-4) -> TrappedVerdict:
    grid = np.atleast_2d(np.asarray(grid, float))
    worst, where = math.inf, None
    for u in grid:
        km = null_convergences(S, u, h).k_minus
        if km < worst:
            worst, where = km, tuple(u)
    return TrappedVerdict(bool(worst > 0), worst, where, len(grid))


# fixtures


def _hyperspherical(u: np.ndarray) -> np.ndarray:
    """Unit vector in ``R^(len(u)+1)`` from angles ``(phi_1..phi_{m-1} in (0, pi), phi_m in [0, 2pi))``."""
    m = len(u)
    out = np.empty(m + 1, dtype=np.result_type(u, float))
    s = 1.0
    for i in range(m):
        out[i] = s * np.cos(u[i])
        s *= np.sin(u[i])
    out[m] = s
    return out


def _sphere_domain(n: int) -> list:
    return [(0.0, math.pi)] * (n - 3) + [(0.0, 2 * math.pi)]


def round_sphere(n: int, R: float, center=None) -> SlicedSurface:
    """``S^(n-2)(R)`` in ``R^(n-1)``; outside is the unbounded side."""
    c = np.zeros(n - 1) if center is None else np.asarray(center, float)
    return SlicedSurface(n, lambda u: c + R * _hyperspherical(u), _sphere_domain(n),
                         interior_point=c, name=f"sphere S^{n - 2}({R})")


def sphere_mean_curvature(n: int, R: float) -> float:
    """Closed-form ``|H|`` of ``S^(n-2)(R)`` under the trace convention."""
    return (n - 2) / R


def ellipsoid(n: int, axes) -> SlicedSurface:
    axes = np.asarray(axes, float)
    if axes.shape != (n - 1,):
        raise ValueError("need one semi-axis per slice dimension")
    return SlicedSurface(n, lambda u: axes * _hyperspherical(u), _sphere_domain(n),
                         interior_point=np.zeros(n - 1), name=f"ellipsoid{tuple(axes)}")


def ellipsoid_mean_curvature(axes, x) -> float:
    """Trace curvature of ``sum x_i^2 / a_i^2 = 1`` at ``x`` from the implicit form.

    ``div(grad F / |grad F|)``; positive for the outward normal convention, so
    ``H = -value * N+``.
    """
    a2 = np.asarray(axes, float) ** 2
    grad = 2 * np.asarray(x, float) / a2
    hess = np.diag(2 / a2)
    g2 = grad @ grad
    return float((g2 * np.trace(hess) - grad @ hess @ grad) / g2 ** 1.5)


def flat_patch(n: int, size: float = 1.0) -> SlicedSurface:
    """A piece of a coordinate hyperplane of the slice; totally geodesic."""

    def embed(u):
        return np.concatenate([u, [0.0]])

    hint = np.zeros(n - 1)
    hint[-1] = 1.0
    return SlicedSurface(n, embed, [(-size, size)] * (n - 2), outward_hint=hint, name="flat patch")
