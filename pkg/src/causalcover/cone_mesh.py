"""Brute-force graph oracle for cone distances.

The developed domain is covered by concentric rings of nodes (a small hole
bounded by the innermost ring, of radius ``r_min``, stands in for the removed
apex).  Every pair of nodes closer
than ``neighbor_radius`` is linked by its planar chord, provided the chord
stays outside the hole; shortest paths are then found with Dijkstra.  None of
this uses the winding/law-of-cosines reasoning in :mod:`causalcover.cone`,
which is what makes it usable as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .cone import ConeGeometry, ConePoint

MIN_ANGULAR_STEP = 0.05


def default_neighbor_radius(h: float) -> float:
    # rho/h must grow as h shrinks, otherwise the stencil bias never vanishes
    return 5.0 * h * max(1.0, math.sqrt(0.05 / h))


class PolarMesh:
    def __init__(self, geom: ConeGeometry, r_min: float, r_max: float, h: float,
                 psi_range=None, neighbor_radius=None, extra_points=()):
        if not (h > 0 and 0 < r_min < r_max):
            raise ValueError("need h > 0 and 0 < r_min < r_max")
        self.geom = geom
        self.r_min, self.r_max, self.h = r_min, r_max, h
        self.rho = default_neighbor_radius(h) if neighbor_radius is None else neighbor_radius
        if geom.periodic:
            self.lo, self.span = 0.0, geom.angle
        else:
            if psi_range is None:
                raise ValueError("the universal cover needs an explicit psi_range")
            self.lo, self.span = psi_range[0], psi_range[1] - psi_range[0]

        n_rings = int(math.ceil((r_max - r_min) / h)) + 1
        self.ring_r = r_min + h * np.arange(n_rings)
        self.ring_n = np.maximum(
            np.ceil(self.span * self.ring_r / h),
            math.ceil(self.span / MIN_ANGULAR_STEP),
        ).astype(int)
        self.ring_offset = np.concatenate([[0], np.cumsum(self.ring_n)])
        # the hole is the polygon through the innermost ring, so paths can wind around it
        self.hole = r_min * math.cos(0.5 * self._step(0)) * (1 - 1e-9)
        self.n_grid = int(self.ring_offset[-1])

        self.extra = list(extra_points)
        for pt in self.extra:
            if not r_min < pt.r <= r_max + h:
                raise ValueError(f"point {pt} outside the truncated mesh [{r_min}, {r_max}]")
            if not geom.periodic and not self.lo <= pt.psi <= self.lo + self.span:
                raise ValueError(f"point {pt} outside the mesh angular range")
        self.graph = self._build()

    def _step(self, j: int) -> float:
        n = self.ring_n[j]
        return self.span / n if self.geom.periodic else self.span / (n - 1)

    def _links(self, psi_a: np.ndarray, r_a: float, j: int):
        """Chords from nodes at radius ``r_a`` to ring ``j`` that are short and miss the hole."""
        r_b = self.ring_r[j]
        dr = r_b - r_a
        if abs(dr) > self.rho:
            return None
        arg = math.sqrt(max(self.rho ** 2 - dr * dr, 0.0) / (4.0 * r_a * r_b))
        dmax = min(2.0 * math.asin(min(arg, 1.0)), 0.999 * math.pi)
        n_b, s = self.ring_n[j], self._step(j)
        k_lo = np.ceil((psi_a - dmax - self.lo) / s).astype(int)
        k_hi = np.floor((psi_a + dmax - self.lo) / s).astype(int)
        width = int((k_hi - k_lo).max(initial=-1)) + 1
        if width <= 0:
            return None
        ks = k_lo[:, None] + np.arange(width)[None, :]
        ok = ks <= k_hi[:, None]
        if not self.geom.periodic:
            ok &= (ks >= 0) & (ks < n_b)
        dpsi = self.lo + ks * s - psi_a[:, None]
        sn = np.sin(0.5 * dpsi)
        length = np.sqrt(dr * dr + 4.0 * r_a * r_b * sn * sn)
        ok &= (length > 0) & (length <= self.rho)
        # closest approach of the chord to the apex
        with np.errstate(divide="ignore", invalid="ignore"):
            perp = r_a * r_b * np.abs(np.sin(dpsi)) / length
        foot_inside = (r_a ** 2 + length ** 2 > r_b ** 2) & (r_b ** 2 + length ** 2 > r_a ** 2)
        clearance = np.where(foot_inside, perp, min(r_a, r_b))
        ok &= clearance >= self.hole
        rows = np.broadcast_to(np.arange(len(psi_a))[:, None], ks.shape)[ok]
        cols = self.ring_offset[j] + np.mod(ks[ok], n_b)
        return rows, cols, length[ok]

    def _ring_psi(self, i: int) -> np.ndarray:
        return self.lo + self._step(i) * np.arange(self.ring_n[i])

    def _build(self):
        rows, cols, vals = [], [], []
        n_rings = len(self.ring_r)
        reach = int(math.ceil(self.rho / self.h))
        for i in range(n_rings):
            psi_a = self._ring_psi(i)
            for j in range(i, min(n_rings, i + reach + 1)):
                got = self._links(psi_a, self.ring_r[i], j)
                if got is not None:
                    rows.append(self.ring_offset[i] + got[0])
                    cols.append(got[1])
                    vals.append(got[2])
        for e, pt in enumerate(self.extra):
            node = self.n_grid + e
            for j in range(n_rings):
                got = self._links(np.array([pt.psi]), pt.r, j)
                if got is not None:
                    rows.append(np.full(len(got[0]), node))
                    cols.append(got[1])
                    vals.append(got[2])
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        vals = np.concatenate(vals)
        a, b = np.minimum(rows, cols), np.maximum(rows, cols)
        keep = a != b
        a, b, vals = a[keep], b[keep], vals[keep]
        # a pair may be linked through two windings; keep the shorter chord
        order = np.lexsort((vals, b, a))
        a, b, vals = a[order], b[order], vals[order]
        first = np.ones(len(a), bool)
        first[1:] = (a[1:] != a[:-1]) | (b[1:] != b[:-1])
        n = self.n_grid + len(self.extra)
        return coo_matrix((vals[first], (a[first], b[first])), shape=(n, n)).tocsr()

    @property
    def n_nodes(self) -> int:
        return self.graph.shape[0]

    def extra_node(self, k: int) -> int:
        return self.n_grid + k

    def shortest(self, sources, limit=np.inf) -> np.ndarray:
        return dijkstra(self.graph, directed=False, indices=sources, limit=limit)


def default_truncation(points, r_min_factor=1e-3, r_max_factor=1.25):
    radii = [pt.r for pt in points]
    return r_min_factor * min(radii), r_max_factor * max(radii)


def oracle_distances(pairs, geom: ConeGeometry, resolution: float, r_min=None, r_max=None,
                     neighbor_radius=None, psi_margin=0.5) -> np.ndarray:
    """Mesh distances for a batch of ``(p, q)`` pairs sharing one mesh."""
    if not resolution > 0:
        raise ValueError("resolution must be positive")
    points, index = [], {}
    for pair in pairs:
        for pt in pair:
            if pt not in index:
                index[pt] = len(points)
                points.append(pt)
    lo_default, hi_default = default_truncation(points)
    r_min = lo_default if r_min is None else r_min
    r_max = hi_default if r_max is None else r_max
    psi_range = None
    if not geom.periodic:
        psis = [pt.psi for pt in points]
        psi_range = (min(psis) - psi_margin, max(psis) + psi_margin)
    mesh = PolarMesh(geom, r_min, r_max, resolution, psi_range=psi_range,
                     neighbor_radius=neighbor_radius, extra_points=points)
    sources = sorted({index[p] for p, _ in pairs})
    limit = max(p.r + q.r for p, q in pairs) * 1.5 + resolution
    table = mesh.shortest([mesh.extra_node(s) for s in sources], limit=limit)
    row = {s: i for i, s in enumerate(sources)}
    return np.array([table[row[index[p]], mesh.extra_node(index[q])] for p, q in pairs])


def oracle_distance(p: ConePoint, q: ConePoint, geom: ConeGeometry, resolution: float, **kw) -> float:
    if p == q:
        return 0.0
    return float(oracle_distances([(p, q)], geom, resolution, **kw)[0])


ORACLE_CONSTANT = 0.5  # calibrated: worst observed excess / (h + r_min) is about 0.21 at h = 0.02


@dataclass
class Agreement:
    """Exact distances against mesh distances on a batch of sampled pairs."""

    geometry: dict
    resolution: float
    r_min: float
    bound: float
    n_pairs: int
    max_excess: float  # oracle - exact, worst case
    min_excess: float  # must not be noticeably negative: mesh paths are real curves
    apex_pairs: int

    @property
    def passed(self) -> bool:
        return self.n_pairs > 0 and self.min_excess >= -1e-9 and self.max_excess <= self.bound

    def as_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            "resolution": self.resolution,
            "r_min": self.r_min,
            "bound": self.bound,
            "n_pairs": self.n_pairs,
            "max_excess": self.max_excess,
            "min_excess": self.min_excess,
            "apex_pairs": self.apex_pairs,
            "passed": self.passed,
        }


def agreement_study(geom: ConeGeometry, seed: int = 0, n_sources: int = 10, n_targets: int = 10,
                    resolution: float = 0.02, r_range=(0.5, 2.0), C: float = ORACLE_CONSTANT) -> Agreement:
    """Compare exact and mesh distances on ``n_sources * n_targets`` random pairs.

    The mesh error is bounded by ``C * (h + r_min)``: ``h`` from the
    polygonal approximation of straight chords, ``r_min`` from the hole
    standing in for the apex.  Pairs are drawn from one angular sheet-and-a-half
    window on the universal cover so that apex routes are well represented.
    """
    rng = np.random.default_rng(seed)
    base = geom.base_angle
    window = (0.0, geom.angle) if geom.periodic else (0.0, 3.0 * base)
    src = [geom.sample_point(rng, r_range=r_range, psi_window=window) for _ in range(n_sources)]
    tgt = [geom.sample_point(rng, r_range=r_range, psi_window=window) for _ in range(n_targets)]
    pairs = [(a, b) for a in src for b in tgt]
    r_min, _ = default_truncation(src + tgt)
    mesh = oracle_distances(pairs, geom, resolution, r_min=r_min)
    exact = [geom.distance(a, b) for a, b in pairs]
    excess = mesh - np.array([d.infimum for d in exact])
    return Agreement(
        geometry=geom.describe(),
        resolution=resolution,
        r_min=r_min,
        bound=C * (resolution + r_min),
        n_pairs=len(pairs),
        max_excess=float(excess.max()),
        min_excess=float(excess.min()),
        apex_pairs=sum(d.attained is False for d in exact),
    )
