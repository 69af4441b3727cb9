import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalcover.cone import (
    ApexRoute,
    ConeGeometry,
    ConeKind,
    ConePoint,
    Undecided,
    developed_separation,
    distance,
    is_geodesically_convex,
    sector_angle,
    segment_length,
)

# frozen oracle values, computed by hand before the implementation
THETA_HALF = 2.0 * 0.5 * math.pi / math.sqrt(1.25)  # 2.8099258924162904
SIGMA = 2.0 * math.sin(THETA_HALF / 4.0)  # 1.2922272743100875


class TestSectorAngle:
    def test_half(self):
        assert sector_angle(0.5) == pytest.approx(2.809926, abs=1e-6)
        assert math.degrees(sector_angle(0.5)) == pytest.approx(160.997, abs=1e-3)

    def test_boundaries(self):
        assert abs(sector_angle(1 / math.sqrt(3)) - math.pi) <= 1e-12
        assert abs(sector_angle(1 / (2 * math.sqrt(2))) - 2 * math.pi / 3) <= 1e-12

    @pytest.mark.parametrize("A", [0.0, -1.0])
    def test_domain(self, A):
        with pytest.raises(ValueError):
            sector_angle(A)

    @given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
    def test_increasing_and_bounded(self, a, b):
        lo, hi = sorted((a, b))
        assert 0 < sector_angle(lo) <= sector_angle(hi) < 2 * math.pi


class TestDevelopedSeparation:
    def test_examples(self, cones, theta):
        p, q = ConePoint(1, 0), ConePoint(1, theta / 2)
        assert developed_separation(p, q, 0, cones["base"]) == pytest.approx(theta / 2)
        assert developed_separation(p, q, 1, cones["base"]) == pytest.approx(1.5 * theta)
        assert developed_separation(p, p, 0, cones["base"]) == 0.0

    def test_universal_rejects_winding(self, cones):
        with pytest.raises(ValueError):
            developed_separation(ConePoint(1, 0), ConePoint(1, 1), 1, cones["universal"])


class TestSegmentLength:
    def test_coincident(self):
        assert segment_length(1, 1, 0.0) == 0.0

    def test_sigma(self):
        # 2 sin(theta/4) = 1.2922273, not the 1.29235 sometimes quoted
        assert segment_length(1, 1, 2.809926 / 2) == pytest.approx(2 * math.sin(2.809926 / 4), abs=1e-12)
        assert segment_length(1, 1, THETA_HALF / 2) == pytest.approx(SIGMA, abs=1e-12)

    def test_apex_route(self):
        got = segment_length(1, 2, 3.5)
        assert isinstance(got, ApexRoute) and got.infimum == 3

    def test_straddling_pi_is_undecided(self):
        assert isinstance(segment_length(1, 1, math.pi), Undecided)

    def test_bad_radii(self):
        with pytest.raises(ValueError):
            segment_length(0, 1, 0.1)

    @given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0, 3.0), st.floats(0, 3.0))
    def test_monotone_in_separation(self, rp, rq, a, b):
        lo, hi = sorted((a, b))
        assert segment_length(rp, rq, lo) <= segment_length(rp, rq, hi)

    def test_limit_at_pi(self):
        near = segment_length(1.0, 2.0, math.pi - 1e-6)
        assert near == pytest.approx(3.0, abs=1e-9)


class TestDistance:
    def test_sigma_attained(self, cones, theta):
        d = distance(ConePoint(1, 0), ConePoint(1, theta / 2), cones["base"])
        assert d.attained and d.winding == 0
        assert d.infimum == pytest.approx(SIGMA, abs=1e-12)

    def test_gamma1_not_attained(self, cones, theta):
        d = distance(ConePoint(1, 0), ConePoint(1, 1.5 * theta), cones["universal"])
        assert d.attained is False and d.witness == "ApexRoute"
        assert d.infimum == 2.0

    @pytest.mark.parametrize("name", ["base", "cyclic2", "cyclic3", "universal"])
    def test_identity(self, cones, name):
        p = ConePoint(1.3, 0.7)
        d = cones[name].distance(p, p)
        assert d.infimum == 0.0 and d.attained and d.bounds.is_point

    def test_cyclic_uses_windings(self, cones, theta):
        # on the 2-fold cover a point near the far end of the strip is close through the seam
        d = cones["cyclic2"].distance(ConePoint(1, 0.1), ConePoint(1, 2 * theta - 0.1))
        assert d.attained and d.winding == -1
        assert d.infimum == pytest.approx(2 * math.sin(0.1))

    def test_near_pi_is_indeterminate(self):
        geom = ConeGeometry.universal(THETA_HALF)
        d = geom.distance(ConePoint(1, 0), ConePoint(1, math.pi))
        assert d.attained is None and not d.determinate
        assert d.bounds.lo <= 2.0 <= d.bounds.hi

    def test_apex_excluded(self):
        with pytest.raises(ValueError):
            ConePoint(0.0, 1.0)


def _points(geom, rng, n):
    return [geom.sample_point(rng) for _ in range(n)]


@pytest.mark.parametrize("name", ["base", "cyclic2", "cyclic3", "universal"])
def test_symmetry_exact(cones, name):
    geom = cones[name]
    rng = np.random.default_rng(7)
    for _ in range(2000):
        p, q = _points(geom, rng, 2)
        a, b = geom.distance(p, q), geom.distance(q, p)
        assert a.infimum == b.infimum and a.attained == b.attained


@pytest.mark.parametrize("name", ["base", "cyclic3", "universal"])
def test_triangle_inequality(cones, name):
    geom = cones[name]
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        p, q, r = _points(geom, rng, 3)
        lhs = geom.distance(p, r).infimum
        rhs = geom.distance(p, q).infimum + geom.distance(q, r).infimum
        assert lhs <= rhs * (1 + 1e-12) + 1e-12


@pytest.mark.parametrize("name", ["base", "cyclic2", "cyclic3", "universal"])
def test_non_attainment_coherence(cones, name):
    geom = cones[name]
    rng = np.random.default_rng(3)
    for _ in range(3000):
        p, q = _points(geom, rng, 2)
        d = geom.distance(p, q)
        if d.attained is None:
            continue
        seps = [abs(geom.developed_separation(p, q, w)) for w in geom.windings(p, q)]
        if d.attained:
            assert min(seps) < math.pi and d.infimum < p.r + q.r
        else:
            assert min(seps) > math.pi and d.infimum == p.r + q.r


@settings(max_examples=200)
@given(st.floats(0.01, 1 / math.sqrt(3) - 1e-6))
def test_classical_condition_never_contradicted(A):
    verdict = is_geodesically_convex(ConeGeometry.from_slope(A))
    assert verdict.convex is True and verdict.classical_sufficient


class TestConvexity:
    def test_base_half(self, cones):
        v = cones["base"].is_geodesically_convex()
        assert v.convex and v.classical_sufficient and v.witness is None

    def test_universal(self, cones, theta):
        v = cones["universal"].is_geodesically_convex()
        assert v.convex is False
        a, b = v.witness
        assert (a, b) == (ConePoint(1, 0), ConePoint(1, 1.5 * theta))
        assert v.witness_infimum == 2.0

    def test_cyclic(self, cones):
        assert cones["cyclic2"].is_geodesically_convex().convex is True
        v = cones["cyclic3"].is_geodesically_convex()
        assert v.convex is False
        d = cones["cyclic3"].distance(*v.witness)
        assert d.attained is False

    def test_wide_base_is_convex_but_outside_classical_bound(self, wide_base):
        v = wide_base.is_geodesically_convex()
        assert v.convex is True and not v.classical_sufficient
        assert "derived" in v.rule

    def test_universal_witness_small_angle(self):
        # when 3 theta / 2 <= pi the witness moves to 3 pi / 2 so it still needs the apex
        geom = ConeGeometry.universal(sector_angle(0.2))
        a, b = geom.universal_witness()
        assert geom.distance(a, b).attained is False


class TestConstruction:
    def test_kinds(self, cones):
        assert cones["base"].kind is ConeKind.BASE
        assert cones["cyclic3"].angle == pytest.approx(3 * THETA_HALF)
        assert cones["universal"].angle is None and not cones["universal"].periodic

    @pytest.mark.parametrize("angle", [0.0, 2 * math.pi, 7.0])
    def test_base_angle_range(self, angle):
        with pytest.raises(ValueError):
            ConeGeometry.base(angle)

    def test_fold_positive(self):
        with pytest.raises(ValueError):
            ConeGeometry.cyclic(1.0, 0)
