import math

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from causalcover.surfaces import (
    CONVENTION,
    RankError,
    SlicedSurface,
    ellipsoid,
    ellipsoid_mean_curvature,
    flat_patch,
    is_inner_trapped,
    mean_curvature_fd,
    null_convergences,
    round_sphere,
    sphere_mean_curvature,
    unit_normal,
)


def _u(S, seed=0):
    return S.grid(3)[np.random.default_rng(seed).integers(0, 3 ** (S.n - 2))]


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("R", [1.0, 2.0, 5.0])
def test_sphere_sign_law(n, R):
    S = round_sphere(n, R)
    for u in S.grid(4):
        c = null_convergences(S, u)
        assert c.k_plus < 0 < c.k_minus
        assert c.k_minus == pytest.approx((n - 2) / R, rel=1e-6)
        assert c.convention == CONVENTION


def test_circle_points_inward():
    S = round_sphere(3, 2.0)
    u = np.array([0.4])
    H = mean_curvature_fd(S, u)
    assert H[0] == 0.0
    x = S(u)
    assert np.dot(H[1:], x) < 0  # towards the center
    assert np.linalg.norm(H[1:]) == pytest.approx(0.5, rel=1e-7)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_fd_converges_second_order(n):
    S = round_sphere(n, 1.0)
    u = S.grid(3)[len(S.grid(3)) // 2]
    hs = np.array([1e-2, 1e-3, 1e-4])
    err = [abs(np.linalg.norm(mean_curvature_fd(S, u, h)) - sphere_mean_curvature(n, 1.0)) for h in hs]
    slope = np.polyfit(np.log(hs), np.log(err), 1)[0]
    assert slope >= 1.9


def test_swap_exchanges_roles():
    S = round_sphere(4, 1.0)
    u = _u(S)
    a, b = null_convergences(S, u), null_convergences(S.flipped(), u)
    # N+ and N- trade places, so k+ and k- trade places; on a slice k+ = -k-
    assert b.k_plus == pytest.approx(a.k_minus, abs=1e-12)
    assert b.k_minus == pytest.approx(a.k_plus, abs=1e-12)
    assert b.k_plus == pytest.approx(-a.k_plus, abs=1e-12)
    assert np.allclose(unit_normal(S, u), -unit_normal(S.flipped(), u))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_flat_patch(n):
    S = flat_patch(n)
    for u in S.grid(3):
        c = null_convergences(S, u)
        assert abs(c.k_plus) <= 1e-9 and abs(c.k_minus) <= 1e-9
    assert not is_inner_trapped(S, S.grid(3)).inner_trapped


@pytest.mark.parametrize("n", [3, 4, 5])
def test_rigid_motion_invariance(n):
    S = round_sphere(n, 2.0)
    R = special_ortho_group.rvs(n - 1, random_state=1) if n > 3 else np.array([[0.6, -0.8], [0.8, 0.6]])
    M = S.moved(R, np.arange(n - 1) + 0.5)
    # keep away from the coordinate poles, where 1/sin^2 factors amplify rounding in the
    # second differences beyond 1e-9 (about 1e-8 at 5% of the range in n = 5)
    for u in S.grid(3, margin=0.15):
        a, b = null_convergences(S, u), null_convergences(M, u)
        assert abs(a.k_plus - b.k_plus) <= 1e-9 and abs(a.k_minus - b.k_minus) <= 1e-9


@pytest.mark.parametrize("lam", [0.5, 3.0])
def test_scaling(lam):
    u = np.array([1.0, 2.0])
    a = null_convergences(round_sphere(4, 1.0), u)
    b = null_convergences(round_sphere(4, lam), u)
    assert b.k_plus == pytest.approx(a.k_plus / lam, rel=1e-7)
    assert b.k_minus == pytest.approx(a.k_minus / lam, rel=1e-7)


def test_inner_trapped_sphere():
    v = is_inner_trapped(round_sphere(4, 5.0), round_sphere(4, 5.0).grid(6))
    assert v.inner_trapped and v.min_k_minus == pytest.approx(2 / 5, rel=1e-6)
    assert v.n_samples == 36


def test_ellipsoid_trapped_and_matches_implicit_oracle():
    axes = (1.0, 1.5, 0.8)
    S = ellipsoid(4, axes)
    grid = S.grid(6)
    assert is_inner_trapped(S, grid).inner_trapped
    for u in grid[::7]:
        H = mean_curvature_fd(S, u)
        assert np.linalg.norm(H) == pytest.approx(ellipsoid_mean_curvature(axes, S(u)), rel=1e-6)


def test_ellipsoid_refinement_study():
    S = ellipsoid(4, (1.0, 1.5, 0.8))
    coarse = is_inner_trapped(S, S.grid(6)).min_k_minus
    fine = is_inner_trapped(S, S.grid(14)).min_k_minus
    assert 0 < fine <= coarse + 1e-12
    assert fine == pytest.approx(coarse, rel=0.2)


def test_rank_error_at_pole():
    S = round_sphere(4, 1.0)
    with pytest.raises(RankError):
        mean_curvature_fd(S, np.array([0.0, 1.0]))


def test_validation():
    with pytest.raises(ValueError):
        SlicedSurface(2, lambda u: u, [])
    with pytest.raises(ValueError):
        SlicedSurface(4, lambda u: u, [(0, 1)])
    with pytest.raises(ValueError):
        ellipsoid(4, (1.0, 2.0))
    orphan = SlicedSurface(3, lambda u: np.array([math.cos(u[0]), math.sin(u[0])]), [(0, 6)])
    with pytest.raises(ValueError):
        null_convergences(orphan, np.array([1.0]))
