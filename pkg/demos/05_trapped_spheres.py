"""Null convergences k+ and k- of round spheres in a time slice of Minkowski space.

Run: python demos/05_trapped_spheres.py
"""

import numpy as np

from causalcover import is_inner_trapped, mean_curvature_fd, null_convergences
from causalcover.surfaces import flat_patch, round_sphere, sphere_mean_curvature

print(" n   R    k+          k-         closed form (n-2)/R")
for n in (3, 4, 5):
    for R in (1.0, 2.0, 5.0):
        S = round_sphere(n, R)
        grid = S.grid(3)
        c = null_convergences(S, grid[len(grid) // 2])
        print(f" {n}  {R:3.0f}  {c.k_plus:+.8f}  {c.k_minus:+.8f}  {sphere_mean_curvature(n, R):.8f}")

S = round_sphere(4, 1.0)
print(f"\nS^2 in R^3 inner trapped on a 6x6 grid: {is_inner_trapped(S, S.grid(6)).inner_trapped}")

u = S.grid(3)[len(S.grid(3)) // 2]
print("\nFinite-difference |H| against the closed form:")
for h in (1e-2, 1e-3, 1e-4):
    err = abs(np.linalg.norm(mean_curvature_fd(S, u, h)) - sphere_mean_curvature(4, 1.0))
    print(f"  h = {h:.0e}: error {err:.2e}")

P = flat_patch(4)
c = null_convergences(P, P.grid(3)[0])
print(f"\nflat patch: k+ = {c.k_plus:.1e}, k- = {c.k_minus:.1e}; not trapped")
