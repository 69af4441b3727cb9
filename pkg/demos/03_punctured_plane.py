"""Minkowski plane with the points r = (0, 0) and r_k = (0, -1/k) removed.

Run: python demos/03_punctured_plane.py
"""

from causalcover import (
    LEFT,
    RIGHT,
    CoverPoint,
    MEvent,
    Mid,
    chron_base,
    in_closure_future,
    in_closure_past,
    reflectivity_report,
    window,
)
from causalcover.punctured_oracle import oracle_closure

p, q = MEvent(-1, 1), MEvent(1, -1)
print(f"p = {p}, q = {q}: they are null separated in the plane, chronological = {chron_base(p, q)}")
print(f"strict windows on the t = 0 axis: p -> {window(p)}, q -> {window(q)}")
print("The windows touch only at x = 0, which is a removed point; on the cover, each gap")
print("between removed points is its own sheet.")

rep = reflectivity_report(p, q, k_max=1000)
print(f"\nq in closure of I+(p) on sheets: {[str(g) for g in rep.future_sheets]}")
print(f"p in closure of I-(q) on sheets: {[str(g) for g in rep.past_sheets] or 'none'}")
print(f"sheets violating past reflectivity: {[str(g) for g in rep.violating_sheets]}")
print(f"in the plane itself both closures hold: {rep.base_future_closure}, {rep.base_past_closure}")

print("\nWhy the asymmetry: moving q by eps widens its window to (-2 - eps, eps), which meets the")
print("gap right of r for every eps. Moving p instead widens its window to (-eps, 2 + eps); the overlap")
print("(-eps, 0) only meets gaps Mid(k) with k of order 1/eps, so no single sheet survives eps -> 0.")
base = CoverPoint(p)
for g in (RIGHT, LEFT, Mid(1), Mid(2)):
    print(f"  {str(g):7s} future {in_closure_future(base, CoverPoint(q, g))!s:5s} "
          f"past {in_closure_past(base, CoverPoint(q, g))}")

print("\nLattice oracle at resolution 1e-3 (None means the lattice cannot decide):")
gaps = [RIGHT, LEFT, Mid(1), Mid(2), Mid(3)]
for direction in ("future", "past"):
    got = oracle_closure(p, q, gaps, direction, resolution=1e-3)
    print(f"  {direction:6s}", {str(g): v for g, v in got.items()})
