"""Static spacetimes over the cone: where the causal relation stops being closed.

Run: python demos/02_static_closure.py
"""

from causalcover import (
    ConeGeometry,
    ConePoint,
    Event,
    check_reflectivity_samples,
    classify,
    is_causal_relation_closed,
    sector_angle,
)

theta = sector_angle(0.5)
geoms = {
    "base": ConeGeometry.base(theta),
    "2-fold cover": ConeGeometry.cyclic(theta, 2),
    "3-fold cover": ConeGeometry.cyclic(theta, 3),
    "universal cover": ConeGeometry.universal(theta),
}

print("J closed iff the base is geodesically convex:")
for name, g in geoms.items():
    c = is_causal_relation_closed(g)
    print(f"  {name:16s} J closed = {c.closed}")

uni = geoms["universal cover"]
c = is_causal_relation_closed(uni)
p, q = c.witness
print(f"\nWitness on the universal cover: p = {p}, q = {q}")
print(f"  dt equals the (unattained) distance, so q is a limit of causal futures of p: {c.witness_verdict.verdict.value}")

near = Event(p.t, p.x)
later = Event(q.t + 1e-6, q.x)
print(f"  nudge q later by 1e-6 and the pair becomes {classify(near, later, uni).verdict.value}")

print("\nReflectivity is untouched: 2000 random pairs per geometry")
for name, g in geoms.items():
    rep = check_reflectivity_samples(g, 2000, seed=1)
    print(f"  {name:16s} violations = {rep.violations}")
print("So closedness of J implies reflectivity here, and the universal cover shows the converse fails.")
