#!/usr/bin/env python3
"""Limit sets two ways: orbit accumulation versus root accumulation.

The accumulation set of the normalized orbit of the base point coincides
with the accumulation set of the normalized roots. At finite depth both
are approximated by frontiers, and the Hausdorff distance between the
two frontiers shrinks as the depth grows.
"""

import numpy as np

from coxlim import coxeter, domain, instances, limits

for name in ("rank2_lorentzian", "triangle_237", "rank3_convex"):
    sys = instances.bundled()[name]
    table = limits.orbit_root_hausdorff(sys, [4, 6, 8, 10])
    row = "  ".join(f"d={d}: {v:.5f}" for d, v in table)
    print(f"{name:18s} {row}")

# A sequence heading into a cusp: the dihedral powers of an affine bond
# converge to the tangency point of that bond.
cusped = instances.rank3_cusped()
cusp = domain.cusp_detect(cusped)[0].point
step = cusped.reflections[0] @ cusped.reflections[1]
pt = cusped.base_point.copy()
print(f"\ncusp point {np.round(cusp, 6)}")
for k in range(1, 201):
    pt = coxeter.normalized_act(cusped, step, pt)
    if k in (5, 20, 80, 200):
        print(f"  (s1 s2)^{k:<3d} . x0 is {np.linalg.norm(pt - cusp):.2e} away")

# The pairing identity that drives the convergence: the bilinear pairing
# of the transported root and orbit point decays like the product of the
# two one-norms.
words = [coxeter.Word(((0, 1) * 10)[:k], True) for k in range(21)]
rows = limits.boundary_pairing_decay(cusped, words, 0)
print("\nk, pairing, identity residual:")
for r in rows[::4]:
    print(f"  {r.k:2d}  {r.pairing:+.6f}  {r.identity_residual:.1e}")
