#!/usr/bin/env python3
"""Enumerate roots and watch their normalized images accumulate.

Roots are the orbit of the simple basis under the reflections; each is a
unit vector for the bilinear form and has one-signed coordinates, so the
whole system projects to the chart. For an infinite dihedral pair the
normalized roots converge to the null directions of the bond plane; the
depth-k frontier makes that quantitative.
"""

import math

import numpy as np

from coxlim import coxeter, instances, roots

np.set_printoptions(precision=6, suppress=True)

rank2 = instances.rank2_lorentzian(-1.5)
cloud = roots.enumerate_roots(rank2, 12)
print("infinite dihedral, bond weight -1.5")
print(f"roots up to depth 12: {cloud.count()}")
report = roots.sign_coherence_check(cloud)
print(f"sign coherence: checked {report.checked}, violations "
      f"{len(report.violations)}")

targets = sorted(((3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2))
print("\nnull-direction slopes (exact):", [f"{t:.6f}" for t in targets])
for k in (2, 4, 8, 12):
    front = roots.frontier(cloud, k)
    ratios = sorted(p[1] / p[0] for p in front)
    gaps = [abs(r - t) for r, t in zip(ratios, targets)]
    print(f"depth {k:2d}: frontier slopes {[f'{r:.6f}' for r in ratios]}, "
          f"gaps {[f'{g:.1e}' for g in gaps]}")

print("\n(2,3,7) triangle group root growth:")
cloud237 = roots.enumerate_roots(instances.triangle_237(), 10)
counts = [len(cloud237.by_depth(k)) for k in range(11)]
print(f"new roots per depth: {counts}")
for root in cloud237.by_depth(3)[:3]:
    word = " ".join(str(i + 1) for i in root.word)
    print(f"depth-3 root {np.round(root.vector, 4)} = "
          f"(s_{word.replace(' ', ' s_')}) applied to basis vector "
          f"{root.source + 1}")
