#!/usr/bin/env python3
"""The fundamental chamber: descent, Dirichlet property, orbit constants.

Every interior point descends through chamber walls to the closed
fundamental chamber; the crossing record is a reduced word for the
chamber containing the point. The chamber is also the Dirichlet region
at each of its points, and for bounded chambers the orbit map
w -> w . x0 is a quasi-isometry.
"""

import numpy as np

from coxlim import cannon, coxeter, domain, instances

sys = instances.triangle_237()
o = sys.base_point

w = (0, 1, 2, 1, 0, 2, 1, 2)
x = coxeter.normalized_act(sys, w, o)
res = domain.chamber_of(sys, x)
print(f"planted word      : {w}")
print(f"recovered word    : {res.word.letters} (length {len(res.word)})")
print(f"representative gap: {np.max(np.abs(res.representative - o)):.2e}")

ball = coxeter.enumerate_ball(sys, 8)
report = domain.dirichlet_check(sys, o, 6, samples=60, ball=ball.truncate(6))
print(f"\nDirichlet check at the base point, radius 6: "
      f"{len(report.violations)} violations, minimal margin "
      f"{report.min_margin:.4f}")

for d in (4, 6, 8):
    lo, hi = domain.qi_estimate(sys, d, ball=ball.truncate(d))
    print(f"orbit constants at radius {d}: {lo:.4f} <= d(w.x0, x0)/|w| <= {hi:.4f}")

print(f"\nlinear growth constant of |w(x0)|_1 at radius 8: "
      f"{cannon.growth_lower_bound(sys, 8, ball=ball):.4f}")
c0, c2 = cannon.operator_norm_bound(sys)
print(f"operator-norm envelope: |w(x0)|_1 <= {c2:.1f} * {c0:.4f}^|w|")

cusped = instances.rank3_cusped()
cusps = domain.cusp_detect(cusped)
print(f"\ncusped example: tangency points {[np.round(c.point, 6) for c in cusps]}")
print("(the unbounded chamber direction; orbit constants are refused there)")
try:
    domain.qi_estimate(cusped, 4)
except Exception as exc:
    print(f"qi_estimate says: {exc}")
