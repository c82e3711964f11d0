#!/usr/bin/env python3
"""Build reflection groups of Lorentzian signature and classify their actions.

A group is given by its bond orders m_ij (0 = infinite) plus an explicit
weight <= -1 for each infinite bond. Accepted systems have Gram
signature (n-1, 1); the Perron eigenvector of the negative eigenvalue is
the base point of the projective chart, and the signatures of the
standard subsystems decide whether the normalized action is cocompact,
convex cocompact, or has cusps.
"""

import numpy as np

from coxlim import coxeter, instances
from coxlim.errors import SignatureError

np.set_printoptions(precision=6, suppress=True)

for name, sys in instances.bundled().items():
    action = coxeter.classify_action(sys)
    print(f"== {name}")
    print("gram:")
    print(sys.gram)
    print(f"signature {sys.signature}, negative eigenvalue {sys.neg_eigenvalue:.6f}")
    print(f"base point {sys.base_point}")
    print(f"action: {action.kind}, cusp ranks {list(action.cusp_ranks)}, "
          f"rank>=3 subsystem hypothesis: "
          f"{'holds' if action.ct_hypothesis else 'fails'}")
    affine = [s for s, e in action.subsystem_table.items() if e.kind == "affine"]
    if affine:
        pretty = [tuple(i + 1 for i in s) for s in affine]
        print(f"affine subsystems: {pretty}")
    print()

# The same machinery rejects what it must: an affine pair on its own has
# signature (1,0), and a matrix with a disconnected bond graph splits.
try:
    coxeter.build_system([[1, 0], [0, 1]], {(0, 1): -1.0})
except SignatureError as exc:
    print(f"standalone affine pair rejected: {exc}")
