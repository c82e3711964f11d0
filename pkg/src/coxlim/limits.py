"""Orbit-based limit set approximants and the root-comparison checks.

The limit set is the accumulation set of the normalized orbit of the
base point. It is represented here only by depth-indexed frontiers
{w . x0 : |w| = k}; convergence statements are asserted as monotone
Hausdorff decrease against the corresponding root frontiers, never as
equality with a stored "true" set.
"""

from dataclasses import dataclass

import numpy as np

from . import coxeter, numeric, roots
from .errors import ValidationError

#: Dedup pitch for orbit chart points. Orbit points cluster near the
#: boundary, so merging below this pitch is harmless for Hausdorff use.
ORBIT_GRID = 1e-10


def orbit_frontier(sys, depth, base_point=None, ball=None):
    """Chart points {w . x0 : |w| = depth}, deduplicated and sorted.

    ``base_point`` defaults to the Perron point; any other base must lie
    in the open domain and in the open simplex (all coordinates
    positive), the region on which base-point independence holds.
    """
    if depth < 0:
        raise ValidationError("depth must be >= 0")
    if base_point is None:
        x0 = sys.base_point
    else:
        x0 = np.asarray(base_point, dtype=float)
        if float(coxeter.quad_form(sys, x0)) >= -sys.zero_tol or np.any(x0 <= 0):
            raise ValidationError(
                "base point must be interior with all coordinates positive"
            )
    if ball is None:
        ball = coxeter.enumerate_ball(sys, depth)
    seen = {}
    for elt in ball.levels[depth]:
        pt = coxeter.normalized_act(sys, elt.matrix, x0)
        key = numeric.quantize_key(pt, ORBIT_GRID)
        if key not in seen:
            seen[key] = pt
    pts = [seen[k] for k in sorted(seen)]
    return np.array(pts) if pts else np.empty((0, sys.rank))


def orbit_root_hausdorff(sys, depths, ball=None, cloud=None):
    """Hausdorff distances between orbit and root frontiers per depth.

    Returns [(depth, distance)] for each requested depth; at desk scale
    the table decreases as both frontiers approach the common
    accumulation set.
    """
    depths = sorted(depths)
    if not depths:
        raise ValidationError("need at least one depth")
    top = depths[-1]
    if ball is None:
        ball = coxeter.enumerate_ball(sys, top)
    if cloud is None:
        cloud = roots.enumerate_roots(sys, top)
    table = []
    for d in depths:
        orbit = orbit_frontier(sys, d, ball=ball)
        root_pts = roots.frontier(cloud, d)
        table.append((d, numeric.hausdorff(orbit, root_pts)))
    return table


@dataclass(frozen=True)
class PairingRow:
    """One step of the root/orbit convergence table."""

    k: int
    euclidean_gap: float
    pairing: float
    identity_residual: float


def boundary_pairing_decay(sys, words, generator_index):
    """Track B(w . a^, w . x0) along a sequence of words.

    For each word w the bilinear pairing of the normalized images of a
    normalized simple root a^ and the base point equals
    B(a^, x0) / (|w(a^)|_1 |w(x0)|_1) exactly; the residual of that
    identity is reported per row together with the Euclidean gap between
    the two images. Along an unbounded sequence the pairing tends to 0,
    which is what forces both images toward the same boundary point.
    """
    if not 0 <= generator_index < sys.rank:
        raise ValidationError("generator index out of range")
    delta = np.zeros(sys.rank)
    delta[generator_index] = 1.0
    delta_hat = coxeter.normalize(sys, delta)
    o = sys.base_point
    pairing_base = float(coxeter.bilinear(sys, delta_hat, o))
    rows = []
    for k, w in enumerate(words):
        m = coxeter.as_matrix(sys, w)
        img_root = m @ delta_hat
        img_o = m @ o
        n_root = float(coxeter.one_norm(sys, img_root))
        n_o = float(coxeter.one_norm(sys, img_o))
        if n_o <= 0.0:
            raise ValidationError("|w(x0)|_1 <= 0 along the sequence")
        if n_root == 0.0:
            raise ValidationError("|w(a^)|_1 = 0: root fell on the null chart")
        lhs = float(coxeter.bilinear(sys, img_root / n_root, img_o / n_o))
        rhs = pairing_base / (n_root * n_o)
        rows.append(PairingRow(
            k=k,
            euclidean_gap=float(np.linalg.norm(img_root / n_root - img_o / n_o)),
            pairing=lhs,
            identity_residual=abs(lhs - rhs),
        ))
    return rows
