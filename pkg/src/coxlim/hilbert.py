"""The Hilbert metric for the bilinear form on the ellipsoid chart.

The chart is V_1 = {|v|_1 = 1}; the domain is its open subset {q < 0},
an ellipsoid interior (the negative cone meets V_1 only on the side of
the base point, so no component test is needed). Distances come from the
cross ratio built from q itself,

    [a, x, y, b] = q(y-a) q(x-b) / (q(y-b) q(x-a)),
    d(x, y) = (1/2) log [a, x, y, b],

with a, x, y, b in order along the chord; this equals the classical
Hilbert metric log of Euclidean ratios, and both routes are implemented
as independent cross-checks. Differences of chart points live in
V_0 = {|v|_1 = 0}, where the form is positive definite, so every chord
quadratic has a positive leading coefficient.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import coxeter, numeric
from .errors import NumericalError, ValidationError

#: Chart membership: | |x|_1 - 1 | must stay below this.
CHART_TOL = 1e-8

#: Points with q(x) above this (too close to the boundary) are rejected
#: from distance computations rather than silently extrapolated.
BOUNDARY_TOL = 1e-10

#: Residual target for boundary hits: |q(hit)| <= this.
HIT_RESIDUAL = 1e-10


def _require_chart(sys, x):
    x = np.asarray(x, dtype=float)
    norm = coxeter.one_norm(sys, x)
    if np.any(np.abs(norm - 1.0) > CHART_TOL):
        raise ValidationError("point is not on the chart: |x|_1 != 1")
    return x


def locate_point(sys, x, tol=None):
    """Classify a chart point as 'interior', 'boundary' or 'outside'.

    Interior means q(x) < -tol; the positive component is automatic on
    the chart because the opposite cone has negative |.|_1.
    """
    x = _require_chart(sys, x)
    tol = sys.zero_tol if tol is None else tol
    q = float(coxeter.quad_form(sys, x))
    if q < -tol:
        return "interior"
    if q <= tol:
        return "boundary"
    return "outside"


@dataclass(frozen=True)
class BoundaryPair:
    """Chord hits a (behind x) and b (beyond y), with their parameters.

    Along x + t (y - x): a sits at t_a <= 0, x at 0, y at 1, b at
    t_b >= 1, which witnesses the ordering a, x, y, b.
    """

    a: np.ndarray
    b: np.ndarray
    t_a: float
    t_b: float


def _chord_coefficients(sys, x, u):
    """Coefficients of q(x + t u) = q(u) t^2 + 2 B(x, u) t + q(x)."""
    return (
        coxeter.quad_form(sys, u),
        2.0 * coxeter.bilinear(sys, x, u),
        coxeter.quad_form(sys, x),
    )


def boundary_hits(sys, x, y):
    """Both boundary points of the chord through interior points x, y."""
    x = _require_chart(sys, x)
    y = _require_chart(sys, y)
    if x.ndim != 1:
        raise ValidationError("boundary_hits takes single points; see chord_hits_many")
    u = y - x
    if float(np.max(np.abs(u))) <= 1e-14:
        raise ValidationError("chord endpoints coincide")
    for name, p in (("x", x), ("y", y)):
        if float(coxeter.quad_form(sys, p)) >= -BOUNDARY_TOL:
            raise ValidationError(f"{name} is not interior to the domain")
    a2, a1, a0 = _chord_coefficients(sys, x, u)
    sol = numeric.solve_quadratic(a2, a1, a0)
    if len(sol.roots) != 2:
        raise NumericalError("chord solve degenerate: expected two boundary hits")
    t_a, t_b = sol.roots
    if not (t_a <= 0.0 and t_b >= 1.0):
        raise NumericalError(
            f"chord roots ({t_a:.3e}, {t_b:.3e}) do not bracket the segment"
        )
    a = x + t_a * u
    b = x + t_b * u
    for hit in (a, b):
        if abs(float(coxeter.quad_form(sys, hit))) > HIT_RESIDUAL:
            raise NumericalError("boundary hit residual exceeds 1e-10")
    return BoundaryPair(a=a, b=b, t_a=float(t_a), t_b=float(t_b))


def chord_hits_many(sys, x, y):
    """Vectorized chord parameters (t_a, t_b) for rows of x, y."""
    u = y - x
    a2 = coxeter.quad_form(sys, u)
    a1 = 2.0 * coxeter.bilinear(sys, x, u)
    a0 = coxeter.quad_form(sys, x)
    if np.any(a2 <= 0.0):
        raise NumericalError("chord quadratic is not convex: duplicate endpoints?")
    disc = a1 * a1 - 4.0 * a2 * a0
    if np.any(disc < 0.0):
        raise NumericalError("chord discriminant negative")
    sq = np.sqrt(disc)
    qq = -0.5 * (a1 + np.copysign(sq, np.where(a1 == 0.0, 1.0, a1)))
    r1 = qq / a2
    r2 = a0 / qq
    return np.minimum(r1, r2), np.maximum(r1, r2)


def cross_ratio(sys, a, x, y, b):
    """The cross ratio q(y-a) q(x-b) / (q(y-b) q(x-a))."""
    den_yb = float(coxeter.quad_form(sys, y - b))
    den_xa = float(coxeter.quad_form(sys, x - a))
    if den_yb == 0.0 or den_xa == 0.0:
        which = "(y, b)" if den_yb == 0.0 else "(x, a)"
        raise NumericalError(f"cross ratio degenerate: q of difference {which} is zero")
    num = float(coxeter.quad_form(sys, y - a)) * float(coxeter.quad_form(sys, x - b))
    return num / (den_yb * den_xa)


def distance(sys, x, y):
    """Hilbert distance via the bilinear-form cross ratio."""
    x = _require_chart(sys, x)
    y = _require_chart(sys, y)
    if float(np.max(np.abs(y - x))) <= 1e-14:
        return 0.0
    hits = boundary_hits(sys, x, y)
    value = cross_ratio(sys, hits.a, x, y, hits.b)
    return 0.5 * math.log(value)


def distance_euclidean_ratio(sys, x, y):
    """Hilbert distance via the classical Euclidean-ratio formula.

    Independent code path from :func:`distance`; the two agree to 1e-9
    and the tests enforce it.
    """
    x = _require_chart(sys, x)
    y = _require_chart(sys, y)
    if float(np.max(np.abs(y - x))) <= 1e-14:
        return 0.0
    hits = boundary_hits(sys, x, y)
    ya = np.linalg.norm(y - hits.a)
    xb = np.linalg.norm(x - hits.b)
    yb = np.linalg.norm(y - hits.b)
    xa = np.linalg.norm(x - hits.a)
    return math.log((ya * xb) / (yb * xa))


def distance_many(sys, x, y):
    """Vectorized Hilbert distance for matching rows of x and y.

    Same chord construction as :func:`distance`, expressed through the
    chord parameters: with hits at t_a <= 0 and t_b >= 1,
    d = log of ((1-t_a) t_b / ((t_b-1)(-t_a))).
    """
    x, y = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    )
    lead = x.shape[:-1]
    x = x.reshape(-1, x.shape[-1])
    y = y.reshape(-1, y.shape[-1])
    qx = coxeter.quad_form(sys, x)
    qy = coxeter.quad_form(sys, y)
    if np.any(qx >= -BOUNDARY_TOL) or np.any(qy >= -BOUNDARY_TOL):
        raise ValidationError("some point is not interior to the domain")
    same = np.max(np.abs(y - x), axis=-1) <= 1e-14
    out = np.zeros(x.shape[0])
    if not np.all(same):
        t_a, t_b = chord_hits_many(sys, x[~same], y[~same])
        out[~same] = np.log(((1.0 - t_a) * t_b) / ((t_b - 1.0) * (-t_a)))
    return out.reshape(lead)


def gromov_product(sys, x, y, p):
    """(x | y)_p = (d(x,p) + d(y,p) - d(x,y)) / 2."""
    return 0.5 * (distance(sys, x, p) + distance(sys, y, p) - distance(sys, x, y))


def gromov_products_many(sys, x, y, p):
    d_xp = distance_many(sys, x, p)
    d_yp = distance_many(sys, y, p)
    d_xy = distance_many(sys, x, y)
    return 0.5 * (d_xp + d_yp - d_xy)


def estimate_delta(sys, points, samples=10_000, seed=0):
    """Empirical hyperbolicity constant: max four-point defect.

    Samples quadruples (x, y, z, p) from ``points`` and returns the
    largest value of min((x|y)_p, (y|z)_p) - (x|z)_p, clamped at 0.
    A desk-scale surrogate for the true constant.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] < 4:
        raise ValidationError("need at least four points to estimate delta")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, pts.shape[0], size=(samples, 4))
    x, y, z, p = (pts[idx[:, i]] for i in range(4))
    xy = gromov_products_many(sys, x, y, p)
    yz = gromov_products_many(sys, y, z, p)
    xz = gromov_products_many(sys, x, z, p)
    defect = np.minimum(xy, yz) - xz
    return float(max(0.0, defect.max()))


def visual_metric(sys, seq_a, seq_b, eps, base=None, delta_hat=None, tail=None):
    """Finite-prefix visual metric e^(-eps * (a|b)) between two sequences.

    The Gromov product of the two boundary classes is approximated by the
    infimum of pairwise products over the tails (indices >= ``tail``,
    default half the shorter prefix). Refines monotonically as the
    prefixes grow. Requires eps * delta_hat <= 1/5 for the estimated
    hyperbolicity constant; pass ``delta_hat`` to skip re-estimation.
    """
    a = np.asarray(seq_a, dtype=float)
    b = np.asarray(seq_b, dtype=float)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] < 1 or b.shape[0] < 1:
        raise ValidationError("sequences must be nonempty arrays of chart points")
    if eps < 0:
        raise ValidationError("eps must be >= 0")
    base = sys.base_point if base is None else np.asarray(base, dtype=float)
    if delta_hat is None:
        pool = np.vstack([a, b, base[None, :]])
        delta_hat = estimate_delta(sys, pool, samples=min(10_000, 20 * len(pool) ** 2))
    if eps * delta_hat > 0.2:
        raise ValidationError(
            f"eps * delta_hat = {eps * delta_hat:.3f} exceeds 1/5 "
            f"(estimated delta_hat = {delta_hat:.3f})"
        )
    if tail is None:
        tail = min(a.shape[0], b.shape[0]) // 2
    tail = min(tail, a.shape[0] - 1, b.shape[0] - 1)
    ta = a[tail:]
    tb = b[tail:]
    ii, jj = np.meshgrid(np.arange(ta.shape[0]), np.arange(tb.shape[0]), indexing="ij")
    prods = gromov_products_many(
        sys, ta[ii.ravel()], tb[jj.ravel()],
        np.broadcast_to(base, (ii.size, sys.rank)),
    )
    return float(np.exp(-eps * prods.min()))


def geodesic_point(sys, x, target, t):
    """The point at Hilbert arclength t from x along the chord toward ``target``.

    ``target`` may be interior or on the boundary. Uses the exponential
    parametrization of the cross ratio: with chord hits at s_a < 0 and
    s_b (s = 0 at x, s = 1 at target), the point at distance t solves
    (s - s_a) / (s_b - s) = e^t (-s_a) / s_b.
    """
    x = _require_chart(sys, x)
    target = _require_chart(sys, target)
    if t < 0:
        raise ValidationError("arclength t must be >= 0")
    if t == 0:
        return x.copy()
    u = target - x
    if float(np.max(np.abs(u))) <= 1e-14:
        raise ValidationError("target coincides with the start point")
    if float(coxeter.quad_form(sys, x)) >= -BOUNDARY_TOL:
        raise ValidationError("x is not interior to the domain")
    a2, a1, a0 = _chord_coefficients(sys, x, u)
    sol = numeric.solve_quadratic(float(a2), float(a1), float(a0))
    if len(sol.roots) != 2:
        raise NumericalError("chord solve degenerate")
    s_a, s_b = sol.roots
    q_target = float(coxeter.quad_form(sys, target))
    if q_target < -BOUNDARY_TOL:
        # Interior target: total length is d(x, target); beyond it is an error.
        total = distance(sys, x, target)
        if t > total + 1e-12:
            raise ValidationError(
                f"arclength {t} exceeds the distance {total:.6g} to the interior target"
            )
    ratio = (-s_a) / s_b * math.exp(t)
    s = (ratio * s_b + s_a) / (1.0 + ratio)
    return x + s * u


def sample_interior(sys, count, rng, radial=0.95):
    """Sample chart points of the open domain, uniform-ish in radius.

    Directions are drawn in V_0 (where B(o, v) = 0, so the chord through
    the base point has the closed form q(o + t v) = -lam + t^2 q(v)) and
    scaled by ``radial`` times the boundary parameter.
    """
    raw = rng.standard_normal((count, sys.rank))
    v = raw - np.outer(raw @ sys.base_point, sys.base_point)
    qv = coxeter.quad_form(sys, v)
    qv = np.where(qv <= 0, np.nan, qv)  # cannot happen: V_0 is positive definite
    t_max = np.sqrt(sys.neg_eigenvalue / qv)
    t = radial * t_max * rng.uniform(0.0, 1.0, size=count) ** (1.0 / max(1, sys.rank - 1))
    return sys.base_point[None, :] + t[:, None] * v
