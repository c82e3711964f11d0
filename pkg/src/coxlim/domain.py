"""Fundamental chamber, descent, Dirichlet verification and cusps.

The open chamber is {x interior : B(a, x) < 0 for every simple root a};
its core is the further intersection with the open simplex spanned by
the normalized simple roots (all coordinates positive). The chamber is a
fundamental region for the normalized action and the Dirichlet region at
each of its points, which the report-valued checks here verify at desk
scale. Descent through chamber walls recovers, for any interior point,
the reduced word whose chamber contains it.
"""

from dataclasses import dataclass

import numpy as np

from . import coxeter, hilbert, numeric
from .errors import NumericalError, ValidationError

#: Hyperplane-incidence tolerance on B(a, x). Incidences are genuine in
#: symmetric configurations, so they are flagged, not hidden.
WALL_TOL = 1e-10


def in_chamber(sys, x, tol=WALL_TOL):
    """True when x is interior to the domain and strictly inside the chamber."""
    x = np.asarray(x, dtype=float)
    q = coxeter.quad_form(sys, x)
    walls = x @ sys.gram.T  # row a of B against x, for every simple root a
    inside = (q < -tol) & np.all(walls < -tol, axis=-1)
    return bool(inside) if np.isscalar(inside) or inside.ndim == 0 else inside


def in_chamber_core(sys, x, tol=WALL_TOL):
    """True when x is in the chamber and in the open simplex (all coords > 0)."""
    x = np.asarray(x, dtype=float)
    core = np.all(x > tol, axis=-1)
    return in_chamber(sys, x, tol) & core


@dataclass(frozen=True)
class ChamberResult:
    """Result of descending a point into the closed fundamental chamber.

    ``word`` (reduced) satisfies x in word . closure(chamber);
    ``representative`` is word^-1 . x; ``crossings`` records the wall of
    the chamber crossed at each step. ``perturbed`` flags that the input
    sat on a wall within tolerance and was nudged before descending.
    """

    word: coxeter.Word
    representative: np.ndarray
    crossings: tuple
    perturbed: bool = False


def chamber_of(sys, x, tol=WALL_TOL, max_steps=10 ** 6):
    """Find the chamber containing an interior point by wall descent.

    Repeatedly reflects across the lowest-index violated wall; each step
    crosses one wall of the chamber, so the recorded word is reduced.
    Points on a wall within ``tol`` are perturbed by 1e-9 in a fixed
    pseudo-random direction and flagged.
    """
    x = np.asarray(x, dtype=float)
    if hilbert.locate_point(sys, x) != "interior":
        raise ValidationError("descent requires an interior point")
    perturbed = False
    if np.min(np.abs(x @ sys.gram.T)) <= tol:
        rng = np.random.default_rng(0)
        direction = rng.standard_normal(sys.rank)
        direction -= (direction @ sys.base_point) * sys.base_point
        x = coxeter.normalize(sys, x + 1e-9 * direction)
        perturbed = True
    current = x.copy()
    crossings = []
    for step in range(1, max_steps + 1):
        walls = current @ sys.gram.T
        positive = np.nonzero(walls > tol)[0]
        if positive.size == 0:
            break
        i = int(positive[0])
        current = coxeter.normalized_act(sys, sys.reflections[i], current)
        crossings.append((step, i))
    else:
        raise NumericalError(f"descent did not terminate within {max_steps} steps")
    letters = tuple(i for _, i in crossings)
    return ChamberResult(
        word=coxeter.Word(letters, reduced=True),
        representative=current,
        crossings=tuple(crossings),
        perturbed=perturbed,
    )


def sample_chamber(sys, count, rng, core=True, radial=0.9, max_tries=200):
    """Rejection-sample chart points of the (core) chamber.

    Mixes the base point with interior samples and keeps those inside.
    """
    keep = []
    predicate = in_chamber_core if core else in_chamber
    for _ in range(max_tries):
        cand = hilbert.sample_interior(sys, 4 * count, rng, radial=radial)
        mix = rng.uniform(0.0, 1.0, size=cand.shape[0]) ** 2
        cand = sys.base_point[None, :] + mix[:, None] * (cand - sys.base_point)
        mask = predicate(sys, cand)
        keep.extend(cand[mask])
        if len(keep) >= count:
            return np.array(keep[:count])
    raise NumericalError(f"could not sample {count} chamber points")


@dataclass(frozen=True)
class DirichletReport:
    """Outcome of the Dirichlet-region check at a chamber point."""

    center: np.ndarray
    radius: int
    samples: int
    violations: tuple
    min_margin: float

    @property
    def ok(self):
        return not self.violations


def dirichlet_check(sys, x, radius, samples=100, seed=0, ball=None):
    """Verify d(x, y) < d(x, w.y) for sampled chamber y and enumerated w != id.

    Report-valued: returns all violations (expected none) and the
    minimal margin min d(x, w.y) - d(x, y) over the sweep.
    """
    x = np.asarray(x, dtype=float)
    if not in_chamber(sys, x):
        raise ValidationError("Dirichlet center must lie strictly inside the chamber")
    if radius < 1:
        raise ValidationError("radius must be >= 1")
    if ball is None:
        ball = coxeter.enumerate_ball(sys, radius)
    rng = np.random.default_rng(seed)
    ys = sample_chamber(sys, samples, rng)
    base = hilbert.distance_many(sys, np.broadcast_to(x, ys.shape), ys)
    min_margin = np.inf
    violations = []
    for level in ball.levels[1:]:
        for elt in level:
            wy = coxeter.normalized_act(sys, elt.matrix, ys)
            moved = hilbert.distance_many(sys, np.broadcast_to(x, wy.shape), wy)
            margins = moved - base
            worst = int(np.argmin(margins))
            if margins[worst] < min_margin:
                min_margin = float(margins[worst])
            bad = np.nonzero(margins <= 0.0)[0]
            for j in bad:
                violations.append((elt.word.letters, j))
    return DirichletReport(
        center=x, radius=radius, samples=samples,
        violations=tuple(violations), min_margin=float(min_margin),
    )


def qi_estimate(sys, radius, ball=None):
    """Orbit-map quasi-isometry constants over word lengths 1..radius.

    Returns (k_low, k_high) = extreme values of d(w.o, o)/|w|. Requires
    a bounded fundamental region: allowed for cocompact actions (the
    chamber is bounded) and convex-cocompact ones (the core chamber is
    bounded, and orbit points stay in the core); rejected for actions
    with cusps.
    """
    if radius < 1:
        raise ValidationError("radius must be >= 1")
    kind = coxeter.classify_action(sys).kind
    if kind == coxeter.WITH_CUSPS:
        raise ValidationError(
            "orbit-map constants need a bounded fundamental region; "
            "an action with cusps has none (unbounded chamber and core)"
        )
    if ball is None:
        ball = coxeter.enumerate_ball(sys, radius)
    o = sys.base_point
    k_low, k_high = np.inf, 0.0
    for k, level in enumerate(ball.levels[1:], start=1):
        pts = np.array([
            coxeter.normalized_act(sys, elt.matrix, o) for elt in level
        ])
        dists = hilbert.distance_many(sys, np.broadcast_to(o, pts.shape), pts)
        ratios = dists / k
        k_low = min(k_low, float(ratios.min()))
        k_high = max(k_high, float(ratios.max()))
    return k_low, k_high


@dataclass(frozen=True)
class Tangency:
    """A boundary tangency point produced by a minimal affine subsystem."""

    subset: tuple
    point: np.ndarray
    q_residual: float
    wall_residual: float


def cusp_detect(sys, residual_tol=1e-9):
    """Tangency points of the minimal affine standard subsystems.

    For each inclusion-minimal affine subset, the kernel eigenvector of
    the principal submatrix, embedded with zeros and normalized to the
    chart, is the cusp point: it satisfies q(v) = 0 and B(v, a) = 0 for
    every simple root a of the subset, both verified to ``residual_tol``.
    """
    action = coxeter.classify_action(sys)
    out = []
    for subset in action.minimal_affine:
        idx = np.asarray(subset)
        sub = sys.gram[np.ix_(idx, idx)]
        eig = numeric.eig_sym(sub)
        zero = np.abs(eig.eigenvalues) <= sys.zero_tol
        if int(zero.sum()) != 1:
            raise NumericalError(
                f"affine subsystem {tuple(i + 1 for i in subset)} has kernel "
                f"dimension {int(zero.sum())}; check the zero tolerance"
            )
        kernel = eig.eigenvectors[:, int(np.nonzero(zero)[0][0])]
        if kernel.sum() < 0:
            kernel = -kernel
        v = np.zeros(sys.rank)
        v[idx] = kernel
        point = coxeter.normalize(sys, v)
        q_res = abs(float(coxeter.quad_form(sys, point)))
        wall_res = float(np.max(np.abs(point @ sys.gram.T[:, idx])))
        if max(q_res, wall_res) > residual_tol:
            raise NumericalError(
                f"tangency residual {max(q_res, wall_res):.3e} exceeds "
                f"{residual_tol} for subset {tuple(i + 1 for i in subset)}"
            )
        out.append(Tangency(
            subset=subset, point=point, q_residual=q_res, wall_residual=wall_res,
        ))
    return out
