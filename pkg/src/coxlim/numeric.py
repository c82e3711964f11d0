"""Dense symmetric linear algebra and small geometry primitives.

All operations are pure functions of their inputs and deterministic, so
they are safe to call from any number of concurrent callers. Matrices
are small (rank of the groups we care about, n <= ~20), which is why the
eigensolver is a cyclic Jacobi sweep: robustness and reproducibility
matter more than asymptotics at this size.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .errors import NumericalError, ValidationError

#: Default relative threshold below which an eigenvalue counts as zero.
#: Affine detection hinges on this, so callers may override it.
ZERO_TOL_SCALE = 1e-9


def check_symmetric(matrix):
    """Validate and return a square, exactly symmetric float matrix."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValidationError("matrix entries are not exactly symmetric")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def max_norm(matrix):
    return float(np.max(np.abs(matrix)))


class Signature(NamedTuple):
    """Counts of positive, negative and (within tolerance) zero eigenvalues."""

    pos: int
    neg: int
    zero: int

    def __str__(self):
        if self.zero:
            return f"({self.pos},{self.neg}; {self.zero} zero)"
        return f"({self.pos},{self.neg})"


@dataclass(frozen=True)
class EigenResult:
    """Full spectral decomposition of a symmetric matrix.

    ``eigenvalues`` are ascending; ``eigenvectors[:, i]`` is the unit
    eigenvector for ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_sym(matrix, max_sweeps=64):
    """Diagonalize a symmetric matrix with cyclic Jacobi rotations.

    Deterministic for a fixed input. Raises NumericalError with the
    residual if the off-diagonal mass has not collapsed after
    ``max_sweeps`` full sweeps (never observed for n <= 20).
    """
    a = check_symmetric(matrix).copy()
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return EigenResult(a[0].copy(), v)
    scale = max_norm(a) or 1.0
    stop = 1e-15 * scale
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            row = np.abs(a[p, p + 1:])
            if row.size:
                off = max(off, float(row.max()))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                for i in range(n):
                    if i != p and i != q:
                        aip, aiq = a[i, p], a[i, q]
                        a[i, p] = a[p, i] = c * aip - s * aiq
                        a[i, q] = a[q, i] = s * aip + c * aiq
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    else:
        raise NumericalError(
            f"Jacobi sweep did not converge in {max_sweeps} sweeps; "
            f"off-diagonal residual {off:.3e}"
        )
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return EigenResult(eigenvalues[order], v[:, order])


def signature_of(eigenvalues, zero_tol):
    """Count eigenvalue signs, treating |lam| <= zero_tol as zero."""
    lam = np.asarray(eigenvalues, dtype=float)
    zero = int(np.sum(np.abs(lam) <= zero_tol))
    pos = int(np.sum(lam > zero_tol))
    neg = int(np.sum(lam < -zero_tol))
    return Signature(pos, neg, zero)


class QuadraticRoots(NamedTuple):
    """Real roots of a*t^2 + b*t + c, ascending. ``degenerate`` marks 0=0."""

    roots: tuple
    degenerate: bool = False


#: Discriminants in [-DISC_CLAMP, 0) are treated as a double root.
DISC_CLAMP = 1e-12


def solve_quadratic(a, b, c):
    """Solve a*t^2 + b*t + c = 0 over the reals.

    Returns QuadraticRoots. A negative discriminant within DISC_CLAMP of
    zero is clamped to a double root; a = b = 0 with c != 0 yields no
    roots; a = b = c = 0 sets the degenerate flag.
    """
    for name, val in (("a", a), ("b", b), ("c", c)):
        if not math.isfinite(val):
            raise ValidationError(f"non-finite coefficient {name}={val!r}")
    if a == 0.0:
        if b == 0.0:
            return QuadraticRoots((), degenerate=(c == 0.0))
        return QuadraticRoots((-c / b,))
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        if disc >= -DISC_CLAMP:
            disc = 0.0
        else:
            return QuadraticRoots(())
    if disc == 0.0:
        r = -b / (2.0 * a)
        return QuadraticRoots((r, r))
    sq = math.sqrt(disc)
    # Stable form: avoid cancellation between -b and the root of disc.
    qq = -0.5 * (b + math.copysign(sq, b)) if b != 0.0 else 0.5 * sq
    r1 = qq / a
    r2 = c / qq
    return QuadraticRoots((min(r1, r2), max(r1, r2)))


def quantize_key(vector, grid):
    """Map a coordinate vector to an integer tuple on a grid of pitch ``grid``."""
    if not grid > 0:
        raise ValidationError(f"grid must be positive, got {grid!r}")
    v = np.asarray(vector, dtype=float).ravel()
    if not np.all(np.isfinite(v)):
        raise ValidationError("cannot quantize non-finite coordinates")
    return tuple(int(k) for k in np.round(v / grid))


def hausdorff(points_a, points_b):
    """Hausdorff distance between two finite point sets (Euclidean metric)."""
    a = np.atleast_2d(np.asarray(points_a, dtype=float))
    b = np.atleast_2d(np.asarray(points_b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValidationError("hausdorff requires nonempty point sets")
    if a.shape[1] != b.shape[1]:
        raise ValidationError(
            f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}"
        )
    d_ab = cKDTree(b).query(a)[0].max()
    d_ba = cKDTree(a).query(b)[0].max()
    return float(max(d_ab, d_ba))
