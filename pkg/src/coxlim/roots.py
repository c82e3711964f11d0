"""Root system enumeration and its normalized projection.

The root system is the orbit of the simple basis under the reflection
action. Roots are unit vectors for the form (q(r) = 1) and every root
has one-signed coordinates, so the chart projection r -> r / |r|_1 is
defined on all of them and identifies each root with its negative.
The accumulation set of the normalized roots is approximated by
depth-indexed frontiers: the chart points first reached at depth k.
"""

from dataclasses import dataclass

import numpy as np

from . import coxeter, numeric
from .errors import EnumerationCapError, ValidationError

#: Dedup pitch for unnormalized root coordinates. Roots do not cluster
#: at the depths we enumerate, so a coarse grid is safe.
ROOT_GRID = 1e-8


@dataclass(frozen=True)
class Root:
    """A root with its first-appearance depth and a witnessing word.

    ``word`` applied to the simple root ``source`` reproduces ``vector``,
    and ``depth`` is the smallest word length that does so.
    """

    vector: np.ndarray
    depth: int
    word: tuple
    source: int


@dataclass
class RootCloud:
    """All distinct roots up to a depth, plus their chart projections.

    ``normalized`` maps a dedup key to (chart point, first depth); the
    first depth of a chart point is the minimum over the +/- root pair.
    """

    roots: list
    normalized: dict
    depth: int
    rank: int

    def by_depth(self, k):
        return [r for r in self.roots if r.depth == k]

    def count(self):
        return len(self.roots)


def orbit_of_basis(gram, depth, max_roots=2_000_000):
    """Breadth-first orbit of the standard basis under the B-reflections.

    Works on a raw Gram matrix (no signature gate), which lets callers
    study degenerate blocks such as a single affine bond. Returns a list
    of Root records with first-appearance depths.
    """
    gram = numeric.check_symmetric(gram)
    n = gram.shape[0]
    if depth < 0:
        raise ValidationError("depth must be >= 0")
    reflections = []
    for i in range(n):
        s = np.eye(n)
        s[i, :] -= 2.0 * gram[i, :]
        reflections.append(s)
    seen = {}
    roots = []
    frontier = []
    for i in range(n):
        vec = np.zeros(n)
        vec[i] = 1.0
        key = numeric.quantize_key(vec, ROOT_GRID)
        root = Root(vector=vec, depth=0, word=(), source=i)
        seen[key] = root
        roots.append(root)
        frontier.append(root)
    for k in range(1, depth + 1):
        new = []
        for root in frontier:
            for i in range(n):
                vec = reflections[i] @ root.vector
                key = numeric.quantize_key(vec, ROOT_GRID)
                if key in seen:
                    continue
                vec.setflags(write=False)
                item = Root(
                    vector=vec, depth=k, word=(i,) + root.word, source=root.source
                )
                seen[key] = item
                new.append(item)
                if len(roots) + len(new) > max_roots:
                    raise EnumerationCapError(
                        f"root orbit exceeded {max_roots} at depth {k}",
                        completed_levels=k - 1,
                    )
        new.sort(key=lambda r: numeric.quantize_key(r.vector, ROOT_GRID))
        roots.extend(new)
        frontier = new
    return roots


def chart_key(sys, vector, grid=ROOT_GRID):
    """Dedup key of the chart image of a root.

    Two roots share a chart point exactly when they are negatives of
    each other (roots are unit vectors for the form), so the key is the
    quantized positive-side representative of the unnormalized root;
    quantizing in chart space would instead merge distinct roots once
    the normalized points cluster.
    """
    rep = vector if coxeter.one_norm(sys, vector) > 0 else -vector
    return numeric.quantize_key(rep, grid)


def enumerate_roots(sys, depth, max_roots=2_000_000):
    """Enumerate all distinct roots of depth <= ``depth`` with witnesses."""
    roots = orbit_of_basis(sys.gram, depth, max_roots=max_roots)
    normalized = {}
    for root in roots:
        key = chart_key(sys, root.vector)
        prev = normalized.get(key)
        if prev is None or root.depth < prev[1]:
            normalized[key] = (coxeter.normalize(sys, root.vector), root.depth)
    return RootCloud(roots=roots, normalized=normalized, depth=depth, rank=sys.rank)


def frontier(cloud, k):
    """Chart points of roots first appearing at exactly depth k."""
    if k > cloud.depth:
        raise ValidationError(
            f"depth {k} exceeds the enumerated depth {cloud.depth}"
        )
    pts = [
        chart for chart, first in cloud.normalized.values() if first == k
    ]
    pts.sort(key=lambda p: numeric.quantize_key(p, ROOT_GRID))
    return np.array(pts) if pts else np.empty((0, cloud.rank))


@dataclass(frozen=True)
class SignCoherenceReport:
    checked: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def sign_coherence_check(cloud, tol=1e-9):
    """Confirm every enumerated root has one-signed coordinates.

    Returns a report; violations (a root with coordinates of strictly
    both signs beyond ``tol``) are expected never to occur.
    """
    violations = []
    for root in cloud.roots:
        v = root.vector
        if np.any(v > tol) and np.any(v < -tol):
            violations.append(root)
    return SignCoherenceReport(checked=len(cloud.roots), violations=tuple(violations))
