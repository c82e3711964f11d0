"""Coxeter systems of type (n-1,1): Gram form, reflections, words,
the normalized action and signature-based classification.

The geometric representation acts on V = R^n with simple roots the
standard basis. The Gram matrix carries B(a_i, a_j) = -cos(pi/m_ij) for
finite bond orders and an explicit weight <= -1 for each infinite bond.
Accepted systems have signature (n-1, 1): one negative direction. The
Perron eigenvector o of the negative eigenvalue defines the linear
functional |v|_1 = sum_i o_i v_i, and the chart V_1 = {|v|_1 = 1} hosts
the normalized action w . x = w(x) / |w(x)|_1.

A CoxeterSystem is immutable after construction and safe to share.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import numeric
from .errors import (
    EnumerationCapError,
    InvariantError,
    NumericalError,
    ReducibleError,
    SignatureError,
    ValidationError,
)

INFINITY = math.inf

COCOMPACT = "cocompact"
WITH_CUSPS = "with_cusps"
CONVEX_COCOMPACT = "convex_cocompact"

FINITE = "finite"
AFFINE = "affine"
LORENTZIAN = "lorentzian"

#: Dedup pitch for group-element matrices. Entries of distinct elements
#: differ by far more than this at the enumeration radii we support,
#: while float noise on equal elements stays orders of magnitude below.
ELEMENT_GRID = 1e-8


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of bond orders m_ij in {1, 2, 3, ...} u {inf}."""

    orders: tuple

    def __post_init__(self):
        m = self.orders
        n = len(m)
        for i in range(n):
            if len(m[i]) != n:
                raise ValidationError("Coxeter matrix must be square")
            if m[i][i] != 1:
                raise ValidationError(f"diagonal order m[{i}][{i}] must be 1")
            for j in range(n):
                if m[i][j] != m[j][i]:
                    raise ValidationError("Coxeter matrix must be symmetric")
                if i != j:
                    mij = m[i][j]
                    ok = mij == INFINITY or (
                        isinstance(mij, (int, float)) and mij == int(mij) and mij >= 2
                    )
                    if not ok:
                        raise ValidationError(
                            f"off-diagonal order m[{i}][{j}]={mij!r} must be an "
                            "integer >= 2 or infinity"
                        )

    @classmethod
    def from_rows(cls, rows):
        """Build from nested lists; 0 encodes an infinite bond order."""
        conv = tuple(
            tuple(INFINITY if x == 0 else x for x in row) for row in rows
        )
        return cls(conv)

    @property
    def rank(self):
        return len(self.orders)

    def infinite_bonds(self):
        n = self.rank
        return [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if self.orders[i][j] == INFINITY
        ]


@dataclass(frozen=True)
class Word:
    """A word in the generators; ``reduced`` certifies minimal length."""

    letters: tuple
    reduced: bool = False

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(str(i + 1) for i in self.letters)


@dataclass(frozen=True)
class GroupElement:
    """A group element with its action matrix and a witnessing reduced word."""

    matrix: np.ndarray
    word: Word
    key: tuple

    @property
    def length(self):
        return len(self.word.letters)


@dataclass(frozen=True)
class CoxeterSystem:
    """An accepted Coxeter system of type (n-1, 1).

    Fields:
        coxeter: the bond-order matrix, or None when built from a raw Gram.
        gram: the bilinear form B in the simple-root basis.
        base_point: the Perron eigenvector o (Euclidean norm 1, all
            coordinates positive; note |o|_1 = ||o||^2 = 1).
        neg_eigenvalue: lam > 0 with B o = -lam o.
        signature: (n-1, 1, 0) for accepted systems.
        eigen: the full spectral decomposition of the Gram matrix.
        zero_tol: absolute eigenvalue threshold used for signatures.
        reflections: the n simple reflection matrices s_i.
    """

    gram: np.ndarray
    base_point: np.ndarray
    neg_eigenvalue: float
    signature: numeric.Signature
    eigen: numeric.EigenResult
    zero_tol: float
    reflections: tuple
    coxeter: CoxeterMatrix = None
    infinity_weights: dict = None

    @property
    def rank(self):
        return self.gram.shape[0]


def gram_from_coxeter(cox, infinity_weights=None):
    """Assemble the Gram matrix for a bond-order matrix.

    Every infinite bond must come with an explicit weight <= -1 in
    ``infinity_weights`` (keys are index pairs, either orientation).
    """
    weights = dict(infinity_weights or {})
    lookup = {}
    for (i, j), w in weights.items():
        lookup[(min(i, j), max(i, j))] = float(w)
    n = cox.rank
    gram = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            mij = cox.orders[i][j]
            if mij == INFINITY:
                if (i, j) not in lookup:
                    raise ValidationError(
                        f"bond ({i + 1},{j + 1}) is infinite but no weight was given"
                    )
                w = lookup.pop((i, j))
                if not w <= -1.0:
                    raise ValidationError(
                        f"weight {w} at infinite bond ({i + 1},{j + 1}) must be <= -1"
                    )
                entry = w
            elif mij == 2:
                entry = 0.0  # -cos(pi/2) carries float dust otherwise
            else:
                entry = -math.cos(math.pi / mij)
            gram[i, j] = gram[j, i] = entry
    if lookup:
        extra = sorted((i + 1, j + 1) for i, j in lookup)
        raise ValidationError(f"weights given for non-infinite bonds: {extra}")
    return gram


def irreducible_blocks(gram):
    """Connected components of the off-diagonal support graph."""
    a = np.asarray(gram)
    n = a.shape[0]
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and j != i and a[i, j] != 0.0:
                    seen[j] = True
                    stack.append(j)
        blocks.append(sorted(comp))
    return blocks


def perron_base_point(gram, zero_tol_scale=numeric.ZERO_TOL_SCALE):
    """Positive unit eigenvector of the negative eigenvalue, and lam > 0.

    Requires an irreducible Gram matrix of signature (n-1, 1); the
    Perron-Frobenius theorem for -B + I then makes the eigenvector
    one-signed, and we fix the all-positive representative.
    """
    gram = numeric.check_symmetric(gram)
    eig = numeric.eig_sym(gram)
    zero_tol = zero_tol_scale * (numeric.max_norm(gram) or 1.0)
    lam_min = eig.eigenvalues[0]
    if not lam_min < -zero_tol:
        raise SignatureError(
            "no negative eigenvalue: smallest is "
            f"{lam_min:.6e} (zero tolerance {zero_tol:.1e})",
            signature=numeric.signature_of(eig.eigenvalues, zero_tol),
        )
    o = eig.eigenvectors[:, 0].copy()
    if o.sum() < 0:
        o = -o
    mix_tol = 1e-8 * float(np.max(np.abs(o)))
    if np.any(o < -mix_tol):
        raise InvariantError(
            "negative-eigenvalue eigenvector has mixed signs; "
            "is the matrix irreducible?"
        )
    o = np.abs(o)
    o /= np.linalg.norm(o)
    lam = -float(lam_min)
    residual = float(np.max(np.abs(gram @ o + lam * o)))
    if residual > 1e-10 * max(1.0, numeric.max_norm(gram)):
        raise NumericalError(f"Perron pair residual {residual:.3e} exceeds 1e-10")
    return o, lam


def _finish_system(gram, cox, weights, zero_tol_scale):
    gram = numeric.check_symmetric(gram)
    n = gram.shape[0]
    if not np.allclose(np.diag(gram), 1.0, atol=1e-12):
        raise ValidationError("Gram diagonal must be 1")
    blocks = irreducible_blocks(gram)
    if len(blocks) > 1:
        pretty = [[i + 1 for i in b] for b in blocks]
        raise ReducibleError(
            f"Gram matrix is reducible with blocks {pretty}; "
            "resubmit one irreducible component",
            blocks=blocks,
        )
    eig = numeric.eig_sym(gram)
    zero_tol = zero_tol_scale * (numeric.max_norm(gram) or 1.0)
    sig = numeric.signature_of(eig.eigenvalues, zero_tol)
    if sig != numeric.Signature(n - 1, 1, 0):
        raise SignatureError(
            f"signature {sig} is not ({n - 1},1)", signature=sig
        )
    o, lam = perron_base_point(gram, zero_tol_scale)
    refl = []
    for i in range(n):
        s = np.eye(n)
        s[i, :] -= 2.0 * gram[i, :]
        s.setflags(write=False)
        refl.append(s)
    gram = gram.copy()
    gram.setflags(write=False)
    o.setflags(write=False)
    return CoxeterSystem(
        gram=gram,
        base_point=o,
        neg_eigenvalue=lam,
        signature=sig,
        eigen=eig,
        zero_tol=zero_tol,
        reflections=tuple(refl),
        coxeter=cox,
        infinity_weights=dict(weights) if weights else None,
    )


def build_system(coxeter_matrix, infinity_weights=None,
                 zero_tol_scale=numeric.ZERO_TOL_SCALE):
    """Build and validate a CoxeterSystem from bond orders plus weights.

    Rejects reducible matrices (naming the blocks) and any signature
    other than (n-1, 1) (reporting the computed signature).
    """
    if not isinstance(coxeter_matrix, CoxeterMatrix):
        coxeter_matrix = CoxeterMatrix.from_rows(coxeter_matrix)
    gram = gram_from_coxeter(coxeter_matrix, infinity_weights)
    return _finish_system(gram, coxeter_matrix, infinity_weights, zero_tol_scale)


def system_from_gram(gram, zero_tol_scale=numeric.ZERO_TOL_SCALE):
    """Build a CoxeterSystem directly from a Gram matrix.

    Off-diagonal entries must each be either -cos(pi/m) for an integer
    m >= 2 (including 0 for m = 2) or <= -1; this is exactly the set of
    entries a bond-order matrix with weighted infinite bonds can produce.
    """
    gram = numeric.check_symmetric(gram)
    n = gram.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            e = gram[i, j]
            if e > 0 or (-1.0 < e < 0.0 and not _is_cos_entry(e)):
                raise ValidationError(
                    f"Gram entry [{i + 1},{j + 1}]={e!r} is neither "
                    "-cos(pi/m) for integer m >= 2 nor <= -1"
                )
    return _finish_system(gram, None, None, zero_tol_scale)


def _is_cos_entry(e, tol=1e-9):
    m = math.pi / math.acos(-e)
    return abs(m - round(m)) <= tol * max(1.0, m)


# ---------------------------------------------------------------------------
# The bilinear form, the chart, and the (normalized) action.

def bilinear(sys, u, v):
    """B(u, v); broadcasts over leading axes of either argument."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != sys.rank or v.shape[-1] != sys.rank:
        raise ValidationError(
            f"vector dimension must be {sys.rank}, got {u.shape[-1]} and {v.shape[-1]}"
        )
    return (u @ sys.gram * v).sum(axis=-1)


def quad_form(sys, v):
    """q(v) = B(v, v)."""
    return bilinear(sys, v, v)


def one_norm(sys, v):
    """|v|_1 = sum_i o_i v_i. Linear; positive on V+, negative on V-."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != sys.rank:
        raise ValidationError(f"vector dimension must be {sys.rank}")
    return v @ sys.base_point


def normalize(sys, v):
    """Project v to the chart V_1 = {|v|_1 = 1}.

    Rejects vectors with |v|_1 within 1e-12 of zero (points of V_0 have
    no chart image). Roots are never rejected: every root lies in
    V+ u V-.
    """
    v = np.asarray(v, dtype=float)
    w = one_norm(sys, v)
    if np.any(np.abs(w) <= 1e-12):
        raise ValidationError("cannot normalize: |v|_1 is within 1e-12 of zero")
    return v / w[..., None] if v.ndim > 1 else v / w


def reflect_simple(sys, i, v):
    """Apply the simple reflection s_i(v) = v - 2 B(a_i, v) a_i."""
    v = np.asarray(v, dtype=float)
    coef = 2.0 * (v @ sys.gram[i])
    out = v.copy()
    out[..., i] -= coef
    return out


def word_matrix(sys, letters):
    """Action matrix of the word s_{i1} s_{i2} ... s_{ik} (applied right to left)."""
    m = np.eye(sys.rank)
    for i in letters:
        m = m @ sys.reflections[i]
    return m


def act_word(sys, letters, v):
    """Apply a word to a vector, rightmost letter first."""
    if isinstance(letters, Word):
        letters = letters.letters
    v = np.asarray(v, dtype=float)
    for i in reversed(tuple(letters)):
        v = reflect_simple(sys, i, v)
    return v


def normalized_act(sys, w, x):
    """The normalized action w . x = w(x) / |w(x)|_1 on chart points.

    ``w`` may be a Word, a letter sequence, a GroupElement or a matrix.
    For x with orbit in the positive cone the denominator is positive;
    a nonpositive |w(x)|_1 raises InvariantError.
    """
    m = as_matrix(sys, w)
    y = np.asarray(x, dtype=float) @ m.T
    norm = one_norm(sys, y)
    if np.any(norm <= 0.0):
        raise InvariantError(
            "|w(x)|_1 <= 0: point left the positive cone under the action"
        )
    return y / norm[..., None] if y.ndim > 1 else y / norm


def as_matrix(sys, w):
    if isinstance(w, GroupElement):
        return w.matrix
    if isinstance(w, Word):
        return word_matrix(sys, w.letters)
    if isinstance(w, np.ndarray):
        return w
    return word_matrix(sys, tuple(w))


# ---------------------------------------------------------------------------
# Ball enumeration with quantized dedup.

def _primary_key(matrix, grid=ELEMENT_GRID):
    return tuple(int(k) for k in np.round(matrix.ravel() / grid))


def _candidate_keys(matrix, grid=ELEMENT_GRID, edge=0.01):
    """Primary key plus neighbors for coordinates near a rounding edge.

    Float noise on two images of the same element is ~1e-11, far below
    grid*edge, so probing the adjacent key whenever a coordinate sits
    within ``edge`` of a quantization boundary makes the dedup immune to
    boundary straddling without weakening separation.
    """
    r = matrix.ravel() / grid
    k0 = np.round(r)
    frac = r - k0
    near = np.nonzero(np.abs(frac) >= 0.5 - edge)[0]
    primary = tuple(int(k) for k in k0)
    keys = [primary]
    if near.size and near.size <= 12:
        for picks in itertools.product((0, 1), repeat=near.size):
            if not any(picks):
                continue
            alt = list(primary)
            for flag, idx in zip(picks, near):
                if flag:
                    alt[idx] += 1 if frac[idx] > 0 else -1
            keys.append(tuple(alt))
    return keys


class Ball:
    """Levelled breadth-first ball in the Cayley graph.

    ``levels[k]`` holds exactly one GroupElement per distinct group
    element of length k, sorted by dedup key, so the enumeration order is
    reproducible. Level membership certifies minimal word length.
    """

    def __init__(self, levels, index):
        self.levels = levels
        self._index = index

    @property
    def radius(self):
        return len(self.levels) - 1

    def elements(self, min_length=0):
        for level in self.levels[min_length:]:
            yield from level

    def level_sizes(self):
        return [len(level) for level in self.levels]

    def __len__(self):
        return sum(len(level) for level in self.levels)

    def lookup(self, matrix):
        """Find the stored element equal to ``matrix``, or None."""
        for key in _candidate_keys(np.asarray(matrix, dtype=float)):
            elt = self._index.get(key)
            if elt is not None:
                return elt
        return None

    def truncate(self, radius):
        """View of the ball restricted to levels 0..radius."""
        if radius >= self.radius:
            return self
        return Ball(self.levels[: radius + 1], self._index)


def enumerate_ball(sys, radius, max_elements=500_000):
    """Enumerate all group elements of length <= radius by BFS.

    Deterministic: each level is sorted by the quantized matrix key.
    Raises EnumerationCapError carrying the completed levels if the
    element cap is hit.
    """
    if radius < 0:
        raise ValidationError("radius must be >= 0")
    identity = GroupElement(
        matrix=np.eye(sys.rank), word=Word((), reduced=True),
        key=_primary_key(np.eye(sys.rank)),
    )
    index = {identity.key: identity}
    levels = [[identity]]
    total = 1
    for k in range(1, radius + 1):
        frontier = []
        for elt in levels[k - 1]:
            for i in range(sys.rank):
                m = elt.matrix @ sys.reflections[i]
                cands = _candidate_keys(m)
                hit = None
                for key in cands:
                    hit = index.get(key)
                    if hit is not None:
                        break
                if hit is not None:
                    if numeric.max_norm(m - hit.matrix) > 10 * ELEMENT_GRID:
                        raise InvariantError(
                            "dedup grid collision: two distinct elements share "
                            "a quantized key; refine ELEMENT_GRID"
                        )
                    continue
                m.setflags(write=False)
                new = GroupElement(
                    matrix=m,
                    word=Word(elt.word.letters + (i,), reduced=True),
                    key=cands[0],
                )
                index[new.key] = new
                frontier.append(new)
                total += 1
        frontier.sort(key=lambda e: e.key)
        levels.append(frontier)
        if total > max_elements:
            raise EnumerationCapError(
                f"ball exceeded {max_elements} elements at level {k}",
                completed_levels=k,
                partial=Ball(levels, index),
            )
    return Ball(levels, index)


# ---------------------------------------------------------------------------
# Subsystem signatures and the action trichotomy.

@dataclass(frozen=True)
class SubsystemEntry:
    kind: str
    signature: numeric.Signature


def subsystem_type(sys, subset):
    """Classify the standard subsystem on ``subset`` by its signature.

    positive definite -> finite; one zero, rest positive -> affine;
    one negative, rest positive -> lorentzian. Any other signature
    raises: for valid inputs the three classes are exhaustive, so an
    outlier signals a bad zero tolerance.
    """
    subset = tuple(sorted(set(subset)))
    if not subset:
        raise ValidationError("subset must be nonempty")
    entry = _subsystem_entry(sys, subset)
    k = len(subset)
    strict_ok = (
        entry.signature == numeric.Signature(k, 0, 0)
        or entry.signature == numeric.Signature(k - 1, 0, 1)
        or entry.signature == numeric.Signature(k - 1, 1, 0)
    )
    if not strict_ok:
        raise NumericalError(
            f"subsystem {tuple(i + 1 for i in subset)} has signature "
            f"{entry.signature}, outside finite/affine/lorentzian; "
            "check the zero tolerance"
        )
    return entry


def _subsystem_entry(sys, subset):
    idx = np.asarray(subset)
    sub = sys.gram[np.ix_(idx, idx)]
    eig = numeric.eig_sym(sub)
    sig = numeric.signature_of(eig.eigenvalues, sys.zero_tol)
    if sig.neg >= 1:
        kind = LORENTZIAN
    elif sig.zero >= 1:
        kind = AFFINE
    else:
        kind = FINITE
    return SubsystemEntry(kind=kind, signature=sig)


@dataclass(frozen=True)
class ActionClass:
    """Trichotomy of the normalized action plus its supporting table.

    ``kind`` is cocompact when every corank-1 standard subsystem is
    finite, with_cusps when some proper standard subsystem is affine,
    convex_cocompact otherwise. ``cusp_ranks`` lists the sizes of the
    inclusion-minimal affine subsystems. ``ct_hypothesis`` is True when
    every standard subsystem of rank >= 3 is positive definite or
    Lorentzian, the condition under which the Cannon-Thurston surjection
    argument for cusp-free actions applies directly.
    """

    kind: str
    subsystem_table: dict
    cusp_ranks: tuple
    ct_hypothesis: bool
    minimal_affine: tuple = ()


def classify_action(sys):
    """Classify the normalized action via standard-subsystem signatures."""
    n = sys.rank
    if n > 16:
        raise ValidationError("classification enumerates subsets; rank > 16 unsupported")
    table = {}
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            table[subset] = _subsystem_entry(sys, subset)
    affine = [s for s, e in table.items() if e.kind == AFFINE and len(s) < n]
    minimal = [
        s for s in affine
        if not any(set(t) < set(s) for t in affine)
    ]
    minimal.sort(key=lambda s: (len(s), s))
    corank1_finite = all(
        table[s].kind == FINITE
        for s in itertools.combinations(range(n), n - 1)
    )
    if corank1_finite:
        kind = COCOMPACT
    elif affine:
        kind = WITH_CUSPS
    else:
        kind = CONVEX_COCOMPACT
    hypothesis = all(
        e.kind in (FINITE, LORENTZIAN)
        for s, e in table.items()
        if len(s) >= 3
    )
    return ActionClass(
        kind=kind,
        subsystem_table=table,
        cusp_ranks=tuple(len(s) for s in minimal),
        ct_hypothesis=hypothesis,
        minimal_affine=tuple(minimal),
    )
