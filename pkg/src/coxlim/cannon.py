"""Bilinear-form perturbations and the boundary-map experiments.

A system with an affine bond (Gram entry exactly -1) has a cusp. The
perturbation family subtracts 1/m at every such bond, turning the
affine dihedral pairs Lorentzian while leaving everything else alone;
for every admissible m the perturbed action is realized on the same
chart as the base system, so orbit points of both actions can be
compared directly. The decay table q(w_k . x0 - pm(w_k) . x0) along a
short sequence, and the collision of the two dihedral power orbits
under the base form versus their separation under the perturbed one,
are the finite-depth content of the boundary-map (Cannon-Thurston)
construction: the perturbed boundary surjects onto the limit set but
cannot be injective.
"""

from dataclasses import dataclass

import numpy as np

from . import coxeter, domain, hilbert, numeric
from .errors import SignatureError, ValidationError

#: Exactness window for detecting Gram entries equal to -1.
AFFINE_BOND_TOL = 1e-12


def affine_bonds(sys):
    """Index pairs (i, j), i < j, with Gram entry exactly -1."""
    n = sys.rank
    return [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(sys.gram[i, j] + 1.0) <= AFFINE_BOND_TOL
    ]


@dataclass(frozen=True)
class Perturbation:
    """The perturbed system at level m.

    ``matrix_a`` holds 1/m at each affine bond of the base system and 0
    elsewhere; ``system`` is the validated system on gram - matrix_a.
    The perturbed normalized action is taken in the base system's chart.
    """

    base: coxeter.CoxeterSystem
    m: float
    bonds: tuple
    matrix_a: np.ndarray
    system: coxeter.CoxeterSystem

    @property
    def reflections(self):
        return self.system.reflections


def perturbed_gram(sys, m):
    """Build the level-m perturbation of a system with an exact -1 bond.

    m may be math.inf (zero perturbation, the base system itself, useful
    as a control). Rejects systems without an exact -1 bond (deeper
    affine subsystems need different methods and are out of scope) and
    any m whose perturbed form loses signature (n-1, 1); the rejection
    names the smallest admissible m found by doubling search.
    """
    bonds = affine_bonds(sys)
    if not bonds:
        raise ValidationError(
            "no Gram entry equals -1 exactly: the rank-2 perturbation "
            "construction does not apply"
        )
    if not (m == np.inf or (m == int(m) and m >= 1)):
        raise ValidationError("m must be a positive integer or inf")
    a = np.zeros_like(sys.gram)
    if m != np.inf:
        for i, j in bonds:
            a[i, j] = a[j, i] = 1.0 / m
    try:
        pert_sys = coxeter.system_from_gram(sys.gram - a)
    except SignatureError as exc:
        smallest = _smallest_admissible(sys, bonds)
        raise SignatureError(
            f"perturbed form at m={m} has signature {exc.signature}; "
            f"smallest admissible m is {smallest}",
            signature=exc.signature,
        ) from exc
    # The base point of the unperturbed system lies in the perturbed
    # chamber for every m, since the perturbation only lowers B(o, a).
    walls = sys.base_point @ pert_sys.gram.T
    if np.any(walls >= 0.0):
        raise ValidationError("base point left the perturbed chamber")
    return Perturbation(
        base=sys, m=float(m), bonds=tuple(bonds), matrix_a=a, system=pert_sys,
    )


def _smallest_admissible(sys, bonds):
    m = 1
    while m <= 2 ** 40:
        a = np.zeros_like(sys.gram)
        for i, j in bonds:
            a[i, j] = a[j, i] = 1.0 / m
        try:
            coxeter.system_from_gram(sys.gram - a)
            return m
        except SignatureError:
            m *= 2
    raise ValidationError("no admissible perturbation level found")


def perturbed_act(pert, w, x):
    """The perturbed normalized action in the base system's chart.

    ``w`` may be a letter sequence, Word or matrix of the perturbed
    reflections; normalization divides by the base |.|_1, realizing the
    perturbed action on the common chart.
    """
    if isinstance(w, np.ndarray):
        m = w
    elif isinstance(w, coxeter.Word):
        m = perturbed_word_matrix(pert, w.letters)
    else:
        m = perturbed_word_matrix(pert, tuple(w))
    y = np.asarray(x, dtype=float) @ m.T
    norm = coxeter.one_norm(pert.base, y)
    if np.any(norm <= 0.0):
        raise ValidationError("|w(x)|_1 <= 0 under the perturbed action")
    return y / norm[..., None] if y.ndim > 1 else y / norm


def perturbed_word_matrix(pert, letters):
    m = np.eye(pert.base.rank)
    for i in letters:
        m = m @ pert.system.reflections[i]
    return m


@dataclass
class ShortSequence:
    """Prefix words w_k of a wall-crossing gallery toward a target.

    letters[i] is the chamber wall crossed at step i+1; the element
    w_k = s_{letters[0]} ... s_{letters[k-1]} has length exactly k and
    w_k . x0 converges toward the target direction. ``complete`` is
    False when the walk stalled before the requested length (the target
    lies in a finite-orbit direction); ``note`` then explains.
    ``path_spread`` reports the largest Hilbert distance from an orbit
    point of the sequence to the chord [x0, target].
    """

    letters: tuple
    target: np.ndarray
    complete: bool
    note: str
    path_spread: float

    def __len__(self):
        return len(self.letters)

    def elements(self, sys):
        """Matrices of the prefix words w_0 = id, w_1, ..., w_K."""
        out = [np.eye(sys.rank)]
        for i in self.letters:
            out.append(out[-1] @ sys.reflections[i])
        return out


def short_sequence(sys, target, length, _retry=True):
    """Walk the chamber gallery along the segment from the base point.

    The segment x(t) = x0 + t (target - x0) crosses the walls of the
    successive chambers; crossing parameters are roots of the linear
    functions t -> B(a_i, U_k^-1 x(t)), so walls are met in segment
    order and each at most once, which makes every prefix word reduced.
    A tie (two walls at one parameter) restarts the walk with a slightly
    perturbed target and is noted in the result.
    """
    target = np.asarray(target, dtype=float)
    if length < 1:
        raise ValidationError("length must be >= 1")
    if float(np.max(np.abs(target - sys.base_point))) <= 1e-12:
        raise ValidationError("target must differ from the base point")
    o = sys.base_point
    letters = []
    inv = np.eye(sys.rank)  # inverse of the prefix word: reversed product
    t = 0.0
    note = ""
    complete = True
    for _ in range(length):
        p = inv @ o
        r = inv @ target
        best_t, best_i, second_t = np.inf, None, np.inf
        for i in range(sys.rank):
            fp = float(sys.gram[i] @ p)
            fr = float(sys.gram[i] @ r)
            if fp == fr:
                continue
            ti = fp / (fp - fr)
            if t + 1e-13 < ti < 1.0:
                if ti < best_t:
                    best_t, second_t, best_i = ti, best_t, i
                elif ti < second_t:
                    second_t = ti
        if best_i is None:
            complete = False
            note = (
                "gallery walk stalled: the remaining segment lies in the "
                "closure of the current chamber (finite-orbit direction)"
            )
            break
        if second_t - best_t <= 1e-12 and _retry:
            rng = np.random.default_rng(1)
            nudge = rng.standard_normal(sys.rank)
            nudge -= (nudge @ sys.base_point) * sys.base_point
            seq = short_sequence(
                sys, target + 1e-9 * nudge, length, _retry=False
            )
            seq.note = (seq.note + " (target perturbed at a wall tie)").strip()
            return seq
        letters.append(best_i)
        inv = sys.reflections[best_i] @ inv
        t = best_t
    seq = ShortSequence(
        letters=tuple(letters), target=target, complete=complete,
        note=note, path_spread=0.0,
    )
    seq.path_spread = _path_spread(sys, seq)
    return seq


def _path_spread(sys, seq, chord_samples=160):
    """Max Hilbert distance from the sequence orbit to the chord [x0, target]."""
    o = sys.base_point
    ts = np.linspace(0.0, 1.0, chord_samples + 1)[:-1]
    chord = o[None, :] + ts[:, None] * (seq.target - o)[None, :]
    q = coxeter.quad_form(sys, chord)
    chord = chord[q < -1e-8]
    if chord.shape[0] == 0:
        return float("nan")
    worst = 0.0
    element = np.eye(sys.rank)
    for i in seq.letters:
        element = element @ sys.reflections[i]
        pt = coxeter.normalized_act(sys, element, o)
        if float(coxeter.quad_form(sys, pt)) >= -1e-8:
            break
        dists = hilbert.distance_many(
            sys, np.broadcast_to(pt, chord.shape), chord
        )
        worst = max(worst, float(dists.min()))
    return worst


def growth_lower_bound(sys, radius, ball=None):
    """min over 1 <= |w| <= radius of |w(x0)|_1 / |w|.

    The one-norm of orbit vectors grows at least linearly in word
    length, so this stays bounded away from zero as the radius grows.
    """
    if radius < 1:
        raise ValidationError("radius must be >= 1")
    if ball is None:
        ball = coxeter.enumerate_ball(sys, radius)
    o = sys.base_point
    best = np.inf
    for k, level in enumerate(ball.levels[1:], start=1):
        for elt in level:
            val = float(coxeter.one_norm(sys, elt.matrix @ o)) / k
            if val < best:
                best = val
    return best


def operator_norm_bound(sys):
    """(c0, c2): max reflection spectral norm and the one-norm comparability.

    c0 bounds ||w(x0)|| <= c0^|w|, and |v|_1 <= c2 ||v|| on the positive
    cone with c2 = 1 (Cauchy-Schwarz against the unit base point), so
    |w(x0)|_1 <= c2 c0^|w|.
    """
    c0 = 0.0
    for s in sys.reflections:
        eig = numeric.eig_sym(s.T @ s)
        c0 = max(c0, float(np.sqrt(eig.eigenvalues[-1])))
    return c0, 1.0


@dataclass(frozen=True)
class DecayTable:
    """q(w_k . x0 - pm(w_k) . x0) for each prefix k and level m.

    Rows are indexed by k = 0..K, columns by the requested m values.
    Differences of chart points live where the form is positive
    definite, so every entry is >= 0. ``envelope_scale[j]`` is the
    smallest a with value <= a / k^2 + 1/m_j for all k >= 1.
    """

    ks: np.ndarray
    m_values: tuple
    values: np.ndarray
    sup_per_m: np.ndarray
    envelope_scale: np.ndarray


def perturbation_decay_table(sys, seq, m_values):
    """Compare base and perturbed orbits of the base point along a sequence."""
    perts = [perturbed_gram(sys, m) for m in m_values]
    letters = seq.letters if isinstance(seq, ShortSequence) else tuple(seq)
    k_max = len(letters)
    values = np.zeros((k_max + 1, len(m_values)))
    o = sys.base_point
    base_elements = [np.eye(sys.rank)]
    for i in letters:
        base_elements.append(base_elements[-1] @ sys.reflections[i])
    for j, pert in enumerate(perts):
        pert_element = np.eye(sys.rank)
        for k in range(k_max + 1):
            if k > 0:
                pert_element = pert_element @ pert.system.reflections[letters[k - 1]]
            base_pt = coxeter.normalized_act(sys, base_elements[k], o)
            pert_pt = perturbed_act(pert, pert_element, o)
            values[k, j] = float(coxeter.quad_form(sys, base_pt - pert_pt))
    sup = values.max(axis=0)
    ks = np.arange(k_max + 1)
    envelope = np.zeros(len(m_values))
    for j, m in enumerate(m_values):
        slack = 0.0 if m == np.inf else 1.0 / m
        if k_max >= 1:
            envelope[j] = max(
                0.0,
                float(np.max((values[1:, j] - slack) * ks[1:] ** 2)),
            )
    return DecayTable(
        ks=ks, m_values=tuple(m_values), values=values,
        sup_per_m=sup, envelope_scale=envelope,
    )


@dataclass(frozen=True)
class CollisionReport:
    """Dihedral power orbits under the base and a perturbed form.

    ``base_gap`` is the Euclidean distance at step k_max between the two
    orbits (s_i s_j)^k . x0 and (s_j s_i)^k . x0 under the base form
    (they collide toward the single affine limit point); ``perturbed_gap``
    is the same distance under the level-m perturbation (they separate
    toward the two Lorentzian fixed directions, whose chart images are
    also reported).
    """

    bond: tuple
    k_max: int
    m: float
    base_gap: float
    perturbed_gap: float
    perturbed_limits: tuple


def dihedral_collision_report(sys, bond, k_max, m):
    """Run the collision experiment on an exact -1 bond."""
    i, j = bond
    if (min(i, j), max(i, j)) not in affine_bonds(sys):
        raise ValidationError(f"bond {bond} is not an exact -1 bond")
    if k_max < 0:
        raise ValidationError("k_max must be >= 0")
    pert = perturbed_gram(sys, m)
    o = sys.base_point

    def power_orbit(first, second, refl, act):
        # Iterate the normalized action of (s_first s_second); iterating
        # chart points avoids overflow of the raw matrix powers.
        step = refl[first] @ refl[second]
        pt = o.copy()
        for _ in range(k_max):
            pt = act(step, pt)
        return pt

    base_fwd = power_orbit(i, j, sys.reflections,
                           lambda mtx, x: coxeter.normalized_act(sys, mtx, x))
    base_bwd = power_orbit(j, i, sys.reflections,
                           lambda mtx, x: coxeter.normalized_act(sys, mtx, x))
    pert_fwd = power_orbit(i, j, pert.system.reflections,
                           lambda mtx, x: perturbed_act(pert, mtx, x))
    pert_bwd = power_orbit(j, i, pert.system.reflections,
                           lambda mtx, x: perturbed_act(pert, mtx, x))
    limits = _bond_null_directions(pert, bond)
    return CollisionReport(
        bond=(i, j), k_max=k_max, m=float(m),
        base_gap=float(np.linalg.norm(base_fwd - base_bwd)),
        perturbed_gap=float(np.linalg.norm(pert_fwd - pert_bwd)),
        perturbed_limits=limits,
    )


def _bond_null_directions(pert, bond):
    """Chart images of the two null directions of the perturbed bond plane."""
    i, j = bond
    c = float(pert.system.gram[i, j])
    sol = numeric.solve_quadratic(1.0, 2.0 * c, 1.0)
    out = []
    for r in sol.roots:
        v = np.zeros(pert.base.rank)
        v[i] = 1.0
        v[j] = r
        out.append(coxeter.normalize(pert.base, v))
    return tuple(out)
