import math

import numpy as np
import pytest

from coxlim import coxeter, roots
from coxlim.errors import ValidationError


AFFINE_PAIR = [[1.0, -1.0], [-1.0, 1.0]]


def affine_closed_form(k):
    """Positive roots of the affine dihedral first reached at depth k."""
    if k == 0:
        return {(1, 0), (0, 1)}
    return {(k + 1, k), (k, k + 1)}


class TestOrbitOfBasis:
    def test_depth_zero_is_basis(self, sys237):
        cloud = roots.enumerate_roots(sys237, 0)
        assert cloud.count() == 3
        assert {r.depth for r in cloud.roots} == {0}

    def test_affine_dihedral_closed_form(self):
        # Oracle: iterating s1(a, b) = (2b - a, b), s2(a, b) = (a, 2a - b)
        # from the basis gives (k+1, k) and (k, k+1) at depth k; negatives
        # lag one step behind.
        items = roots.orbit_of_basis(AFFINE_PAIR, 8)
        for k in range(0, 9):
            positives = {
                tuple(int(round(c)) for c in r.vector)
                for r in items
                if r.depth == k and r.vector.sum() > 0
            }
            assert positives == affine_closed_form(k)
        negatives = {
            tuple(int(round(c)) for c in r.vector)
            for r in items
            if r.depth == 3 and r.vector.sum() < 0
        }
        assert negatives == {(-expect[0], -expect[1])
                             for expect in affine_closed_form(2)}

    def test_depth_is_first_appearance(self, rank2):
        cloud = roots.enumerate_roots(rank2, 6)
        # s1(a1) = -a1 appears at depth 1, not depth 0.
        neg = [r for r in cloud.roots
               if np.allclose(r.vector, [-1.0, 0.0], atol=1e-12)]
        assert len(neg) == 1 and neg[0].depth == 1

    def test_witness_word_reproduces_root(self, sys237):
        cloud = roots.enumerate_roots(sys237, 5)
        for root in cloud.roots:
            e = np.eye(3)[root.source]
            img = coxeter.act_word(sys237, root.word, e)
            assert np.allclose(img, root.vector, atol=1e-10)
            assert len(root.word) == root.depth


class TestRootInvariants:
    def test_unit_form_value(self, bundle):
        for sys in bundle.values():
            cloud = roots.enumerate_roots(sys, 6)
            for root in cloud.roots:
                assert abs(coxeter.quad_form(sys, root.vector) - 1.0) <= 1e-9

    def test_rank2_counts_match_closed_form(self, rank2):
        cloud = roots.enumerate_roots(rank2, 8)
        by_depth = [len(cloud.by_depth(k)) for k in range(9)]
        # Depth 0: the two simple roots; depth 1: two new positives plus
        # the two negated simples; then four per depth (2 positive, 2
        # negative), exactly as in the affine closed form.
        assert by_depth == [2, 4] + [4] * 7

    def test_normalized_chart_count(self, rank2):
        cloud = roots.enumerate_roots(rank2, 10)
        # +/- pairs collapse: 2 chart points per depth.
        per_depth = {}
        for chart, first in cloud.normalized.values():
            per_depth[first] = per_depth.get(first, 0) + 1
        assert per_depth == {k: 2 for k in range(11)}


class TestFrontier:
    def test_depth_zero_is_normalized_basis(self, sys237):
        cloud = roots.enumerate_roots(sys237, 2)
        front = roots.frontier(cloud, 0)
        expected = np.eye(3) / sys237.base_point[None, :].T
        have = {tuple(np.round(p, 9)) for p in front}
        want = {tuple(np.round(np.eye(3)[i] / sys237.base_point[i], 9))
                for i in range(3)}
        assert have == want

    def test_affine_frontier_contracts_to_kernel_point(self):
        # In the affine pair the normalized roots converge to the single
        # kernel direction; the oracle value is (k+1, k)/(k + 1/2) -> (1, 1).
        items = roots.orbit_of_basis(AFFINE_PAIR, 40)
        weight = np.array([1.0, 1.0]) / math.sqrt(2.0)  # kernel Perron vector
        deep = [r.vector / (weight @ r.vector) for r in items if r.depth == 40]
        target = np.array([1.0, 1.0]) / (weight @ np.array([1.0, 1.0]))
        gaps = [np.linalg.norm(p - target) for p in deep]
        assert max(gaps) <= 1.0 / 40.0

    def test_lorentzian_frontier_hits_quadratic_roots(self, rank2):
        # q(1, r) = 1 + r^2 - 3r = 0 at r = (3 +/- sqrt 5)/2.
        cloud = roots.enumerate_roots(rank2, 10)
        front = roots.frontier(cloud, 10)
        ratios = sorted(p[1] / p[0] for p in front)
        expected = sorted([(3 - math.sqrt(5)) / 2, (3 + math.sqrt(5)) / 2])
        assert len(ratios) == 2
        for have, want in zip(ratios, expected):
            assert abs(have - want) <= 1e-3

    def test_frontier_diameter_shrinks_affine(self):
        # Diameter of the normalized depth-k root set decreases like 1/k.
        items = roots.orbit_of_basis(AFFINE_PAIR, 30)
        weight = np.array([1.0, 1.0]) / math.sqrt(2.0)
        diam = {}
        for k in (10, 20, 30):
            pts = np.array([r.vector / (weight @ r.vector)
                            for r in items if r.depth == k])
            diam[k] = max(np.linalg.norm(a - b) for a in pts for b in pts)
        assert diam[10] > diam[20] > diam[30]
        assert diam[30] <= diam[10] * (10 / 30) * 1.5  # ~1/k rate

    def test_beyond_enumerated_depth_rejected(self, sys237):
        cloud = roots.enumerate_roots(sys237, 3)
        with pytest.raises(ValidationError):
            roots.frontier(cloud, 4)


class TestSignCoherence:
    def test_simple_roots_pass(self, sys237):
        cloud = roots.enumerate_roots(sys237, 0)
        assert roots.sign_coherence_check(cloud).ok

    def test_rank4_depth8_pass(self, rank4):
        cloud = roots.enumerate_roots(rank4, 8)
        report = roots.sign_coherence_check(cloud)
        assert report.ok and report.checked == cloud.count()

    def test_constructed_violation_flagged(self, sys237):
        cloud = roots.enumerate_roots(sys237, 1)
        bad = roots.Root(vector=np.array([0.5, -0.5, 0.2]), depth=0,
                         word=(), source=0)
        cloud.roots.append(bad)
        report = roots.sign_coherence_check(cloud)
        assert not report.ok and bad in report.violations
