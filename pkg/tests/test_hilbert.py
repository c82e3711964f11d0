import math

import numpy as np
import pytest

from coxlim import coxeter, hilbert
from coxlim.errors import NumericalError, ValidationError


def interval_model(rank2):
    """The rank-2 chart is a line segment; return its endpoints a, b."""
    o = rank2.base_point
    rng = np.random.default_rng(0)
    x = hilbert.sample_interior(rank2, 1, rng)[0]
    hits = hilbert.boundary_hits(rank2, o, x)
    return hits.a, hits.b


class TestLocatePoint:
    def test_base_point_interior(self, bundle):
        for sys in bundle.values():
            assert hilbert.locate_point(sys, sys.base_point) == "interior"

    def test_normalized_simple_root_outside(self, sys237):
        hat = coxeter.normalize(sys237, np.eye(3)[0])
        assert hilbert.locate_point(sys237, hat) == "outside"

    def test_quadratic_root_direction_boundary(self, rank2):
        r = (3 + math.sqrt(5)) / 2
        pt = coxeter.normalize(rank2, np.array([1.0, r]))
        assert hilbert.locate_point(rank2, pt) == "boundary"

    def test_off_chart_rejected(self, sys237):
        with pytest.raises(ValidationError):
            hilbert.locate_point(sys237, 2.0 * sys237.base_point)


class TestBoundaryHits:
    def test_interval_endpoints(self, rank2):
        a, b = interval_model(rank2)
        assert abs(float(coxeter.quad_form(rank2, a))) <= 1e-10
        assert abs(float(coxeter.quad_form(rank2, b))) <= 1e-10

    def test_ordering_witness(self, sys237):
        rng = np.random.default_rng(1)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        hits = hilbert.boundary_hits(sys237, x, y)
        assert hits.t_a <= 0.0 <= 1.0 <= hits.t_b
        # Collinearity: both hits on the line through x and y.
        u = y - x
        for hit, t in ((hits.a, hits.t_a), (hits.b, hits.t_b)):
            assert np.allclose(hit, x + t * u, atol=1e-12)

    def test_residuals_random_chords(self, bundle):
        for sys in bundle.values():
            rng = np.random.default_rng(2)
            x = hilbert.sample_interior(sys, 100, rng)
            y = hilbert.sample_interior(sys, 100, rng)
            for xi, yi in zip(x[:10], y[:10]):
                hits = hilbert.boundary_hits(sys, xi, yi)
                for hit in (hits.a, hits.b):
                    assert abs(float(coxeter.quad_form(sys, hit))) <= 1e-10

    def test_symmetric_pair_symmetric_hits(self, rank2):
        a, b = interval_model(rank2)
        center = (a + b) / 2.0
        h = (b - a) / 2.0
        x = center - 0.3 * h
        y = center + 0.3 * h
        hits = hilbert.boundary_hits(rank2, x, y)
        assert abs(np.linalg.norm(x - hits.a) - np.linalg.norm(y - hits.b)) <= 1e-9

    def test_coincident_points_rejected(self, sys237):
        o = sys237.base_point
        with pytest.raises(ValidationError):
            hilbert.boundary_hits(sys237, o, o)


class TestCrossRatio:
    def test_identity_when_middle_points_equal(self, sys237):
        rng = np.random.default_rng(3)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        hits = hilbert.boundary_hits(sys237, x, y)
        assert abs(hilbert.cross_ratio(sys237, hits.a, x, x, hits.b) - 1.0) <= 1e-12

    def test_central_projection_invariance(self, sys237):
        # Project a collinear quadruple from a center onto the midline;
        # the bilinear-form cross ratio is unchanged.
        rng = np.random.default_rng(4)
        for _ in range(50):
            base = rng.standard_normal(3)
            direction = rng.standard_normal(3)
            ts = np.sort(rng.uniform(-1.0, 1.0, size=4))
            quad = [base + t * direction for t in ts]
            center = rng.standard_normal(3) * 2.0
            projected = [(center + p) / 2.0 for p in quad]
            try:
                v1 = hilbert.cross_ratio(sys237, *quad)
                v2 = hilbert.cross_ratio(sys237, *projected)
            except NumericalError:
                continue  # degenerate q of a difference; resample
            assert abs(v1 - v2) <= 1e-9 * max(1.0, abs(v1))

    def test_equals_squared_euclidean_ratio(self, sys237):
        rng = np.random.default_rng(5)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        hits = hilbert.boundary_hits(sys237, x, y)
        cr = hilbert.cross_ratio(sys237, hits.a, x, y, hits.b)
        ratio = (np.linalg.norm(y - hits.a) * np.linalg.norm(x - hits.b)) / (
            np.linalg.norm(y - hits.b) * np.linalg.norm(x - hits.a))
        assert abs(cr - ratio ** 2) <= 1e-9 * max(1.0, cr)

    def test_zero_denominator_reported(self, sys237):
        a = np.zeros(3)
        x = np.eye(3)[0]
        with pytest.raises(NumericalError):
            hilbert.cross_ratio(sys237, x, x, x, a)


class TestDistance:
    def test_interval_log3(self, rank2):
        # x at the center, y halfway to an endpoint: ratio 3, distance log 3.
        a, b = interval_model(rank2)
        center = (a + b) / 2.0
        h = (b - a) / 2.0
        x = center
        y = center + 0.5 * h
        assert abs(hilbert.distance(rank2, x, y) - math.log(3.0)) <= 1e-9
        assert abs(hilbert.distance_euclidean_ratio(rank2, x, y)
                   - math.log(3.0)) <= 1e-9

    def test_zero_iff_equal(self, sys237):
        o = sys237.base_point
        assert hilbert.distance(sys237, o, o) == 0.0
        rng = np.random.default_rng(6)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        assert hilbert.distance(sys237, o, x) > 0.0

    def test_symmetry(self, sys237):
        rng = np.random.default_rng(7)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        assert abs(hilbert.distance(sys237, x, y)
                   - hilbert.distance(sys237, y, x)) <= 1e-12

    def test_reflection_symmetry_at_base_point(self, sys237):
        o = sys237.base_point
        for i in range(3):
            si_o = coxeter.normalized_act(sys237, (i,), o)
            d1 = hilbert.distance(sys237, o, si_o)
            # s_i is an involution, so s_i . o = s_i^-1 . o trivially; check
            # instead that the distance is generator-conjugation symmetric:
            # d(o, s_i.o) = d(s_i.o, o) and positive.
            assert d1 > 0
            assert abs(d1 - hilbert.distance(sys237, si_o, o)) <= 1e-12

    def test_two_routes_agree(self, bundle):
        for sys in bundle.values():
            rng = np.random.default_rng(8)
            xs = hilbert.sample_interior(sys, 100, rng)
            ys = hilbert.sample_interior(sys, 100, rng)
            for x, y in zip(xs[:25], ys[:25]):
                d1 = hilbert.distance(sys, x, y)
                d2 = hilbert.distance_euclidean_ratio(sys, x, y)
                assert abs(d1 - d2) <= 1e-9

    def test_batch_matches_scalar(self, sys237):
        rng = np.random.default_rng(9)
        xs = hilbert.sample_interior(sys237, 40, rng)
        ys = hilbert.sample_interior(sys237, 40, rng)
        batch = hilbert.distance_many(sys237, xs, ys)
        for i in range(40):
            assert abs(batch[i] - hilbert.distance(sys237, xs[i], ys[i])) <= 1e-12

    def test_triangle_inequality(self, sys237):
        rng = np.random.default_rng(10)
        xs = hilbert.sample_interior(sys237, 200, rng)
        ys = hilbert.sample_interior(sys237, 200, rng)
        zs = hilbert.sample_interior(sys237, 200, rng)
        dxy = hilbert.distance_many(sys237, xs, ys)
        dyz = hilbert.distance_many(sys237, ys, zs)
        dxz = hilbert.distance_many(sys237, xs, zs)
        assert np.all(dxz <= dxy + dyz + 1e-9)

    def test_near_boundary_rejected(self, rank2):
        r = (3 + math.sqrt(5)) / 2
        pt = coxeter.normalize(rank2, np.array([1.0, r]))
        with pytest.raises(ValidationError):
            hilbert.distance(rank2, rank2.base_point, pt)

    def test_isometry_of_normalized_action(self, sys237, balls12):
        rng = np.random.default_rng(11)
        xs = hilbert.sample_interior(sys237, 20, rng, radial=0.8)
        ys = hilbert.sample_interior(sys237, 20, rng, radial=0.8)
        base = hilbert.distance_many(sys237, xs, ys)
        for elt in balls12["triangle_237"].truncate(12).elements(min_length=1):
            wx = coxeter.normalized_act(sys237, elt.matrix, xs)
            wy = coxeter.normalized_act(sys237, elt.matrix, ys)
            moved = hilbert.distance_many(sys237, wx, wy)
            assert np.max(np.abs(moved - base)) <= 1e-7


class TestGromovProduct:
    def test_self_product_is_distance(self, sys237):
        rng = np.random.default_rng(12)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        p = sys237.base_point
        assert abs(hilbert.gromov_product(sys237, x, x, p)
                   - hilbert.distance(sys237, x, p)) <= 1e-12

    def test_product_at_own_point_vanishes(self, sys237):
        rng = np.random.default_rng(13)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        assert abs(hilbert.gromov_product(sys237, x, y, x)) <= 1e-12

    def test_nonnegative_and_symmetric(self, sys237):
        rng = np.random.default_rng(14)
        xs = hilbert.sample_interior(sys237, 50, rng)
        ys = hilbert.sample_interior(sys237, 50, rng)
        ps = hilbert.sample_interior(sys237, 50, rng)
        vals = hilbert.gromov_products_many(sys237, xs, ys, ps)
        flipped = hilbert.gromov_products_many(sys237, ys, xs, ps)
        assert np.all(vals >= -1e-9)
        assert np.max(np.abs(vals - flipped)) <= 1e-10

    def test_four_point_condition_with_estimated_delta(self, sys237, balls12):
        pts = np.array([
            coxeter.normalized_act(sys237, e.matrix, sys237.base_point)
            for e in balls12["triangle_237"].truncate(6).elements()
        ])
        delta = hilbert.estimate_delta(sys237, pts, samples=4000, seed=0)
        rng = np.random.default_rng(15)
        idx = rng.integers(0, len(pts), size=(2000, 4))
        x, y, z, p = (pts[idx[:, i]] for i in range(4))
        lhs = hilbert.gromov_products_many(sys237, x, z, p)
        rhs = np.minimum(
            hilbert.gromov_products_many(sys237, x, y, p),
            hilbert.gromov_products_many(sys237, y, z, p),
        )
        assert np.all(lhs >= rhs - delta - 1e-9)


class TestVisualMetric:
    def _ray_sequence(self, sys, target, count):
        return np.array([
            hilbert.geodesic_point(sys, sys.base_point, target, t)
            for t in np.linspace(0.5, 4.0, count)
        ])

    def test_identical_sequences_small(self, rank2):
        a, b = interval_model(rank2)
        seq = self._ray_sequence(rank2, b, 8)
        eps = 0.05
        val = hilbert.visual_metric(rank2, seq, seq, eps)
        tail = len(seq) // 2
        bound = math.exp(-eps * hilbert.distance(
            rank2, seq[tail], rank2.base_point))
        assert val <= bound + 1e-12

    def test_distinct_limits_bounded_away(self, rank2):
        a, b = interval_model(rank2)
        seq_a = self._ray_sequence(rank2, a, 8)
        seq_b = self._ray_sequence(rank2, b, 8)
        val = hilbert.visual_metric(rank2, seq_a, seq_b, 0.05)
        assert val >= 0.5

    def test_zero_eps_gives_one(self, rank2):
        a, b = interval_model(rank2)
        seq_a = self._ray_sequence(rank2, a, 6)
        seq_b = self._ray_sequence(rank2, b, 6)
        assert hilbert.visual_metric(rank2, seq_a, seq_b, 0.0) == 1.0

    def test_refines_as_prefix_grows(self, rank2):
        _, b = interval_model(rank2)
        seq = self._ray_sequence(rank2, b, 12)
        eps = 0.05
        v_short = hilbert.visual_metric(rank2, seq[:6], seq[:6], eps)
        v_long = hilbert.visual_metric(rank2, seq, seq, eps)
        assert v_long <= v_short

    def test_large_eps_rejected(self, rank2):
        # The 1-D chart is 0-hyperbolic, so pass the constant explicitly.
        _, b = interval_model(rank2)
        seq = self._ray_sequence(rank2, b, 6)
        with pytest.raises(ValidationError):
            hilbert.visual_metric(rank2, seq, seq, 1.0, delta_hat=1.0)


class TestGeodesic:
    def test_zero_time_is_start(self, sys237):
        rng = np.random.default_rng(16)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        assert np.array_equal(hilbert.geodesic_point(sys237, x, y, 0.0), x)

    def test_arclength_parametrization(self, sys237):
        rng = np.random.default_rng(17)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        for t in (0.2, 0.7, 1.4):
            z = hilbert.geodesic_point(sys237, x, y, t)
            assert abs(hilbert.distance(sys237, x, z) - t) <= 1e-9

    def test_additivity_along_chord(self, sys237):
        rng = np.random.default_rng(18)
        for _ in range(100):
            x = hilbert.sample_interior(sys237, 1, rng)[0]
            z = hilbert.sample_interior(sys237, 1, rng)[0]
            lam = rng.uniform(0.1, 0.9)
            y = x + lam * (z - x)
            total = hilbert.distance(sys237, x, z)
            split = (hilbert.distance(sys237, x, y)
                     + hilbert.distance(sys237, y, z))
            assert abs(total - split) <= 1e-10

    def test_segment_difference_of_parameters(self, sys237):
        rng = np.random.default_rng(19)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        z1 = hilbert.geodesic_point(sys237, x, y, 0.3)
        z2 = hilbert.geodesic_point(sys237, x, y, 1.1)
        assert abs(hilbert.distance(sys237, z1, z2) - 0.8) <= 1e-8

    def test_interval_log3_inverse(self, rank2):
        a, b = interval_model(rank2)
        center = (a + b) / 2.0
        h = (b - a) / 2.0
        z = hilbert.geodesic_point(rank2, center, b - 1e-9 * h, math.log(3.0))
        assert np.max(np.abs(z - (center + 0.5 * h))) <= 1e-6

    def test_overshooting_interior_target_rejected(self, sys237):
        rng = np.random.default_rng(20)
        x = hilbert.sample_interior(sys237, 1, rng)[0]
        y = hilbert.sample_interior(sys237, 1, rng)[0]
        total = hilbert.distance(sys237, x, y)
        with pytest.raises(ValidationError):
            hilbert.geodesic_point(sys237, x, y, total + 0.5)
