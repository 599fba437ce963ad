import math

import numpy as np
import pytest

from geomcross import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL,
    CevianSextuple,
    DegenerateInput,
    OffCurve,
    Triangle,
    butterfly_defect,
    carnot_cross_ratio_product,
    carnot_n_product,
    carnot_product,
    chasles_deviation,
    geodesic_through,
    menelaus_product,
    transversal_points,
)
from geomcross.curves import Conic, conic_through_five, intersect_curve_geodesic
from geomcross.forms import chart_point, lift_to_surface
from geomcross.generators import (
    carnot_near_miss,
    chasles_perturbed,
    menelaus_control,
    random_admissible_line,
    random_ellipse_conic,
    random_triangle,
    sample_carnot_sextuple,
    sample_degree_n_points,
    trial_rng,
)
from geomcross.incidence import OrientedGeodesic, arc_position


def _euclidean_triangle():
    return Triangle(EUCLIDEAN, chart_point(0, 0), chart_point(1, 0), chart_point(0, 1))


def _retry(fn, seed, attempts=64):
    """Resample a rejection-sampled construction across independent streams."""
    from geomcross import GeomcrossError

    for i in range(attempts):
        try:
            return fn(trial_rng(seed, i))
        except GeomcrossError:
            continue
    pytest.fail("no valid configuration drawn")


class TestTriangle:
    def test_sides_pass_through_vertices(self, geometry, rng):
        tri = random_triangle(geometry, rng)
        assert tri.side_a.residual(tri.b) <= 1e-12
        assert tri.side_a.residual(tri.c) <= 1e-10
        assert tri.side_b.residual(tri.c) <= 1e-12
        assert tri.side_c.residual(tri.a) <= 1e-12

    def test_collinear_rejected(self):
        with pytest.raises(DegenerateInput):
            Triangle(EUCLIDEAN, chart_point(0, 0), chart_point(1, 0), chart_point(2, 0))

    def test_side_positions_reconstruct(self, geometry, rng):
        tri = random_triangle(geometry, rng)
        t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
        np.testing.assert_allclose(tri.side_a.point(t_c_on_a), tri.c, atol=1e-9)
        np.testing.assert_allclose(tri.side_b.point(t_a_on_b), tri.a, atol=1e-9)
        np.testing.assert_allclose(tri.side_c.point(t_b_on_c), tri.b, atol=1e-9)


class TestMenelaus:
    def test_golden_euclidean_transversal(self):
        # [DERIVED] triangle (0,0),(1,0),(0,1); line 2x + 4y = 1 cuts
        # AB at (1/2, 0), CA at (0, 1/4), BC at (3/2, -1/2); product is -1
        tri = _euclidean_triangle()
        a_l = chart_point(1.5, -0.5)  # on BC
        b_l = chart_point(0.0, 0.25)  # on CA
        c_l = chart_point(0.5, 0.0)  # on AB
        line = geodesic_through(EUCLIDEAN, c_l, b_l)
        assert line.residual(a_l) <= 1e-12  # the three cuts are collinear
        assert menelaus_product(tri, a_l, b_l, c_l) == pytest.approx(-1.0, abs=1e-12)

    def test_transversal_gives_minus_one(self, geometry, rng):
        tri = random_triangle(geometry, rng)
        line = random_admissible_line(tri, rng, margin=1e-3, cut_margin=0.02)
        a_l, b_l, c_l = transversal_points(tri, line)
        assert menelaus_product(tri, a_l, b_l, c_l) == pytest.approx(-1.0, abs=1e-8)

    def test_noncollinear_violates(self, geometry):
        rng = trial_rng(99, 0)
        tri, pts, prod, residual = menelaus_control(geometry, rng)
        assert residual > 1e-3
        assert abs(prod + 1.0) > 1e-6

    def test_line_through_vertex_rejected(self, geometry, rng):
        tri = random_triangle(geometry, rng)
        line = geodesic_through(geometry, tri.a, tri.side_a.point(0.4))
        with pytest.raises(DegenerateInput):
            transversal_points(tri, line)


class TestCarnot:
    def test_golden_euclidean_circle(self):
        # [DERIVED] triangle (0,0),(1,0),(0,1) and the circle of radius 0.8
        # centered at the origin; its six side intersections give product 1
        tri = _euclidean_triangle()
        r = 0.8
        circle = Conic([[1, 0, 0], [0, 1, 0], [0, 0, -r * r]])
        marked = {}
        for name, side in (("a", tri.side_a), ("b", tri.side_b), ("c", tri.side_c)):
            ts = intersect_curve_geodesic(circle, side)
            assert len(ts) == 2
            marked[name] = [side.point(t) for t in sorted(ts)]
        sext = CevianSextuple(
            tri, marked["a"][0], marked["a"][1], marked["b"][0], marked["b"][1],
            marked["c"][0], marked["c"][1],
        )
        assert carnot_product(sext) == pytest.approx(1.0, abs=1e-9)

    def test_conic_sextuple_gives_one(self, geometry):
        sext, conic = _retry(lambda r: sample_carnot_sextuple(geometry, r), 7)
        assert carnot_product(sext) == pytest.approx(1.0, abs=1e-7)

    def test_near_miss_violates(self, geometry):
        moved, conic, shift = _retry(lambda r: carnot_near_miss(geometry, r), 11)
        assert abs(shift) >= 1e-2
        assert abs(carnot_product(moved) - 1.0) > 1e-4

    def test_off_side_point_rejected(self, geometry):
        sext, _ = _retry(lambda r: sample_carnot_sextuple(geometry, r), 13)
        tri = sext.triangle
        with pytest.raises(OffCurve):
            CevianSextuple(tri, sext.b1, sext.a2, sext.b1, sext.b2, sext.c1, sext.c2)


class TestCarnotCrossRatioIdentity:
    def test_identity_holds(self, geometry):
        # [DERIVED] cross-ratio product equals carnot * menelaus^2 for any
        # admissible auxiliary line
        rng = trial_rng(17, 2)
        sext, _ = _retry(lambda r: sample_carnot_sextuple(geometry, r), 17)
        tri = sext.triangle
        carnot = carnot_product(sext)
        for _ in range(3):
            line = random_admissible_line(tri, rng, margin=1e-3, cut_margin=0.02)
            cuts = transversal_points(tri, line)
            men = menelaus_product(tri, *cuts)
            lhs = carnot_cross_ratio_product(sext, line)
            rhs = carnot * men * men
            assert lhs == pytest.approx(rhs, rel=1e-8)


class TestChasles:
    def test_six_conic_points_agree(self, geometry):
        conic, point_at = _retry(lambda r: random_ellipse_conic(geometry, r), 23)
        pts = [point_at(t) for t in (0.2, 1.1, 2.3, 3.4, 4.4, 5.6)]
        assert chasles_deviation(geometry, conic, *pts) <= 1e-8

    def test_perturbed_control_fails(self, geometry):
        conic, pts = _retry(lambda r: chasles_perturbed(geometry, r), 29)
        with pytest.raises(OffCurve):
            chasles_deviation(geometry, conic, *pts)
        dev = chasles_deviation(geometry, conic, *pts, require_on_conic=False)
        assert dev > 1e-3

    def test_degenerate_conic_rejected(self, geometry):
        pair = Conic([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
        pts = [lift_to_surface(geometry, s, s) for s in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6)]
        with pytest.raises(DegenerateInput):
            chasles_deviation(geometry, pair, *pts)


class TestButterfly:
    def test_defect_vanishes(self, geometry):
        from geomcross.generators import sample_trial

        rng = trial_rng(31, 6)
        config, dev, _ = sample_trial(geometry, "butterfly", rng)
        assert dev <= 1e-8

    def test_off_conic_rejected(self, geometry):
        conic, point_at = _retry(lambda r: random_ellipse_conic(geometry, r), 37)
        good = [point_at(t) for t in (0.2, 1.4, 2.6, 3.7, 4.8)]
        bad = lift_to_surface(geometry, 0.01, 0.02)
        with pytest.raises(OffCurve):
            butterfly_defect(geometry, conic, good[0], good[1], good[2], good[3], good[4], bad)


class TestCarnotN:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_product_sign(self, geometry, n):
        tri, pts, curve = _retry(lambda r: sample_degree_n_points(geometry, r, n), 41 + n)
        prod = carnot_n_product(tri, pts, n)
        assert prod == pytest.approx((-1.0) ** n, abs=1e-6)

    def test_n1_is_menelaus_relabeled(self, geometry):
        # both conventions give -1 on a transversal
        def build(r):
            tri = random_triangle(geometry, r)
            return tri, random_admissible_line(tri, r, margin=1e-3, cut_margin=0.02)

        tri, line = _retry(build, 43)
        a_l, b_l, c_l = transversal_points(tri, line)
        men = menelaus_product(tri, a_l, b_l, c_l)
        cn = carnot_n_product(tri, [a_l, b_l, c_l], 1)
        assert men == pytest.approx(-1.0, abs=1e-8)
        assert cn == pytest.approx(-1.0, abs=1e-8)

    def test_n2_consistent_with_carnot(self, geometry):
        # [DERIVED] the degree-2 product is the reciprocal-labeled Carnot
        # product, so both equal 1 on a conic sextuple
        sext, conic = _retry(lambda r: sample_carnot_sextuple(geometry, r), 47)
        pts = [sext.a1, sext.a2, sext.b1, sext.b2, sext.c1, sext.c2]
        cn = carnot_n_product(sext.triangle, pts, 2)
        cp = carnot_product(sext)
        assert cn == pytest.approx(1.0, abs=1e-6)
        assert cp == pytest.approx(1.0, abs=1e-6)

    def test_wrong_point_count(self, geometry, rng):
        tri = random_triangle(geometry, rng)
        with pytest.raises(DegenerateInput):
            carnot_n_product(tri, [tri.a], 1)

    def test_cubic_interpolates_its_points(self, geometry):
        tri, pts, curve = _retry(lambda r: sample_degree_n_points(geometry, r, 3), 53)
        from geomcross import curve_residual

        assert len(pts) == 9
        for p in pts:
            assert curve_residual(curve, p) <= 1e-9
