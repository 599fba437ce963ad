import math

import numpy as np
import pytest

from geomcross import (
    EUCLIDEAN,
    HYPERBOLIC,
    SPHERICAL,
    AtInfinity,
    DegenerateInput,
    OnHorizon,
    ProjectionPlane,
    hemisphere_normalize,
    klein_coordinates,
    project_point,
    pushforward_curve,
)
from geomcross.curves import Conic, DegreeNCurve, curve_residual
from geomcross.forms import lift_to_surface, point
from geomcross.generators import random_ellipse_conic, random_point
from geomcross.projection import PlanarCurve, transport_points


class TestProjectionPlane:
    def test_chart_frame_is_orthonormal(self, rng):
        for _ in range(20):
            n = rng.standard_normal(3)
            if np.linalg.norm(n) < 0.1:
                continue
            plane = ProjectionPlane(n)
            assert float(np.dot(plane.e1, plane.e1)) == pytest.approx(1.0, abs=1e-12)
            assert float(np.dot(plane.e2, plane.e2)) == pytest.approx(1.0, abs=1e-12)
            assert float(np.dot(plane.e1, plane.e2)) == pytest.approx(0.0, abs=1e-12)
            assert float(np.dot(plane.normal, plane.base)) == pytest.approx(1.0, abs=1e-12)

    def test_zero_normal_rejected(self):
        with pytest.raises(DegenerateInput):
            ProjectionPlane([0, 0, 0])

    def test_embed_round_trip(self, rng):
        plane = ProjectionPlane([0.3, -0.2, 1.1])
        s = rng.uniform(-2, 2, size=2)
        p = plane.embed(s)
        np.testing.assert_allclose(project_point(p, plane), s, atol=1e-12)

    def test_z1_canonical_chart(self):
        plane = ProjectionPlane.z1()
        np.testing.assert_allclose(project_point(point(0.4, -0.7, 1.0), plane), [0.4, -0.7])


class TestProjectPoint:
    def test_image_on_plane(self, geometry, rng):
        plane = ProjectionPlane([0.1, 0.2, 1.0])
        for _ in range(20):
            p = random_point(geometry, rng)
            try:
                s = project_point(p, plane)
            except AtInfinity:
                continue
            x = plane.embed(s)
            # x is on the central ray of p
            assert np.linalg.norm(np.cross(x, p)) <= 1e-9 * np.linalg.norm(p)

    def test_antipodes_collapse_exactly(self, rng):
        plane = ProjectionPlane([0.2, -0.1, 0.9])
        for _ in range(20):
            p = random_point(SPHERICAL, rng)
            if abs(float(np.dot(plane.normal, p))) < 0.1:
                continue
            np.testing.assert_array_equal(
                project_point(p, plane), project_point(-p, plane)
            )

    def test_at_infinity(self):
        plane = ProjectionPlane.z1()
        with pytest.raises(AtInfinity):
            project_point(point(1.0, 0.0, 0.0), plane)


class TestHemisphereNormalize:
    def test_all_in_hemisphere(self, rng):
        pole = random_point(SPHERICAL, rng)
        pts = [random_point(SPHERICAL, rng) for _ in range(10)]
        if any(abs(float(np.dot(pole, p))) <= 1e-10 for p in pts):
            pytest.skip("horizon draw")
        out = hemisphere_normalize(pts, pole)
        for p, q in zip(pts, out):
            assert float(np.dot(pole, q)) > 0.0
            assert np.allclose(q, p) or np.allclose(q, -p)

    def test_horizon_raises(self):
        with pytest.raises(OnHorizon):
            hemisphere_normalize([point(1, 0, 0)], point(0, 0, 1))


class TestKlein:
    def test_golden_value(self):
        # [DERIVED] (sinh 1, 0, cosh 1) maps to (tanh 1, 0)
        p = point(math.sinh(1.0), 0.0, math.cosh(1.0))
        np.testing.assert_allclose(klein_coordinates(p), [math.tanh(1.0), 0.0], atol=1e-15)

    def test_inside_unit_disk(self, rng):
        for _ in range(50):
            p = random_point(HYPERBOLIC, rng)
            s = klein_coordinates(p)
            assert float(s @ s) < 1.0

    def test_matches_z1_projection(self, rng):
        plane = ProjectionPlane.z1()
        p = random_point(HYPERBOLIC, rng)
        np.testing.assert_allclose(klein_coordinates(p), project_point(p, plane), atol=1e-14)


class TestPushforward:
    def test_conic_image_vanishes_on_projected_points(self, geometry, rng):
        plane = ProjectionPlane.z1()
        for _ in range(10):
            try:
                conic, point_at = random_ellipse_conic(geometry, rng)
            except DegenerateInput:
                continue
            planar = pushforward_curve(conic, plane)
            for th in (0.3, 1.7, 4.1):
                s = project_point(point_at(th), plane)
                assert planar.residual(s) <= 1e-10
            return
        pytest.skip("no ellipse drawn")

    def test_degree_preserved_generic(self, rng):
        conic, _ = random_ellipse_conic(EUCLIDEAN, rng)
        planar = pushforward_curve(conic, ProjectionPlane.z1())
        assert planar.degree == 2

    def test_homogenize_round_trip(self, rng):
        curve = DegreeNCurve(3, rng.standard_normal(10))
        planar = pushforward_curve(curve, ProjectionPlane.z1())
        lifted = curve_back = planar.homogenize(3)
        for _ in range(10):
            p = rng.standard_normal(3)
            assert curve_back(p) * curve.coeffs[0] == pytest.approx(
                curve(p) * lifted.coeffs[0], rel=1e-9, abs=1e-12
            )

    def test_planar_curve_degenerate_flag(self):
        assert PlanarCurve([[1.0]]).is_degenerate
        assert not PlanarCurve([[0.0, 1.0], [1.0, 0.0]]).is_degenerate


class TestTransport:
    def test_hyperbolic_default_plane(self, rng):
        pts = [random_point(HYPERBOLIC, rng) for _ in range(5)]
        out = transport_points(HYPERBOLIC, pts)
        for p, q in zip(pts, out):
            assert q[2] == 1.0
            np.testing.assert_allclose(q[:2], klein_coordinates(p), atol=1e-14)

    def test_sphere_requires_plane(self, rng):
        with pytest.raises(DegenerateInput):
            transport_points(SPHERICAL, [random_point(SPHERICAL, rng)])

    def test_sphere_with_tangent_plane(self, rng):
        pole = random_point(SPHERICAL, rng)
        plane = ProjectionPlane(pole)  # tangent plane at the pole
        pts = [p for p in (random_point(SPHERICAL, rng) for _ in range(20))
               if float(np.dot(pole, p)) > 0.3][:4]
        out = transport_points(SPHERICAL, pts, plane)
        for q in out:
            assert q[2] == 1.0
