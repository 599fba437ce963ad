"""Numerical evaluators for the named incidence theorems.

Every function returns a residual or product, never a boolean: Menelaus's
product is -1 exactly when its three points are collinear, Carnot's six-factor
product is 1 exactly when the six points lie on a conic, the degree-n product
is (-1)^n for 3n points on a degree-n curve, and the Chasles/Butterfly
evaluators return deviations a valid configuration drives to zero.
Thresholding belongs to the harness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Conic, curve_residual
from .errors import DegenerateInput, OffCurve
from .forms import Geometry, distance, gsin
from .incidence import (
    OrientedGeodesic,
    Pencil,
    arc_position,
    cross_ratio_pencil,
    cross_ratio_positions,
    geodesic_through,
    line_meet,
)

GSIN_TOL = 1e-12
VERTEX_TOL = 1e-8
ON_CURVE_TOL = 1e-8


class Triangle:
    """Three vertices with oriented side lines BC, CA, AB.

    Each side is oriented from its first to its second named vertex. Spherical
    triangles must have all pairwise distances below pi (shorter segments).
    """

    __slots__ = ("geometry", "a", "b", "c", "side_a", "side_b", "side_c")

    def __init__(self, geometry: Geometry, a, b, c, check: bool = True):
        self.geometry = geometry
        self.a = np.asarray(a, dtype=float)
        self.b = np.asarray(b, dtype=float)
        self.c = np.asarray(c, dtype=float)
        self.side_a = geodesic_through(geometry, self.b, self.c)  # line BC
        self.side_b = geodesic_through(geometry, self.c, self.a)  # line CA
        self.side_c = geodesic_through(geometry, self.a, self.b)  # line AB
        if check:
            if self.side_a.residual(self.a) <= VERTEX_TOL:
                raise DegenerateInput("triangle vertices are collinear")
            if geometry.curvature == 1:
                for p, q in ((self.a, self.b), (self.b, self.c), (self.c, self.a)):
                    if distance(geometry, p, q) >= np.pi - 1e-12:
                        raise DegenerateInput("spherical side is not a shorter segment")

    def side_positions(self):
        """Arc positions of the vertices on their side lines.

        Returns (t_C on BC, t_A on CA, t_B on AB); the first vertex of each
        side sits at parameter 0.
        """
        return (
            arc_position(self.side_a, self.c),
            arc_position(self.side_b, self.a),
            arc_position(self.side_c, self.b),
        )


@dataclass(frozen=True)
class CevianSextuple:
    """Two marked points per side line: A1, A2 on BC; B1, B2 on CA; C1, C2 on AB."""

    triangle: Triangle
    a1: np.ndarray
    a2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray

    def __post_init__(self):
        t = self.triangle
        for line, pts in (
            (t.side_a, (self.a1, self.a2)),
            (t.side_b, (self.b1, self.b2)),
            (t.side_c, (self.c1, self.c2)),
        ):
            for p in pts:
                if line.residual(p) > 1e-10:
                    raise OffCurve("marked point is not on its side line")

    def positions(self):
        t = self.triangle
        return (
            arc_position(t.side_a, self.a1),
            arc_position(t.side_a, self.a2),
            arc_position(t.side_b, self.b1),
            arc_position(t.side_b, self.b2),
            arc_position(t.side_c, self.c1),
            arc_position(t.side_c, self.c2),
        )


def _ratio(g: Geometry, num_arc: float, den_arc: float) -> float:
    num = gsin(g, num_arc)
    den = gsin(g, den_arc)
    if abs(den) <= GSIN_TOL or abs(num) <= GSIN_TOL:
        raise DegenerateInput("marked point coincides with (or is antipodal to) a vertex")
    return num / den


def menelaus_product(tri: Triangle, a_pt, b_pt, c_pt) -> float:
    """Signed product gsin(AC_l)/gsin(C_lB) * gsin(BA_l)/gsin(A_lC) * gsin(CB_l)/gsin(B_lA).

    Equals -1 exactly when the three marked points are collinear.
    """
    g = tri.geometry
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    ta = arc_position(tri.side_a, a_pt)
    tb = arc_position(tri.side_b, b_pt)
    tc = arc_position(tri.side_c, c_pt)
    return (
        _ratio(g, tc, t_b_on_c - tc)
        * _ratio(g, ta, t_c_on_a - ta)
        * _ratio(g, tb, t_a_on_b - tb)
    )


def carnot_product(sext: CevianSextuple) -> float:
    """Six-factor Carnot product; equals 1 exactly when the six points lie on a conic."""
    tri = sext.triangle
    g = tri.geometry
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    ta1, ta2, tb1, tb2, tc1, tc2 = sext.positions()
    return (
        _ratio(g, tc1, t_b_on_c - tc1)
        * _ratio(g, tc2, t_b_on_c - tc2)
        * _ratio(g, ta1, t_c_on_a - ta1)
        * _ratio(g, ta2, t_c_on_a - ta2)
        * _ratio(g, tb1, t_a_on_b - tb1)
        * _ratio(g, tb2, t_a_on_b - tb2)
    )


def transversal_points(tri: Triangle, line: OrientedGeodesic):
    """Intersections of an auxiliary line with the three side lines.

    Returns (A_l on BC, B_l on CA, C_l on AB). The line must stay clear of the
    vertices; a missed side (flat parallel case) raises NoIntersection.
    """
    for v in (tri.a, tri.b, tri.c):
        if line.residual(v) <= VERTEX_TOL:
            raise DegenerateInput("auxiliary line passes through a triangle vertex")
    a_l = line_meet(line, tri.side_a, ref=tri.b)
    b_l = line_meet(line, tri.side_b, ref=tri.c)
    c_l = line_meet(line, tri.side_c, ref=tri.a)
    return a_l, b_l, c_l


def carnot_cross_ratio_product(sext: CevianSextuple, line: OrientedGeodesic) -> float:
    """Product of the six cross-ratios cut by an auxiliary line.

    (A B C_l C1)(A B C_l C2)(B C A_l A1)(B C A_l A2)(C A B_l B1)(C A B_l B2),
    each measured on the corresponding side line. Identity:
    this equals carnot_product(sext) * menelaus_product(A_l, B_l, C_l)^2,
    and the Menelaus factor is 1 since the three cuts are collinear, so the
    value is independent of the admissible line chosen.
    """
    tri = sext.triangle
    g = tri.geometry
    a_l, b_l, c_l = transversal_points(tri, line)
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    ta1, ta2, tb1, tb2, tc1, tc2 = sext.positions()
    t_al = arc_position(tri.side_a, a_l)
    t_bl = arc_position(tri.side_b, b_l)
    t_cl = arc_position(tri.side_c, c_l)
    return (
        cross_ratio_positions(g, 0.0, t_b_on_c, t_cl, tc1)
        * cross_ratio_positions(g, 0.0, t_b_on_c, t_cl, tc2)
        * cross_ratio_positions(g, 0.0, t_c_on_a, t_al, ta1)
        * cross_ratio_positions(g, 0.0, t_c_on_a, t_al, ta2)
        * cross_ratio_positions(g, 0.0, t_a_on_b, t_bl, tb1)
        * cross_ratio_positions(g, 0.0, t_a_on_b, t_bl, tb2)
    )


def _require_on_conic(conic: Conic, pts) -> None:
    for p in pts:
        if curve_residual(conic, p) > ON_CURVE_TOL:
            raise OffCurve("point is not on the conic")


def chasles_deviation(g: Geometry, conic: Conic, a, b, c, d, e, f, require_on_conic: bool = True) -> float:
    """Relative disagreement of the pencil cross-ratios seen from E and F.

    Zero (to roundoff) for six points on a non-degenerate conic, in all three
    geometries. `require_on_conic=False` skips the incidence precondition so
    perturbed control configurations can be scored.
    """
    if conic.degenerate:
        raise DegenerateInput("Chasles's theorem requires a non-degenerate conic")
    if require_on_conic:
        _require_on_conic(conic, (a, b, c, d, e, f))
    cr_e = cross_ratio_pencil(
        Pencil(np.asarray(e, dtype=float), tuple(geodesic_through(g, e, x) for x in (a, b, c, d)))
    )
    cr_f = cross_ratio_pencil(
        Pencil(np.asarray(f, dtype=float), tuple(geodesic_through(g, f, x) for x in (a, b, c, d)))
    )
    return abs(cr_e - cr_f) / max(1.0, abs(cr_e))


def butterfly_defect(g: Geometry, conic: Conic, p, q, a, b, c, d) -> float:
    """Signed midpoint defect XM - MY of the butterfly configuration.

    PQ, AB, CD are chords of the conic with AB and CD through the arc midpoint
    M of PQ; X = AD meet PQ and Y = BC meet PQ. The theorem predicts 0.
    """
    _require_on_conic(conic, (p, q, a, b, c, d))
    pq = geodesic_through(g, p, q)
    t_q = arc_position(pq, q)
    t_m = 0.5 * t_q
    m = pq.point(t_m)
    ad = geodesic_through(g, a, d)
    bc = geodesic_through(g, b, c)
    x = line_meet(ad, pq, ref=m)
    y = line_meet(bc, pq, ref=m)
    t_x = arc_position(pq, x)
    t_y = arc_position(pq, y)
    return (t_m - t_x) - (t_y - t_m)


def carnot_n_product(tri: Triangle, pts, n: int) -> float:
    """Degree-n Carnot product over 3n side points.

    `pts` holds A_1..A_n on BC, then B_1..B_n on CA, then C_1..C_n on AB.
    The product prod_k gsin(AB_k)/gsin(B_kC) * gsin(BC_k)/gsin(C_kA)
    * gsin(CA_k)/gsin(A_kB) equals (-1)^n exactly when the 3n points lie on a
    degree-n curve. For n = 1 this is Menelaus's theorem (the reciprocal
    labeling of menelaus_product; both sides equal -1 on transversals).
    """
    if n < 1:
        raise DegenerateInput("degree must be at least 1")
    pts = list(pts)
    if len(pts) != 3 * n:
        raise DegenerateInput(f"expected {3 * n} side points, got {len(pts)}")
    g = tri.geometry
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    a_pts, b_pts, c_pts = pts[:n], pts[n : 2 * n], pts[2 * n :]
    prod = 1.0
    for k in range(n):
        t_ak = arc_position(tri.side_a, a_pts[k])
        t_bk = arc_position(tri.side_b, b_pts[k])
        t_ck = arc_position(tri.side_c, c_pts[k])
        prod *= _ratio(g, t_bk - t_a_on_b, -t_bk)  # AB_k / B_kC on line CA
        prod *= _ratio(g, t_ck - t_b_on_c, -t_ck)  # BC_k / C_kA on line AB
        prod *= _ratio(g, t_ak - t_c_on_a, -t_ak)  # CA_k / A_kB on line BC
    return prod
