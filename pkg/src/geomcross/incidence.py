"""Oriented geodesics, signed arc positions, and cross-ratios of points and pencils.

A geodesic is the intersection of the model surface with a plane through the
origin. We store it as an orthonormal frame (u, v) under the ambient form:
u is a surface point, v a unit tangent there, and the curve is

    curvature +1:  gamma(t) = cos(t) u + sin(t) v
    curvature -1:  gamma(t) = cosh(t) u + sinh(t) v
    curvature  0:  gamma(t) = u + t v          (u3 = 1, v3 = 0)

The cross-ratio of four collinear points is the generalized-sine ratio
gsin(AC)/gsin(AD) * gsin(BD)/gsin(BC) of signed arc positions; for four
concurrent lines it is the same expression in sines of oriented angles
between their tangents at the vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import forms
from .errors import DegenerateInput, NoIntersection, OffCurve
from .forms import Geometry, bilinear_form, gsin

FRAME_TOL = 1e-12
INCIDENCE_TOL = 1e-10
DEGENERACY_TOL = 1e-10


def _cross3(a, b) -> np.ndarray:
    return np.array(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


class OrientedGeodesic:
    """A geodesic with a frame fixing its parametrization and orientation."""

    __slots__ = ("geometry", "u", "v", "_normal")

    def __init__(self, geometry: Geometry, u, v, check: bool = True):
        self.geometry = geometry
        self.u = np.asarray(u, dtype=float)
        self.v = np.asarray(v, dtype=float)
        self._normal = None
        if check:
            if abs(bilinear_form(geometry, self.u, self.v)) > 1e-10:
                raise DegenerateInput("geodesic frame is not orthogonal")
            if abs(bilinear_form(geometry, self.v, self.v) - 1.0) > 1e-10:
                raise DegenerateInput("geodesic tangent is not unit length")
            if geometry.curvature == 0 and abs(self.v[2]) > 1e-10:
                raise DegenerateInput("flat-chart tangent must have zero z component")

    def point(self, t: float) -> np.ndarray:
        k = self.geometry.curvature
        if k == 1:
            return math.cos(t) * self.u + math.sin(t) * self.v
        if k == -1:
            return math.cosh(t) * self.u + math.sinh(t) * self.v
        return self.u + t * self.v

    def points_many(self, ts: np.ndarray) -> np.ndarray:
        """Vectorized gamma(t) for an array of parameters; returns (m, 3)."""
        ts = np.asarray(ts, dtype=float)
        k = self.geometry.curvature
        if k == 1:
            return np.outer(np.cos(ts), self.u) + np.outer(np.sin(ts), self.v)
        if k == -1:
            return np.outer(np.cosh(ts), self.u) + np.outer(np.sinh(ts), self.v)
        return self.u + np.outer(ts, self.v)

    def tangent(self, t: float) -> np.ndarray:
        """Velocity gamma'(t); a unit tangent under the ambient form."""
        k = self.geometry.curvature
        if k == 1:
            return -math.sin(t) * self.u + math.cos(t) * self.v
        if k == -1:
            return math.sinh(t) * self.u + math.cosh(t) * self.v
        return self.v

    def reversed(self) -> "OrientedGeodesic":
        return OrientedGeodesic(self.geometry, self.u, -self.v, check=False)

    def plane_normal(self) -> np.ndarray:
        """Euclidean normal of the central plane containing the geodesic (cached)."""
        if self._normal is None:
            self._normal = _cross3(self.u, self.v)
        return self._normal

    def residual(self, p) -> float:
        """Distance scale of p from the geodesic's central plane (0 if incident)."""
        n = self.plane_normal()
        dot = n[0] * p[0] + n[1] * p[1] + n[2] * p[2]
        nn = math.sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2])
        scale = nn * max(1.0, abs(p[0]), abs(p[1]), abs(p[2]))
        return abs(dot) / scale

    def contains(self, p, tol: float = INCIDENCE_TOL) -> bool:
        return self.residual(p) <= tol and forms.on_surface(self.geometry, p, tol=1e-9)


def antipode(g: Geometry, p) -> np.ndarray:
    """The point -p; only the sphere has antipodes."""
    if g.curvature != 1:
        raise DegenerateInput("antipodes exist only in spherical geometry")
    return -np.asarray(p, dtype=float)


def geodesic_through(g: Geometry, p, q, tol: float = DEGENERACY_TOL) -> OrientedGeodesic:
    """The oriented geodesic with gamma(0) = p and q at a positive parameter.

    The tangent is obtained by Gram-Schmidt of q against p under the ambient
    form. Coincident (or, on the sphere, antipodal) pairs are rejected.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if g.curvature == 0:
        d = q - p
        norm = math.hypot(d[0], d[1])
        if norm <= tol:
            raise DegenerateInput("coincident points have no unique geodesic")
        return OrientedGeodesic(g, p, np.array([d[0] / norm, d[1] / norm, 0.0]), check=False)
    qpp = bilinear_form(g, p, p)
    w = q - (bilinear_form(g, p, q) / qpp) * p
    ww = bilinear_form(g, w, w)
    if ww <= tol * tol:
        raise DegenerateInput("coincident or antipodal points have no unique geodesic")
    v = w / math.sqrt(ww)
    return OrientedGeodesic(g, p, v, check=False)


def arc_position(line: OrientedGeodesic, p, tol: float = INCIDENCE_TOL) -> float:
    """Parameter t with gamma(t) = p; in (-pi, pi] on the sphere.

    Raises OffCurve if p does not reproduce from the computed parameter.
    """
    g = line.geometry
    p = np.asarray(p, dtype=float)
    if g.curvature == 1:
        t = math.atan2(bilinear_form(g, p, line.v), bilinear_form(g, p, line.u))
        if t <= -math.pi:
            t += 2.0 * math.pi
    elif g.curvature == -1:
        t = math.asinh(bilinear_form(g, p, line.v))
    else:
        t = float((p[0] - line.u[0]) * line.v[0] + (p[1] - line.u[1]) * line.v[1])
    q = line.point(t)
    err = max(abs(q[0] - p[0]), abs(q[1] - p[1]), abs(q[2] - p[2]))
    if err > tol * max(1.0, abs(p[0]), abs(p[1]), abs(p[2])):
        raise OffCurve(f"point is not on the geodesic (residual {err:.3g})")
    return t


def cross_ratio_positions(g: Geometry, ta: float, tb: float, tc: float, td: float) -> float:
    """Cross-ratio gsin(AC)/gsin(AD) * gsin(BD)/gsin(BC) from arc positions."""
    ac = gsin(g, tc - ta)
    ad = gsin(g, td - ta)
    bd = gsin(g, td - tb)
    bc = gsin(g, tc - tb)
    for name, val in (("AD", ad), ("BC", bc), ("AC", ac), ("BD", bd)):
        if abs(val) <= 1e-10:
            raise DegenerateInput(f"segment {name} has vanishing generalized sine")
    return (ac / ad) * (bd / bc)


def cross_ratio_points(line: OrientedGeodesic, a, b, c, d) -> float:
    """Cross-ratio of four distinct, pairwise non-antipodal points on one geodesic."""
    ts = [arc_position(line, p) for p in (a, b, c, d)]
    g = line.geometry
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(gsin(g, ts[j] - ts[i])) <= DEGENERACY_TOL:
                raise DegenerateInput("coincident or antipodal points in the quadruple")
    return cross_ratio_positions(g, *ts)


def tangent_basis(g: Geometry, p) -> tuple[np.ndarray, np.ndarray]:
    """An orthonormal basis of the tangent plane at a surface point.

    The restriction of the ambient form to the tangent plane is positive
    definite in all three geometries, so angles measured in this basis are
    ordinary Euclidean angles. The basis choice is deterministic.
    """
    if g.curvature == 0:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    p = np.asarray(p, dtype=float)
    qpp = bilinear_form(g, p, p)
    axes = np.eye(3)
    order = np.argsort(np.abs(p))  # best-conditioned axis first
    e1 = None
    for k in order:
        w = axes[k] - (bilinear_form(g, p, axes[k]) / qpp) * p
        ww = bilinear_form(g, w, w)
        if ww > 1e-12:
            e1 = w / math.sqrt(ww)
            break
    for k in order:
        w = axes[k] - (bilinear_form(g, p, axes[k]) / qpp) * p
        w = w - bilinear_form(g, e1, w) * e1
        ww = bilinear_form(g, w, w)
        if ww > 1e-12:
            return e1, w / math.sqrt(ww)
    raise DegenerateInput("could not build a tangent basis")  # pragma: no cover


def tangent_direction_angle(line: OrientedGeodesic, vertex, basis=None) -> float:
    """Angle of the line's tangent at the vertex within the tangent-plane basis."""
    g = line.geometry
    t = arc_position(line, vertex)
    w = line.tangent(t)
    if basis is None:
        basis = tangent_basis(g, vertex)
    e1, e2 = basis
    return math.atan2(bilinear_form(g, w, e2), bilinear_form(g, w, e1))


@dataclass(frozen=True)
class Pencil:
    """Four concurrent geodesics with their common vertex."""

    vertex: np.ndarray
    lines: tuple[OrientedGeodesic, OrientedGeodesic, OrientedGeodesic, OrientedGeodesic]

    def __post_init__(self):
        for line in self.lines:
            if line.residual(self.vertex) > INCIDENCE_TOL:
                raise DegenerateInput("pencil line does not pass through the vertex")


def cross_ratio_pencil(pencil: Pencil) -> float:
    """Cross-ratio sin(13)/sin(14) * sin(24)/sin(23) of oriented tangent angles.

    The value does not depend on the basis orientation or on which of the two
    tangent directions represents each line (each flip negates two factors).
    """
    g = pencil.lines[0].geometry
    basis = tangent_basis(g, pencil.vertex)
    th = [tangent_direction_angle(line, pencil.vertex, basis) for line in pencil.lines]
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(math.sin(th[j] - th[i])) <= DEGENERACY_TOL:
                raise DegenerateInput("pencil contains coincident lines")
    s13 = math.sin(th[2] - th[0])
    s14 = math.sin(th[3] - th[0])
    s24 = math.sin(th[3] - th[1])
    s23 = math.sin(th[2] - th[1])
    return (s13 / s14) * (s24 / s23)


def line_meet(l1: OrientedGeodesic, l2: OrientedGeodesic, ref=None) -> np.ndarray:
    """Intersection point of two geodesics.

    On the sphere the two candidates are antipodal; the representative in the
    hemisphere of `ref` (default: the first line's base point) is returned.
    On the hyperboloid and the flat chart the intersection may not exist
    (ultraparallel / parallel lines), raising NoIntersection.
    """
    g = l1.geometry
    n1 = l1.plane_normal()
    n2 = l2.plane_normal()
    d = _cross3(n1, n2)
    nd = math.sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
    s1 = math.sqrt(n1[0] * n1[0] + n1[1] * n1[1] + n1[2] * n1[2])
    s2 = math.sqrt(n2[0] * n2[0] + n2[1] * n2[1] + n2[2] * n2[2])
    if nd <= 1e-10 * s1 * s2:
        raise DegenerateInput("geodesics lie in the same central plane")
    if g.curvature == 0:
        if abs(d[2]) <= 1e-12 * nd:
            raise NoIntersection("parallel chart lines do not meet")
        return d / d[2]
    if g.curvature == 1:
        p = d / nd
        if ref is None:
            ref = l1.u
        if ref[0] * p[0] + ref[1] * p[1] + ref[2] * p[2] < 0.0:
            p = -p
        return p
    q = bilinear_form(g, d, d)
    if q >= -1e-12 * nd * nd:
        raise NoIntersection("geodesics do not meet on the hyperboloid")
    p = d / math.sqrt(-q)
    return -p if p[2] < 0.0 else p


def perspectivity(g: Geometry, apex, src: OrientedGeodesic, dst: OrientedGeodesic, pts):
    """Map points of src to dst through the pencil at the apex.

    Each point X goes to line(apex, X) meet dst. On the sphere the image
    representative is taken in the hemisphere of X.
    """
    apex = np.asarray(apex, dtype=float)
    if src.residual(apex) <= INCIDENCE_TOL or dst.residual(apex) <= INCIDENCE_TOL:
        raise DegenerateInput("perspectivity apex lies on one of the lines")
    images = []
    for x in pts:
        join = geodesic_through(g, apex, x)
        images.append(line_meet(join, dst, ref=x))
    return images
