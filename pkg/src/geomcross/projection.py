"""Central (gnomic) projection onto affine planes and the Beltrami-Klein chart.

A projection plane {x : n . x = 1} (ordinary dot product, n != 0) carries an
orthonormal 2-D chart. Projecting a surface point means scaling it along its
central ray until it hits the plane; antipodal spherical points land on the
same image. Pushing a homogeneous cone forward yields the planar polynomial
cut out on the chart, which is how spherical/hyperbolic conics become planar
conics.
"""

from __future__ import annotations

import math

import numpy as np

from .curves import Conic, DegreeNCurve, monomial_exponents
from .errors import AtInfinity, DegenerateInput, OnHorizon
from .forms import Geometry, HYPERBOLIC


class ProjectionPlane:
    """The plane {x : n . x = 1} with a deterministic orthonormal chart.

    The chart frame (base point b, directions e1, e2) is built from the
    smallest-magnitude axis crossed with n, so outputs are reproducible
    bit-for-bit. An explicit frame may be supplied instead.
    """

    __slots__ = ("normal", "base", "e1", "e2")

    def __init__(self, normal, frame=None):
        n = np.asarray(normal, dtype=float)
        nn = float(np.dot(n, n))
        if nn == 0.0:
            raise DegenerateInput("projection plane must not contain the origin")
        self.normal = n
        if frame is not None:
            b, e1, e2 = (np.asarray(a, dtype=float) for a in frame)
        else:
            b = n / nn
            axis = np.zeros(3)
            axis[int(np.argmin(np.abs(n)))] = 1.0
            e1 = np.cross(axis, n)
            e1 = e1 / np.linalg.norm(e1)
            e2 = np.cross(n, e1)
            e2 = e2 / np.linalg.norm(e2)
        if abs(np.dot(n, e1)) > 1e-10 or abs(np.dot(n, e2)) > 1e-10 or abs(np.dot(n, b) - 1.0) > 1e-10:
            raise DegenerateInput("chart frame is not adapted to the plane")
        self.base = b
        self.e1 = e1
        self.e2 = e2

    @classmethod
    def z1(cls) -> "ProjectionPlane":
        """The plane z = 1 with the canonical chart (s1, s2) = (x, y)."""
        return cls(
            [0.0, 0.0, 1.0],
            frame=([0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
        )

    def embed(self, s) -> np.ndarray:
        """Ambient position of chart coordinates (s1, s2)."""
        return self.base + s[0] * self.e1 + s[1] * self.e2


def project_point(p, plane: ProjectionPlane) -> np.ndarray:
    """Chart coordinates of the central projection p -> p / (n . p).

    Raises AtInfinity when the ray through p is (numerically) parallel to the
    plane. Antipodal spherical inputs give the identical image: the sign of
    n . p cancels exactly.
    """
    p = np.asarray(p, dtype=float)
    n = plane.normal
    d = float(np.dot(n, p))
    scale = 1.0 + float(np.linalg.norm(n) * np.linalg.norm(p))
    if abs(d) <= 1e-12 * scale:
        raise AtInfinity("central ray does not meet the projection plane")
    x = p / d
    rel = x - plane.base
    return np.array([float(np.dot(rel, plane.e1)), float(np.dot(rel, plane.e2))])


def hemisphere_normalize(pts, pole) -> list[np.ndarray]:
    """Replace spherical points by antipodes so all satisfy <pole, p> > 0.

    Cross-ratios of collinear quadruples are unchanged by the swaps. A point
    orthogonal to the pole has no representative and raises OnHorizon.
    """
    pole = np.asarray(pole, dtype=float)
    out = []
    for p in pts:
        p = np.asarray(p, dtype=float)
        d = float(np.dot(pole, p))
        if abs(d) <= 1e-10:
            raise OnHorizon("point lies on the horizon of the reference pole")
        out.append(p if d > 0.0 else -p)
    return out


def klein_coordinates(p) -> np.ndarray:
    """Beltrami-Klein image of a hyperboloid point: (x/z, y/z), inside the unit disk."""
    p = np.asarray(p, dtype=float)
    return np.array([p[0] / p[2], p[1] / p[2]])


class PlanarCurve:
    """Polynomial in chart coordinates; coeffs[i, j] multiplies s1^i s2^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = np.asarray(coeffs, dtype=float)

    def __call__(self, s) -> float:
        total = 0.0
        for i in range(self.coeffs.shape[0]):
            for j in range(self.coeffs.shape[1]):
                c = self.coeffs[i, j]
                if c != 0.0:
                    total += c * s[0] ** i * s[1] ** j
        return total

    @property
    def degree(self) -> int:
        nz = np.argwhere(np.abs(self.coeffs) > 1e-12 * max(1.0, float(np.max(np.abs(self.coeffs)))))
        if len(nz) == 0:
            return 0
        return int(np.max(nz.sum(axis=1)))

    @property
    def is_degenerate(self) -> bool:
        """True when no positive-degree term survives (image is empty or all of w)."""
        return self.degree == 0

    def residual(self, s) -> float:
        scale = float(np.max(np.abs(self.coeffs)))
        d = max(self.coeffs.shape) - 1
        return abs(self(s)) / (scale * max(1.0, float(np.max(np.abs(s)))) ** d)

    def homogenize(self, n: int | None = None) -> DegreeNCurve:
        """Lift back to a degree-n cone via the canonical z=1 chart: s1^i s2^j -> x^i y^j z^(n-i-j)."""
        if n is None:
            n = self.degree
            if n == 0:
                raise DegenerateInput("constant planar curve has no cone lift")
        expos = monomial_exponents(n)
        out = np.zeros(len(expos))
        index = {e: k for k, e in enumerate(expos)}
        for i in range(self.coeffs.shape[0]):
            for j in range(self.coeffs.shape[1]):
                c = self.coeffs[i, j]
                if c != 0.0:
                    out[index[(i, j, n - i - j)]] = c
        return DegreeNCurve(n, out)


def _poly_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1))
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            if a[i, j] != 0.0:
                out[i : i + b.shape[0], j : j + b.shape[1]] += a[i, j] * b
    return out


def pushforward_curve(curve, plane: ProjectionPlane) -> PlanarCurve:
    """Planar polynomial of the projected curve: F composed with the chart embedding.

    Substitutes x(s1, s2) = b + s1 e1 + s2 e2 into the homogeneous F. A surface
    zero of F with n . p != 0 projects to a chart zero of the result.
    """
    if isinstance(curve, Conic):
        curve = curve.as_degree_n()
    n = curve.degree
    lin = []
    for k in range(3):
        m = np.zeros((2, 2))
        m[0, 0] = plane.base[k]
        m[1, 0] = plane.e1[k]
        m[0, 1] = plane.e2[k]
        lin.append(m)
    # cached powers of the three linear forms
    powers = []
    for k in range(3):
        pw = [np.ones((1, 1))]
        for _ in range(n):
            pw.append(_poly_mul(pw[-1], lin[k]))
        powers.append(pw)
    total = np.zeros((n + 1, n + 1))
    for c, (a, b, cc) in zip(curve.coeffs, monomial_exponents(n)):
        if c == 0.0:
            continue
        term = _poly_mul(_poly_mul(powers[0][a], powers[1][b]), powers[2][cc])
        total[: term.shape[0], : term.shape[1]] += c * term
    return PlanarCurve(total)


def transport_points(g: Geometry, points, plane: ProjectionPlane | None = None):
    """Project a curved configuration to Euclidean z=1 ambient points.

    This realizes the differential-test oracle: predicates evaluated on the
    curved configuration must match the Euclidean predicates on the returned
    points. For the hyperboloid the default plane is z = 1 (Klein model); for
    the sphere a plane (typically the tangent plane at a hemisphere pole)
    must be supplied and all points must satisfy n . p > 0.
    """
    if plane is None:
        if g is not HYPERBOLIC and g.curvature != -1:
            raise DegenerateInput("a projection plane is required off the hyperboloid")
        plane = ProjectionPlane.z1()
    out = []
    for p in points:
        s = project_point(p, plane)
        out.append(np.array([s[0], s[1], 1.0]))
    return out
