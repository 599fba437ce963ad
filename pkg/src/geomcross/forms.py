"""Curvature-indexed linear algebra for the three constant-curvature plane models.

The three geometries share one 3-vector representation:

* curvature +1: unit sphere x^2 + y^2 + z^2 = 1,
* curvature -1: upper sheet of x^2 + y^2 - z^2 = -1 (z >= 1) in Minkowski 3-space,
* curvature  0: the Euclidean plane embedded as z = 1.

Keeping the flat plane embedded at z = 1 lets central projection and the
homogeneous curve machinery treat all three cases uniformly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput

SURFACE_TOL = 1e-12


@dataclass(frozen=True)
class Geometry:
    """Constant-curvature model selector; curvature must be +1, 0, or -1."""

    curvature: int

    def __post_init__(self):
        if self.curvature not in (1, 0, -1):
            raise ValueError(f"curvature must be +1, 0 or -1, got {self.curvature}")

    @property
    def name(self) -> str:
        return {1: "spherical", 0: "euclidean", -1: "hyperbolic"}[self.curvature]

    @property
    def sigma(self) -> int:
        """Sign of the z*z term in the ambient bilinear form."""
        return -1 if self.curvature == -1 else 1


SPHERICAL = Geometry(1)
EUCLIDEAN = Geometry(0)
HYPERBOLIC = Geometry(-1)

_BY_NAME = {g.name: g for g in (SPHERICAL, EUCLIDEAN, HYPERBOLIC)}


def geometry_from_name(name: str) -> Geometry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown geometry {name!r}; expected one of {sorted(_BY_NAME)}")


def bilinear_form(g: Geometry, u, v) -> float:
    """Ambient bilinear form: u1*v1 + u2*v2 + sigma*u3*v3 (sigma = -1 only for curvature -1)."""
    return float(u[0] * v[0] + u[1] * v[1] + g.sigma * u[2] * v[2])


def gsin(g: Geometry, x: float) -> float:
    """Generalized sine: sin, identity, or sinh according to the curvature."""
    if g.curvature == 1:
        return math.sin(x)
    if g.curvature == -1:
        return math.sinh(x)
    return x


def surface_defect(g: Geometry, p) -> float:
    """How far the point sits from its model surface (0 for a valid point).

    For curvature +-1 this is |Q(p,p) - s| with s = +-1; for the flat chart
    it is |z - 1|.
    """
    if g.curvature == 0:
        return abs(float(p[2]) - 1.0)
    target = 1.0 if g.curvature == 1 else -1.0
    return abs(bilinear_form(g, p, p) - target)


def on_surface(g: Geometry, p, tol: float = SURFACE_TOL) -> bool:
    if g.curvature == -1 and p[2] < 1.0 - tol:
        return False
    return surface_defect(g, p) <= tol


def renormalize(g: Geometry, p) -> np.ndarray:
    """Rescale a near-surface point back onto the model surface.

    Divides by sqrt(|Q(p,p)|) (curvature +-1) or by z (flat chart). The upper
    hyperboloid sheet is enforced by flipping sign when z < 0.
    """
    p = np.asarray(p, dtype=float)
    if g.curvature == 0:
        if abs(p[2]) < 1e-300:
            raise DegenerateInput("cannot renormalize a chart point with z = 0")
        return p / p[2]
    q = bilinear_form(g, p, p)
    if g.curvature == 1:
        if q <= 0.0:
            raise DegenerateInput("point has non-positive spherical norm")
        return p / math.sqrt(q)
    if q >= 0.0:
        raise DegenerateInput("point is not timelike; cannot lie on the hyperboloid")
    out = p / math.sqrt(-q)
    return -out if out[2] < 0.0 else out


def distance(g: Geometry, p, q) -> float:
    """Geodesic distance between two surface points.

    arccos/arccosh arguments are clamped into their domains so that roundoff
    at distance ~0 or ~pi cannot push them out.
    """
    if g.curvature == 0:
        return math.hypot(p[0] - q[0], p[1] - q[1])
    c = bilinear_form(g, p, q)
    if g.curvature == 1:
        return math.acos(min(1.0, max(-1.0, c)))
    return math.acosh(max(-c, 1.0))


def point(x: float, y: float, z: float) -> np.ndarray:
    """Convenience constructor for a raw ambient 3-vector."""
    return np.array([x, y, z], dtype=float)


def chart_point(s1: float, s2: float) -> np.ndarray:
    """Euclidean chart point (s1, s2) embedded at z = 1."""
    return np.array([s1, s2, 1.0])


def lift_to_surface(g: Geometry, s1: float, s2: float) -> np.ndarray:
    """Lift a z=1 chart point onto the model surface along its central ray.

    Inverse of central projection onto z=1. For curvature -1 the chart point
    must lie inside the unit disk.
    """
    if g.curvature == 0:
        return np.array([s1, s2, 1.0])
    r2 = s1 * s1 + s2 * s2
    if g.curvature == 1:
        scale = 1.0 / math.sqrt(1.0 + r2)
    else:
        if r2 >= 1.0:
            raise DegenerateInput("chart point outside the Klein disk has no hyperboloid lift")
        scale = 1.0 / math.sqrt(1.0 - r2)
    return np.array([s1 * scale, s2 * scale, scale])
