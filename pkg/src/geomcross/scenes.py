"""Scene documents: named points, curves, and assertions with JSON round-tripping.

Schema:

    {
      "geometry": "spherical" | "euclidean" | "hyperbolic",
      "points":  {name: [x, y, z]},
      "curves":  {name: {"degree": n, "coeffs": [...]}},
      "assertions": [{"predicate": ..., "args": [...], "expect": ..., "tol": ...}],
      "metadata": {...}          # optional, e.g. generator retry counts
    }

Numbers serialize through Python's shortest-round-trip float repr (up to 17
significant digits), so write-then-read is lossless.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import forms
from .curves import Conic, DegreeNCurve, curve_residual
from .errors import ParseError, ValidationError
from .forms import Geometry, distance, geometry_from_name
from .incidence import Pencil, cross_ratio_pencil, cross_ratio_points, geodesic_through
from .theorems import (
    CevianSextuple,
    Triangle,
    butterfly_defect,
    carnot_n_product,
    carnot_product,
    chasles_deviation,
    menelaus_product,
)

SURFACE_DRIFT_TOL = 1e-9


@dataclass(frozen=True)
class Assertion:
    predicate: str
    args: tuple[str, ...]
    expect: float
    tol: float


@dataclass
class Scene:
    geometry: Geometry
    points: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    assertions: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def validate(self) -> None:
        for name, p in self.points.items():
            p = np.asarray(p, dtype=float)
            try:
                q = forms.renormalize(self.geometry, p)
            except Exception:
                raise ValidationError(f"surface membership violated by point {name!r}")
            drift = float(np.max(np.abs(q - p))) / max(1.0, float(np.max(np.abs(p))))
            if drift > SURFACE_DRIFT_TOL:
                raise ValidationError(f"surface membership violated by point {name!r}")
        for a in self.assertions:
            if a.predicate not in PREDICATES:
                raise ValidationError(f"unknown predicate {a.predicate!r}")
            for name in a.args:
                if name not in self.points and name not in self.curves:
                    raise ValidationError(f"unresolved name {name!r} in assertion")

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry.name,
            "points": {k: [float(x) for x in v] for k, v in self.points.items()},
            "curves": {
                k: {"degree": c.degree, "coeffs": _curve_coeffs(c)}
                for k, c in self.curves.items()
            },
            "assertions": [
                {
                    "predicate": a.predicate,
                    "args": list(a.args),
                    "expect": a.expect,
                    "tol": a.tol,
                }
                for a in self.assertions
            ],
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Scene":
        try:
            geometry = geometry_from_name(doc["geometry"])
            points = {
                str(k): np.array([float(x) for x in v], dtype=float)
                for k, v in doc.get("points", {}).items()
            }
            for name, p in points.items():
                if p.shape != (3,):
                    raise ParseError(f"point {name!r} must have three coordinates")
            curves = {}
            for k, spec in doc.get("curves", {}).items():
                degree = int(spec["degree"])
                coeffs = [float(x) for x in spec["coeffs"]]
                curves[str(k)] = _curve_from_coeffs(degree, coeffs)
            assertions = [
                Assertion(
                    predicate=str(a["predicate"]),
                    args=tuple(str(x) for x in a["args"]),
                    expect=float(a["expect"]),
                    tol=float(a["tol"]),
                )
                for a in doc.get("assertions", [])
            ]
            metadata = doc.get("metadata", {})
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed scene document: {exc}") from exc
        scene = cls(geometry, points, curves, assertions, metadata)
        scene.validate()
        return scene

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "Scene":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        if not isinstance(doc, dict):
            raise ParseError("scene document must be a JSON object")
        return cls.from_dict(doc)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "Scene":
        with open(path) as fh:
            return cls.loads(fh.read())


def _curve_coeffs(curve) -> list[float]:
    if isinstance(curve, Conic):
        curve = curve.as_degree_n()
    return [float(x) for x in curve.coeffs]


def _curve_from_coeffs(degree: int, coeffs):
    curve = DegreeNCurve(degree, coeffs)
    if degree == 2:
        c = curve.coeffs
        return Conic(
            [
                [c[0], c[1] / 2, c[2] / 2],
                [c[1] / 2, c[3], c[4] / 2],
                [c[2] / 2, c[4] / 2, c[5]],
            ]
        )
    return curve


def _pts(scene: Scene, names):
    return [scene.points[n] for n in names]


def _eval_cross_ratio(scene: Scene, args):
    a, b, c, d = _pts(scene, args)
    line = geodesic_through(scene.geometry, a, b)
    return cross_ratio_points(line, a, b, c, d)


def _eval_cross_ratio_pencil(scene: Scene, args):
    vertex = scene.points[args[0]]
    pts = _pts(scene, args[1:])
    lines = tuple(geodesic_through(scene.geometry, vertex, p) for p in pts)
    return cross_ratio_pencil(Pencil(np.asarray(vertex, dtype=float), lines))


def _eval_menelaus(scene: Scene, args):
    a, b, c, al, bl, cl = _pts(scene, args)
    return menelaus_product(Triangle(scene.geometry, a, b, c), al, bl, cl)


def _eval_carnot(scene: Scene, args):
    a, b, c, a1, a2, b1, b2, c1, c2 = _pts(scene, args)
    tri = Triangle(scene.geometry, a, b, c)
    return carnot_product(CevianSextuple(tri, a1, a2, b1, b2, c1, c2))


def _eval_carnot_n(scene: Scene, args):
    pts = _pts(scene, args)
    if (len(pts) - 3) % 3 != 0 or len(pts) < 6:
        raise ValidationError("carnot_n_product takes 3 vertices plus 3n side points")
    n = (len(pts) - 3) // 3
    tri = Triangle(scene.geometry, *pts[:3])
    return carnot_n_product(tri, pts[3:], n)


def _eval_chasles(scene: Scene, args):
    conic = scene.curves[args[0]]
    pts = _pts(scene, args[1:])
    return chasles_deviation(scene.geometry, conic, *pts)


def _eval_butterfly(scene: Scene, args):
    conic = scene.curves[args[0]]
    pts = _pts(scene, args[1:])
    return butterfly_defect(scene.geometry, conic, *pts)


def _eval_distance(scene: Scene, args):
    p, q = _pts(scene, args)
    return distance(scene.geometry, p, q)


def _eval_curve_residual(scene: Scene, args):
    return curve_residual(scene.curves[args[0]], scene.points[args[1]])


PREDICATES = {
    "cross_ratio": _eval_cross_ratio,
    "cross_ratio_pencil": _eval_cross_ratio_pencil,
    "menelaus_product": _eval_menelaus,
    "carnot_product": _eval_carnot,
    "carnot_n_product": _eval_carnot_n,
    "chasles_deviation": _eval_chasles,
    "butterfly_defect": _eval_butterfly,
    "distance": _eval_distance,
    "curve_residual": _eval_curve_residual,
}


def evaluate_assertion(scene: Scene, assertion: Assertion):
    """Returns (value, passed) for one assertion."""
    fn = PREDICATES[assertion.predicate]
    value = float(fn(scene, assertion.args))
    return value, abs(value - assertion.expect) <= assertion.tol


def check_scene(scene: Scene):
    """Evaluate every assertion; returns a list of (assertion, value, passed)."""
    scene.validate()
    results = []
    for a in scene.assertions:
        value, passed = evaluate_assertion(scene, a)
        results.append((a, value, passed))
    return results
