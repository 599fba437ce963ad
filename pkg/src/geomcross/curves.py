"""Conics and degree-n curves as homogeneous cones, with fitting and intersection.

A curve on any of the three model surfaces is the zero set of a homogeneous
polynomial F in the ambient coordinates: the surface's intersection with the
cone F = 0 through the origin. Degree 2 is stored as a symmetric 3x3 form;
general degree as a coefficient vector over the monomials x^a y^b z^c with
a + b + c = n in graded-lex order (x > y > z).
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DegenerateInput, IdenticallyZero, IllConditioned
from .incidence import OrientedGeodesic

RESIDUAL_TOL = 1e-10
ROOT_RESIDUAL_TOL = 1e-12
SCAN_SAMPLES = 2048
# Parameter window for the scan-based solver off the sphere; roots outside
# it are not found (documented limitation of the degree >= 3 path).
SCAN_WINDOW = 24.0


@lru_cache(maxsize=None)
def monomial_exponents(n: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples (a, b, c), a+b+c = n, in graded-lex order."""
    return tuple(
        (a, b, n - a - b) for a in range(n, -1, -1) for b in range(n - a, -1, -1)
    )


def _normalize_coeffs(coeffs: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(coeffs))
    if norm == 0.0:
        raise DegenerateInput("zero coefficient vector is not a curve")
    coeffs = coeffs / norm
    for c in coeffs:
        if c != 0.0:
            return coeffs if c > 0.0 else -coeffs
    raise DegenerateInput("zero coefficient vector is not a curve")  # pragma: no cover


class DegreeNCurve:
    """Homogeneous degree-n curve; coefficients normalized to unit norm."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        if degree < 1:
            raise ValueError("curve degree must be positive")
        coeffs = np.asarray(coeffs, dtype=float)
        expected = (degree + 1) * (degree + 2) // 2
        if coeffs.shape != (expected,):
            raise ValueError(f"degree {degree} needs {expected} coefficients, got {coeffs.shape}")
        self.degree = degree
        self.coeffs = _normalize_coeffs(coeffs)

    def __call__(self, p) -> float:
        x, y, z = float(p[0]), float(p[1]), float(p[2])
        total = 0.0
        for c, (a, b, cc) in zip(self.coeffs, monomial_exponents(self.degree)):
            total += c * x**a * y**b * z**cc
        return total

    def evaluate_many(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on an (m, 3) array of points."""
        x, y, z = pts[:, 0], pts[:, 1], pts[:, 2]
        total = np.zeros(len(pts))
        for c, (a, b, cc) in zip(self.coeffs, monomial_exponents(self.degree)):
            total += c * x**a * y**b * z**cc
        return total

    def gradient(self, p) -> np.ndarray:
        x, y, z = float(p[0]), float(p[1]), float(p[2])
        gx = gy = gz = 0.0
        for c, (a, b, cc) in zip(self.coeffs, monomial_exponents(self.degree)):
            if a:
                gx += c * a * x ** (a - 1) * y**b * z**cc
            if b:
                gy += c * b * x**a * y ** (b - 1) * z**cc
            if cc:
                gz += c * cc * x**a * y**b * z ** (cc - 1)
        return np.array([gx, gy, gz])

    def coeff_scale(self) -> float:
        return float(np.max(np.abs(self.coeffs)))


class Conic:
    """Quadratic cone stored as a symmetric 3x3 form.

    Normalized to unit Frobenius norm with the first nonzero upper-triangle
    entry positive, so two representations of the same conic compare equal.
    Rank <= 2 cones (line pairs) are representable and flagged degenerate.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=float)
        m = 0.5 * (m + m.T)
        norm = float(np.linalg.norm(m))
        if norm == 0.0:
            raise DegenerateInput("zero matrix is not a conic")
        m = m / norm
        upper = np.array([m[0, 0], m[0, 1], m[0, 2], m[1, 1], m[1, 2], m[2, 2]])
        for c in upper:
            if c != 0.0:
                if c < 0.0:
                    m = -m
                break
        self.matrix = m

    def __call__(self, p) -> float:
        p = np.asarray(p, dtype=float)
        return float(p @ self.matrix @ p)

    def gradient(self, p) -> np.ndarray:
        return 2.0 * (self.matrix @ np.asarray(p, dtype=float))

    @property
    def degree(self) -> int:
        return 2

    @property
    def degenerate(self) -> bool:
        return abs(float(np.linalg.det(self.matrix))) <= 1e-10

    def coeff_scale(self) -> float:
        return float(np.max(np.abs(self.matrix)))

    def as_degree_n(self) -> DegreeNCurve:
        """Coefficient-vector view over the degree-2 monomial basis."""
        m = self.matrix
        return DegreeNCurve(
            2,
            [m[0, 0], 2 * m[0, 1], 2 * m[0, 2], m[1, 1], 2 * m[1, 2], m[2, 2]],
        )


def conic_through_five(pts) -> Conic:
    """The conic through five ambient points, via the nullspace of a 5x6 system.

    Raises IllConditioned when the points do not determine a unique conic
    (nullspace dimension > 1 at singular-value tolerance 1e-10 * sigma_max).
    """
    pts = [np.asarray(p, dtype=float) for p in pts]
    if len(pts) != 5:
        raise ValueError("exactly five points are required")
    rows = np.array(
        [
            [x * x, 2 * x * y, 2 * x * z, y * y, 2 * y * z, z * z]
            for x, y, z in ((p[0], p[1], p[2]) for p in pts)
        ]
    )
    _, s, vt = np.linalg.svd(rows)
    if s[-2] <= 1e-10 * s[0]:
        raise IllConditioned("five points do not determine a unique conic")
    q = vt[-1]
    conic = Conic(
        [[q[0], q[1], q[2]], [q[1], q[3], q[4]], [q[2], q[4], q[5]]]
    )
    for p in pts:
        if curve_residual(conic, p) > RESIDUAL_TOL:
            raise IllConditioned("conic fit failed to interpolate its input points")
    return conic


def curve_residual(curve, p) -> float:
    """Scale-invariant incidence residual |F(p)| / (max|coeff| * ||p||_inf^n)."""
    p = np.asarray(p, dtype=float)
    scale = curve.coeff_scale() * max(float(np.max(np.abs(p))), 1e-300) ** curve.degree
    return abs(curve(p)) / scale


def _polish_root(curve, line: OrientedGeodesic, t: float, iters: int = 8) -> float:
    for _ in range(iters):
        p = line.point(t)
        f = curve(p)
        df = float(np.dot(curve.gradient(p), line.tangent(t)))
        if df == 0.0:
            break
        step = f / df
        t -= step
        if abs(step) < 1e-16 * max(1.0, abs(t)):
            break
    return t


def _root_residual(curve, line: OrientedGeodesic, t: float) -> float:
    return curve_residual(curve, line.point(t))


def _reduce_sphere(t: float) -> float:
    t = math.fmod(t + math.pi, 2.0 * math.pi)
    if t <= 0.0:
        t += 2.0 * math.pi
    return t - math.pi


def _dedupe(ts, curvature: int, tol: float = 1e-8) -> list[float]:
    out: list[float] = []
    for t in sorted(ts):
        dup = False
        for s in out:
            d = abs(t - s)
            if curvature == 1:
                d = min(d, abs(d - 2.0 * math.pi))
            if d <= tol:
                dup = True
                break
        if not dup:
            out.append(t)
    return out


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of c*r^2 + 2*b*r + a = 0, numerically stable."""
    m = max(abs(a), abs(b), abs(c))
    if abs(c) <= 1e-14 * m:
        if abs(b) <= 1e-14 * m:
            return []
        return [-a / (2.0 * b)]
    disc = b * b - a * c
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    q = -(b + math.copysign(sq, b) if b != 0.0 else sq)
    roots = [q / c]
    if q != 0.0:
        roots.append(a / q)
    else:
        roots.append(0.0)
    return roots


def _intersect_conic(conic: Conic, line: OrientedGeodesic) -> list[float]:
    g = line.geometry
    a = conic(line.u)
    c = conic(line.v)
    b = float(line.u @ conic.matrix @ line.v)
    m = max(abs(a), abs(b), abs(c))
    if m <= 1e-12 * conic.coeff_scale():
        raise IdenticallyZero("geodesic lies on the conic")
    taus = _quadratic_roots(a, b, c)
    cands: list[float] = []
    if g.curvature == 0:
        cands = list(taus)
    elif g.curvature == 1:
        for tau in taus:
            t0 = math.atan(tau)
            cands.append(t0)
            cands.append(_reduce_sphere(t0 + math.pi))
        # tan substitution misses roots at cos(t) = 0
        if abs(c) <= 1e-11 * m:
            cands.extend([math.pi / 2.0, -math.pi / 2.0])
    else:
        for tau in taus:
            if abs(tau) < 1.0:
                cands.append(math.atanh(tau))
    return cands


def _scan_window(line: OrientedGeodesic) -> np.ndarray:
    if line.geometry.curvature == 1:
        return np.linspace(-math.pi, math.pi, SCAN_SAMPLES + 1)
    return np.linspace(-SCAN_WINDOW, SCAN_WINDOW, SCAN_SAMPLES + 1)


def _intersect_scan(curve: DegreeNCurve, line: OrientedGeodesic) -> list[float]:
    ts = _scan_window(line)
    pts = line.points_many(ts)
    vals = curve.evaluate_many(pts)
    scale = curve.coeff_scale() * np.maximum(np.max(np.abs(pts), axis=1), 1.0) ** curve.degree
    rel = vals / scale
    if float(np.max(np.abs(rel))) <= 1e-12:
        raise IdenticallyZero("geodesic lies on the curve")
    cands: list[float] = []
    for i in range(len(ts) - 1):
        lo, hi = vals[i], vals[i + 1]
        if lo == 0.0:
            cands.append(float(ts[i]))
            continue
        if lo * hi < 0.0:
            a, b = float(ts[i]), float(ts[i + 1])
            fa = lo
            for _ in range(60):
                mid = 0.5 * (a + b)
                fm = curve(line.point(mid))
                if fm == 0.0 or (b - a) < 1e-14:
                    a = b = mid
                    break
                if fa * fm < 0.0:
                    b = mid
                else:
                    a, fa = mid, fm
            cands.append(0.5 * (a + b))
    if vals[-1] == 0.0:
        cands.append(float(ts[-1]))
    return cands


def intersect_curve_geodesic(curve, line: OrientedGeodesic) -> list[float]:
    """All parameters t with F(gamma(t)) = 0, polished to residual <= 1e-12.

    Conics are solved in closed form through the tan/tanh substitution; higher
    degrees by a 2048-sample scan with bisection and Newton polish (root pairs
    closer than the scan step may be missed). An empty list means no
    intersection; a geodesic lying on the curve raises IdenticallyZero.
    """
    if isinstance(curve, Conic):
        cands = _intersect_conic(curve, line)
    elif curve.degree <= 2:
        # low-degree coefficient curves go through the closed forms too
        if curve.degree == 2:
            c = curve.coeffs
            conic = Conic(
                [
                    [c[0], c[1] / 2, c[2] / 2],
                    [c[1] / 2, c[3], c[4] / 2],
                    [c[2] / 2, c[4] / 2, c[5]],
                ]
            )
            cands = _intersect_conic(conic, line)
        else:
            cands = _intersect_linear(curve, line)
    else:
        cands = _intersect_scan(curve, line)
    roots = []
    for t in cands:
        t = _polish_root(curve, line, t)
        if line.geometry.curvature == 1:
            t = _reduce_sphere(t)
        if _root_residual(curve, line, t) <= ROOT_RESIDUAL_TOL:
            roots.append(t)
    return _dedupe(roots, line.geometry.curvature)


def _intersect_linear(curve: DegreeNCurve, line: OrientedGeodesic) -> list[float]:
    """Roots of a linear form n . gamma(t) = 0."""
    n = curve.coeffs
    a = float(np.dot(n, line.u))
    b = float(np.dot(n, line.v))
    g = line.geometry
    m = max(abs(a), abs(b))
    if m <= 1e-12 * curve.coeff_scale():
        raise IdenticallyZero("geodesic lies on the line")
    if g.curvature == 0:
        return [] if abs(b) <= 1e-14 * m else [-a / b]
    if g.curvature == 1:
        # a cos t + b sin t = 0
        t0 = math.atan2(-a, b)
        return [t0, _reduce_sphere(t0 + math.pi)]
    # a cosh t + b sinh t = 0  =>  tanh t = -a/b
    if abs(b) <= abs(a):
        return []
    return [math.atanh(-a / b)]
