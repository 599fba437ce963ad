"""Seeded random configuration generators for the verification suites.

Sampling conventions: uniform on the sphere via normalized Gaussian triples;
on the hyperboloid via (sinh r cos th, sinh r sin th, cosh r) with r uniform
in [0, 2]; on the flat chart uniform in [-2, 2]^2. Degenerate draws are
rejected and resampled up to MAX_RETRIES times, after which GenerationFailed
is raised. Trial i of a run uses the independent stream seeded by (seed, i),
so serial and parallel execution see identical scenes.
"""

from __future__ import annotations

import math

import numpy as np

from . import forms
from .curves import Conic, DegreeNCurve, conic_through_five, curve_residual, intersect_curve_geodesic, monomial_exponents
from .errors import DegenerateInput, GenerationFailed, GeomcrossError
from .forms import Geometry, gsin, lift_to_surface
from .incidence import (
    OrientedGeodesic,
    Pencil,
    arc_position,
    cross_ratio_pencil,
    cross_ratio_points,
    cross_ratio_positions,
    geodesic_through,
    perspectivity,
    tangent_basis,
)
from .projection import ProjectionPlane, hemisphere_normalize, project_point
from .scenes import Assertion, Scene
from .theorems import (
    CevianSextuple,
    Triangle,
    butterfly_defect,
    carnot_n_product,
    carnot_product,
    chasles_deviation,
    menelaus_product,
    transversal_points,
)

MAX_RETRIES = 64
SUITE_KINDS = (
    "cross-ratio",
    "pencil",
    "projection",
    "menelaus",
    "carnot",
    "chasles",
    "butterfly",
    "carnot-n",
)

_SEED_MASK = (1 << 63) - 1


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent, reproducible stream for trial `index` of a run."""
    return np.random.default_rng([int(seed) & _SEED_MASK, int(index)])


def random_point(g: Geometry, rng: np.random.Generator) -> np.ndarray:
    if g.curvature == 1:
        v = rng.standard_normal(3)
        return v / np.linalg.norm(v)
    if g.curvature == -1:
        r = rng.uniform(0.0, 2.0)
        th = rng.uniform(0.0, 2.0 * math.pi)
        return np.array([math.sinh(r) * math.cos(th), math.sinh(r) * math.sin(th), math.cosh(r)])
    return np.array([rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), 1.0])


def random_geodesic(g: Geometry, rng: np.random.Generator) -> OrientedGeodesic:
    for _ in range(16):
        p, q = random_point(g, rng), random_point(g, rng)
        try:
            return geodesic_through(g, p, q, tol=1e-3)
        except DegenerateInput:
            continue
    raise DegenerateInput("could not sample a geodesic")


def _sample_positions(g: Geometry, rng, count: int, lo=-2.0, hi=2.0, sep=0.05):
    """Distinct arc positions with pairwise gsin separation (non-antipodal on the sphere)."""
    for _ in range(32):
        ts = rng.uniform(lo, hi, size=count)
        ok = all(
            abs(gsin(g, ts[j] - ts[i])) > sep
            for i in range(count)
            for j in range(i + 1, count)
        )
        if ok:
            return [float(t) for t in ts]
    raise DegenerateInput("could not sample separated arc positions")


def random_triangle(g: Geometry, rng: np.random.Generator) -> Triangle:
    for _ in range(32):
        a, b, c = (random_point(g, rng) for _ in range(3))
        try:
            dmax = 2.4 if g.curvature == 1 else 6.0
            d = (forms.distance(g, a, b), forms.distance(g, b, c), forms.distance(g, c, a))
            if min(d) < 0.3 or max(d) > dmax:
                continue
            tri = Triangle(g, a, b, c)
            if tri.side_a.residual(a) < 0.05:
                continue
            return tri
        except GeomcrossError:
            continue
    raise DegenerateInput("could not sample a well-conditioned triangle")


def random_admissible_line(
    tri: Triangle, rng: np.random.Generator, margin: float = 1e-6, cut_margin: float = 0.0
) -> OrientedGeodesic:
    """An auxiliary line meeting all three side lines away from the vertices (<= 32 draws).

    `cut_margin` additionally bounds every gsin factor of the cuts away from
    zero, which keeps the Menelaus/Lemma ratios well conditioned.
    """
    g = tri.geometry
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    ends = (t_c_on_a, t_a_on_b, t_b_on_c)
    for _ in range(32):
        line = random_geodesic(g, rng)
        if min(line.residual(v) for v in (tri.a, tri.b, tri.c)) <= margin:
            continue
        try:
            cuts = transversal_points(tri, line)
        except GeomcrossError:
            continue
        if cut_margin > 0.0:
            try:
                ts = [
                    arc_position(side, p)
                    for side, p in zip((tri.side_a, tri.side_b, tri.side_c), cuts)
                ]
            except GeomcrossError:
                continue
            if any(
                abs(gsin(g, t)) < cut_margin or abs(gsin(g, end - t)) < cut_margin
                for t, end in zip(ts, ends)
            ):
                continue
        return line
    raise DegenerateInput("could not sample an admissible auxiliary line")


def _rel_diff(x: float, y: float) -> float:
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


# --- per-suite samplers -----------------------------------------------------
# Each returns (config, deviation). Degenerate draws raise and are resampled
# by sample_trial.


def _trial_cross_ratio(g: Geometry, rng):
    if g.curvature == 1:
        ts = _sample_positions(g, rng, 4, lo=-0.9 * math.pi, hi=0.9 * math.pi)
    else:
        ts = _sample_positions(g, rng, 4)
    line = random_geodesic(g, rng)
    pts = [line.point(t) for t in ts]
    cr = cross_ratio_positions(g, *ts)
    dev = 0.0
    # orientation flip leaves the cross-ratio unchanged
    flipped = cross_ratio_points(line.reversed(), *pts)
    dev = max(dev, _rel_diff(cr, flipped))
    # swapping the last two points inverts it
    perm = cross_ratio_positions(g, ts[0], ts[1], ts[3], ts[2])
    dev = max(dev, abs(perm * cr - 1.0))
    if g.curvature == 1:
        swapped = cross_ratio_points(line, -pts[0], pts[1], pts[2], pts[3])
        dev = max(dev, _rel_diff(cr, swapped))
    config = {"points": {k: p for k, p in zip("ABCD", pts)}, "cr": cr}
    return config, dev


def _off_line_point(g: Geometry, line: OrientedGeodesic, rng, margin=0.05):
    for _ in range(32):
        p = random_point(g, rng)
        if line.residual(p) > margin:
            return p
    raise DegenerateInput("could not sample a point off the line")


def _trial_pencil(g: Geometry, rng):
    if g.curvature == 1:
        ts = _sample_positions(g, rng, 4, lo=-1.2, hi=1.2)
    else:
        ts = _sample_positions(g, rng, 4)
    line = random_geodesic(g, rng)
    pts = [line.point(t) for t in ts]
    vertex = _off_line_point(g, line, rng)
    if g.curvature == 1:
        for p in pts:
            d = forms.distance(g, vertex, p)
            if min(d, math.pi - d) < 0.05:
                raise DegenerateInput("vertex too close to a quadruple point")
    cr = cross_ratio_positions(g, *ts)
    joins = tuple(geodesic_through(g, vertex, p) for p in pts)
    cr_pencil = cross_ratio_pencil(Pencil(vertex, joins))
    dev = _rel_diff(cr, cr_pencil)
    # perspectivity onto a second line through the same vertex pencil
    dst = random_geodesic(g, rng)
    if dst.residual(vertex) < 0.05:
        raise DegenerateInput("destination line passes near the apex")
    images = perspectivity(g, vertex, line, dst, pts)
    cr_img = cross_ratio_points(dst, *images)
    dev = max(dev, _rel_diff(cr, cr_img))
    config = {
        "points": {
            **{k: p for k, p in zip("ABCD", pts)},
            "P": vertex,
            **{f"{k}_img": p for k, p in zip("ABCD", images)},
        },
        "cr": cr,
    }
    return config, dev


def planar_cross_ratio(chart_pts) -> float:
    """Euclidean cross-ratio of four collinear chart points."""
    d = np.asarray(chart_pts[1], dtype=float) - np.asarray(chart_pts[0], dtype=float)
    norm = float(np.linalg.norm(d))
    if norm <= 1e-300:
        raise DegenerateInput("coincident chart points")
    d = d / norm
    t = [float(np.dot(np.asarray(s) - chart_pts[0], d)) for s in chart_pts]
    return cross_ratio_positions(forms.EUCLIDEAN, *t)


def _trial_projection(g: Geometry, rng):
    if g.curvature == 1:
        # keep the quadruple inside one open hemisphere
        t0 = rng.uniform(-math.pi, math.pi)
        ts = [t0 + t for t in _sample_positions(g, rng, 4, lo=0.0, hi=2.0)]
        line = random_geodesic(g, rng)
        pts = [line.point(t) for t in ts]
        pole = forms.renormalize(g, np.mean(pts, axis=0))
        if min(float(np.dot(pole, p)) for p in pts) < 0.2:
            raise DegenerateInput("quadruple too spread for a stable hemisphere")
        pts = hemisphere_normalize(pts, pole)
        plane = ProjectionPlane(pole)
    elif g.curvature == -1:
        ts = _sample_positions(g, rng, 4)
        if rng.random() < 0.15:
            # exercise the continuity case: line passing within 1e-3 of the apex
            base = lift_to_surface(g, rng.uniform(-1e-3, 1e-3), rng.uniform(-1e-3, 1e-3))
            th = rng.uniform(0.0, 2.0 * math.pi)
            e1, e2 = tangent_basis(g, base)
            line = OrientedGeodesic(g, base, math.cos(th) * e1 + math.sin(th) * e2, check=False)
        else:
            line = random_geodesic(g, rng)
        pts = [line.point(t) for t in ts]
        plane = ProjectionPlane.z1()
    else:
        ts = _sample_positions(g, rng, 4)
        line = random_geodesic(g, rng)
        pts = [line.point(t) for t in ts]
        n = np.array([rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(0.5, 1.5)])
        if min(abs(float(np.dot(n, p))) for p in pts) < 0.2:
            raise DegenerateInput("projection plane nearly parallel to a ray")
        plane = ProjectionPlane(n)
    cr = cross_ratio_positions(g, *ts)
    images = [project_point(p, plane) for p in pts]
    cr_plane = planar_cross_ratio(images)
    dev = _rel_diff(cr, cr_plane)
    if g.curvature == -1:
        klein = [np.array([p[0] / p[2], p[1] / p[2]]) for p in pts]
        dev = max(dev, _rel_diff(cr, planar_cross_ratio(klein)))
    config = {
        "points": {k: p for k, p in zip("ABCD", pts)},
        "cr": cr,
        "cr_plane": cr_plane,
        "plane": plane,
    }
    return config, dev


def _trial_menelaus(g: Geometry, rng):
    tri = random_triangle(g, rng)
    line = random_admissible_line(tri, rng, margin=1e-3, cut_margin=0.02)
    a_l, b_l, c_l = transversal_points(tri, line)
    prod = menelaus_product(tri, a_l, b_l, c_l)
    config = {
        "points": {"A": tri.a, "B": tri.b, "C": tri.c, "Al": a_l, "Bl": b_l, "Cl": c_l},
        "triangle": tri,
        "product": prod,
    }
    return config, abs(prod + 1.0)


def menelaus_control(g: Geometry, rng):
    """Non-collinear side triple: returns (config, product, collinearity residual)."""
    tri = random_triangle(g, rng)
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    for _ in range(32):
        ta = rng.uniform(0.15, 0.85) * t_c_on_a
        tb = rng.uniform(0.15, 0.85) * t_a_on_b
        tc = rng.uniform(0.15, 0.85) * t_b_on_c
        a_l, b_l, c_l = tri.side_a.point(ta), tri.side_b.point(tb), tri.side_c.point(tc)
        try:
            through = geodesic_through(g, a_l, b_l)
        except DegenerateInput:
            continue
        residual = through.residual(c_l)
        if residual <= 1e-3:
            continue
        prod = menelaus_product(tri, a_l, b_l, c_l)
        return tri, (a_l, b_l, c_l), prod, residual
    raise DegenerateInput("could not sample a non-collinear control")


def _side_window(g: Geometry, rng, t_end: float, count: int):
    """Separated positions in the interior of a side segment."""
    ts = _sample_positions(g, rng, count, lo=0.12 * t_end, hi=0.88 * t_end, sep=0.02)
    return sorted(ts)


def sample_carnot_sextuple(g: Geometry, rng):
    """A triangle and six side points lying exactly on a fitted conic.

    Five points are sampled on the side lines; the conic through them is
    fitted and its second intersection with line AB supplies the sixth.
    """
    tri = random_triangle(g, rng)
    t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
    ta1, ta2 = _side_window(g, rng, t_c_on_a, 2)
    tb1, tb2 = _side_window(g, rng, t_a_on_b, 2)
    (tc1,) = _side_window(g, rng, t_b_on_c, 1)
    a1, a2 = tri.side_a.point(ta1), tri.side_a.point(ta2)
    b1, b2 = tri.side_b.point(tb1), tri.side_b.point(tb2)
    c1 = tri.side_c.point(tc1)
    conic = conic_through_five([a1, a2, b1, b2, c1])
    if conic.degenerate:
        raise DegenerateInput("sampled conic is degenerate")
    roots = intersect_curve_geodesic(conic, tri.side_c)
    cands = []
    for t in roots:
        gap = abs(gsin(g, t - tc1))
        if gap <= 1e-6:
            continue
        if abs(gsin(g, t)) < 1e-3 or abs(gsin(g, t_b_on_c - t)) < 1e-3:
            continue
        cands.append(t)
    if not cands:
        raise DegenerateInput("no usable second intersection with line AB")
    tc2 = min(cands, key=abs)
    c2 = tri.side_c.point(tc2)
    sext = CevianSextuple(tri, a1, a2, b1, b2, c1, c2)
    return sext, conic


def _trial_carnot(g: Geometry, rng):
    sext, conic = sample_carnot_sextuple(g, rng)
    prod = carnot_product(sext)
    tri = sext.triangle
    config = {
        "points": {
            "A": tri.a,
            "B": tri.b,
            "C": tri.c,
            "A1": sext.a1,
            "A2": sext.a2,
            "B1": sext.b1,
            "B2": sext.b2,
            "C1": sext.c1,
            "C2": sext.c2,
        },
        "curves": {"conic": conic},
        "sextuple": sext,
        "product": prod,
    }
    return config, abs(prod - 1.0)


def carnot_near_miss(g: Geometry, rng, min_shift: float = 1e-2):
    """Perturb one conic sextuple point along its side; returns (sextuple, conic, shift).

    Requires the conic to cross the side transversally at the perturbed point;
    a tangential crossing would leave the moved point numerically on the conic
    and produce a weak control.
    """
    sext, conic = sample_carnot_sextuple(g, rng)
    tri = sext.triangle
    ta1 = arc_position(tri.side_a, sext.a1)
    df = abs(float(np.dot(conic.gradient(sext.a1), tri.side_a.tangent(ta1))))
    scale = conic.coeff_scale() * max(float(np.max(np.abs(sext.a1))), 1.0)
    if df < 1e-2 * scale:
        raise DegenerateInput("conic is nearly tangent to the side at the marked point")
    shift = rng.uniform(min_shift, 5.0 * min_shift) * (1.0 if rng.random() < 0.5 else -1.0)
    moved = tri.side_a.point(ta1 + shift)
    t_c_on_a = arc_position(tri.side_a, tri.c)
    if abs(gsin(g, ta1 + shift)) < 0.02 or abs(gsin(g, t_c_on_a - ta1 - shift)) < 0.02:
        raise DegenerateInput("perturbed point too close to a vertex")
    if abs(gsin(g, ta1 + shift - arc_position(tri.side_a, sext.a2))) < 1e-3:
        raise DegenerateInput("perturbed point collides with its side partner")
    moved_sext = CevianSextuple(tri, moved, sext.a2, sext.b1, sext.b2, sext.c1, sext.c2)
    return moved_sext, conic, shift


def random_ellipse_conic(g: Geometry, rng):
    """A non-degenerate conic built from a random chart ellipse, plus its sampler.

    Returns (conic, point_at) where point_at(theta) is an exact surface point
    of the conic. For the hyperboloid the ellipse stays inside the Klein disk.
    """
    if g.curvature == -1:
        cx, cy = rng.uniform(-0.25, 0.25, size=2)
        axes = rng.uniform(0.15, 0.45, size=2)
        if math.hypot(cx, cy) + float(np.max(axes)) > 0.9:
            raise DegenerateInput("ellipse leaks out of the Klein disk")
    else:
        cx, cy = rng.uniform(-0.6, 0.6, size=2)
        axes = rng.uniform(0.2, 0.8, size=2)
    if float(np.min(axes)) < 0.3 * float(np.max(axes)):
        raise DegenerateInput("ellipse too eccentric for stable sampling")
    phi = rng.uniform(0.0, math.pi)
    rot = np.array([[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]])
    shape = rot @ np.diag(1.0 / axes**2) @ rot.T
    center = np.array([cx, cy])
    q = np.zeros((3, 3))
    q[:2, :2] = shape
    q[:2, 2] = -shape @ center
    q[2, :2] = q[:2, 2]
    q[2, 2] = float(center @ shape @ center) - 1.0
    conic = Conic(q)

    def point_at(theta: float) -> np.ndarray:
        s = center + rot @ np.array([axes[0] * math.cos(theta), axes[1] * math.sin(theta)])
        return lift_to_surface(g, float(s[0]), float(s[1]))

    return conic, point_at


def _separated_angles(rng, count: int, sep: float = 0.2):
    # place the angles gap-by-gap so every circular separation exceeds `sep`
    slack = 2.0 * math.pi - count * (sep + 1e-6)
    if slack <= 0.0:
        raise DegenerateInput("requested angular separation is infeasible")
    gaps = rng.dirichlet(np.ones(count)) * slack
    th = rng.uniform(0.0, 2.0 * math.pi) + np.cumsum(gaps + sep + 1e-6)
    order = rng.permutation(count)
    return [float(th[i] % (2.0 * math.pi)) for i in order]


def _trial_chasles(g: Geometry, rng):
    conic, point_at = random_ellipse_conic(g, rng)
    angles = _separated_angles(rng, 6)
    pts = [point_at(t) for t in angles]
    dev = chasles_deviation(g, conic, *pts)
    names = ["A", "B", "C", "D", "E", "F"]
    config = {
        "points": dict(zip(names, pts)),
        "curves": {"conic": conic},
        "deviation": dev,
    }
    return config, dev


def chasles_perturbed(g: Geometry, rng, shift: float = 0.05):
    """Chasles configuration with one point moved off the conic by `shift` arc.

    The move is along the conic's normal direction within the surface tangent
    plane, so the whole displacement leaves the conic (a tangential move would
    slide along it and produce a weak control). Wider point separation keeps
    the two pencil vertices from nearly coinciding, which would also mask the
    perturbation.
    """
    conic, point_at = random_ellipse_conic(g, rng)
    angles = _separated_angles(rng, 6, sep=0.6)
    pts = [point_at(t) for t in angles]
    p = pts[0]
    grad = conic.gradient(p)
    e1, e2 = tangent_basis(g, p)
    w = forms.bilinear_form(g, grad, e1) * e1 + forms.bilinear_form(g, grad, e2) * e2
    ww = forms.bilinear_form(g, w, w)
    if ww <= 1e-12:
        raise DegenerateInput("conic has no normal direction at the point")
    line = OrientedGeodesic(g, p, w / math.sqrt(ww), check=False)
    moved = line.point(shift)
    if curve_residual(conic, moved) < 1e-4:
        raise DegenerateInput("perturbation slid along the conic")
    pts[0] = moved
    return conic, pts


def _chord_through(g: Geometry, conic: Conic, m: np.ndarray, direction_angle: float):
    """Chord of the conic along the given tangent direction at m; returns (A, B, line)."""
    e1, e2 = tangent_basis(g, m)
    w = math.cos(direction_angle) * e1 + math.sin(direction_angle) * e2
    line = OrientedGeodesic(g, m, w, check=False)
    roots = intersect_curve_geodesic(conic, line)
    if g.curvature == 1:
        roots = [t for t in roots if -math.pi / 2 < t < math.pi / 2]
    neg = [t for t in roots if t < -1e-6]
    pos = [t for t in roots if t > 1e-6]
    if len(neg) != 1 or len(pos) != 1:
        raise DegenerateInput("chord does not cut the conic once on each side")
    return line.point(neg[0]), line.point(pos[0]), line


def _trial_butterfly(g: Geometry, rng):
    conic, point_at = random_ellipse_conic(g, rng)
    th1, th2 = _separated_angles(rng, 2, sep=0.6)
    p, q = point_at(th1), point_at(th2)
    pq = geodesic_through(g, p, q)
    t_q = arc_position(pq, q)
    m = pq.point(0.5 * t_q)
    e1, e2 = tangent_basis(g, m)
    w_pq = pq.tangent(0.5 * t_q)
    base_angle = math.atan2(
        forms.bilinear_form(g, w_pq, e2), forms.bilinear_form(g, w_pq, e1)
    )
    a1, a2 = rng.uniform(0.15, math.pi - 0.15, size=2)
    if abs(math.sin(a1 - a2)) < 0.1:
        raise DegenerateInput("butterfly chords nearly coincide")
    a_pt, b_pt, _ = _chord_through(g, conic, m, base_angle + a1)
    c_pt, d_pt, _ = _chord_through(g, conic, m, base_angle + a2)
    defect = butterfly_defect(g, conic, p, q, a_pt, b_pt, c_pt, d_pt)
    chord = abs(t_q)
    config = {
        "points": {"P": p, "Q": q, "A": a_pt, "B": b_pt, "C": c_pt, "D": d_pt},
        "curves": {"conic": conic},
        "chord": chord,
        "defect": defect,
    }
    return config, abs(defect) / chord


def _point_off_sides(g: Geometry, tri: Triangle, rng, margin=0.1):
    for _ in range(32):
        p = random_point(g, rng)
        if min(tri.side_a.residual(p), tri.side_b.residual(p), tri.side_c.residual(p)) > margin:
            return p
    raise DegenerateInput("could not sample a point clear of the side lines")


def sample_degree_n_points(g: Geometry, rng, n: int):
    """Triangle plus 3n side points lying exactly on a degree-n curve.

    n=1 uses a transversal line, n=2 the Carnot conic construction, n=3 fits
    a cubic through eight side samples and one generic anchor and recovers
    the ninth side point by intersection.
    """
    if n == 1:
        tri = random_triangle(g, rng)
        line = random_admissible_line(tri, rng, margin=1e-3, cut_margin=0.02)
        a_l, b_l, c_l = transversal_points(tri, line)
        curve = DegreeNCurve(1, line.plane_normal())
        return tri, [a_l, b_l, c_l], curve
    if n == 2:
        sext, conic = sample_carnot_sextuple(g, rng)
        pts = [sext.a1, sext.a2, sext.b1, sext.b2, sext.c1, sext.c2]
        return sext.triangle, pts, conic.as_degree_n()
    if n == 3:
        tri = random_triangle(g, rng)
        t_c_on_a, t_a_on_b, t_b_on_c = tri.side_positions()
        tas = _side_window(g, rng, t_c_on_a, 3)
        tbs = _side_window(g, rng, t_a_on_b, 3)
        tcs = _side_window(g, rng, t_b_on_c, 2)
        a_pts = [tri.side_a.point(t) for t in tas]
        b_pts = [tri.side_b.point(t) for t in tbs]
        c_pts = [tri.side_c.point(t) for t in tcs]
        anchor = _point_off_sides(g, tri, rng)
        samples = a_pts + b_pts + c_pts + [anchor]
        expos = monomial_exponents(3)
        rows = np.array(
            [[p[0] ** a * p[1] ** b * p[2] ** c for a, b, c in expos] for p in samples]
        )
        rows /= np.max(np.abs(rows), axis=1, keepdims=True)
        _, s, vt = np.linalg.svd(rows)
        if s[-2] <= 1e-8 * s[0]:
            raise DegenerateInput("cubic through the samples is not unique")
        cubic = DegreeNCurve(3, vt[-1])
        for p in samples:
            if curve_residual(cubic, p) > 1e-9:
                raise DegenerateInput("cubic fit did not interpolate")
        roots = intersect_curve_geodesic(cubic, tri.side_c)
        cands = []
        for t in roots:
            if min(abs(gsin(g, t - tc)) for tc in tcs) <= 1e-6:
                continue
            if abs(gsin(g, t)) < 0.02 or abs(gsin(g, t_b_on_c - t)) < 0.02:
                continue
            # reject near-tangent crossings: the root location is ill-determined
            p_t = tri.side_c.point(t)
            df = abs(float(np.dot(cubic.gradient(p_t), tri.side_c.tangent(t))))
            scale = cubic.coeff_scale() * max(float(np.max(np.abs(p_t))), 1.0) ** 2
            if df < 1e-3 * scale:
                continue
            cands.append(t)
        if not cands:
            raise DegenerateInput("no usable third intersection with line AB")
        tc3 = min(cands, key=abs)
        c_pts.append(tri.side_c.point(tc3))
        return tri, a_pts + b_pts + c_pts, cubic
    raise DegenerateInput("degree-n sampling supports n in {1, 2, 3}")


def _trial_carnot_n(g: Geometry, rng, n: int):
    tri, pts, curve = sample_degree_n_points(g, rng, n)
    prod = carnot_n_product(tri, pts, n)
    names = ["A", "B", "C"]
    names += [f"A{k+1}" for k in range(n)] + [f"B{k+1}" for k in range(n)] + [f"C{k+1}" for k in range(n)]
    config = {
        "points": dict(zip(names, [tri.a, tri.b, tri.c] + list(pts))),
        "curves": {"curve": curve},
        "degree": n,
        "product": prod,
    }
    return config, abs(prod - (-1.0) ** n)


def sample_trial(g: Geometry, kind: str, rng, degree: int = 3):
    """One configuration and its deviation; resamples degenerate draws.

    Returns (config, deviation, retries). Raises GenerationFailed after
    MAX_RETRIES rejected draws.
    """
    if kind not in SUITE_KINDS:
        raise ValueError(f"unknown suite kind {kind!r}")
    last = None
    for attempt in range(MAX_RETRIES):
        try:
            if kind == "cross-ratio":
                config, dev = _trial_cross_ratio(g, rng)
            elif kind == "pencil":
                config, dev = _trial_pencil(g, rng)
            elif kind == "projection":
                config, dev = _trial_projection(g, rng)
            elif kind == "menelaus":
                config, dev = _trial_menelaus(g, rng)
            elif kind == "carnot":
                config, dev = _trial_carnot(g, rng)
            elif kind == "chasles":
                config, dev = _trial_chasles(g, rng)
            elif kind == "butterfly":
                config, dev = _trial_butterfly(g, rng)
            else:
                config, dev = _trial_carnot_n(g, rng, degree)
            return config, dev, attempt
        except GeomcrossError as exc:
            last = exc
    raise GenerationFailed(f"no valid {kind} configuration after {MAX_RETRIES} draws: {last}")


_SCENE_ASSERTIONS = {
    "cross-ratio": lambda cfg: [Assertion("cross_ratio", ("A", "B", "C", "D"), cfg["cr"], 1e-9)],
    "pencil": lambda cfg: [
        Assertion("cross_ratio_pencil", ("P", "A", "B", "C", "D"), cfg["cr"], 1e-9),
        Assertion("cross_ratio", ("A_img", "B_img", "C_img", "D_img"), cfg["cr"], 1e-9),
    ],
    "projection": lambda cfg: [
        Assertion("cross_ratio", ("A", "B", "C", "D"), cfg["cr_plane"], 1e-9)
    ],
    "menelaus": lambda cfg: [
        Assertion("menelaus_product", ("A", "B", "C", "Al", "Bl", "Cl"), -1.0, 1e-8)
    ],
    "carnot": lambda cfg: [
        Assertion(
            "carnot_product",
            ("A", "B", "C", "A1", "A2", "B1", "B2", "C1", "C2"),
            1.0,
            1e-7,
        )
    ],
    "chasles": lambda cfg: [
        Assertion("chasles_deviation", ("conic", "A", "B", "C", "D", "E", "F"), 0.0, 1e-8)
    ],
    "butterfly": lambda cfg: [
        Assertion(
            "butterfly_defect",
            ("conic", "P", "Q", "A", "B", "C", "D"),
            0.0,
            1e-8 * max(1.0, cfg["chord"]),
        )
    ],
    "carnot-n": lambda cfg: [
        Assertion(
            "carnot_n_product",
            tuple(cfg["points"].keys()),
            (-1.0) ** cfg["degree"],
            1e-6,
        )
    ],
}


def generate_scene(g: Geometry, kind: str, seed: int, degree: int = 3) -> Scene:
    """Deterministic named scene for (geometry, kind, seed)."""
    rng = trial_rng(seed, 0)
    config, dev, retries = sample_trial(g, kind, rng, degree=degree)
    scene = Scene(
        geometry=g,
        points={k: np.asarray(v, dtype=float) for k, v in config["points"].items()},
        curves=dict(config.get("curves", {})),
        assertions=_SCENE_ASSERTIONS[kind](config),
        metadata={"suite": kind, "seed": int(seed), "retries": retries, "deviation": dev},
    )
    scene.validate()
    return scene
