"""Command-line harness: verify suites, generate/check scenes, export plot data.

Exit codes: 0 all checks passed, 1 any predicate/assertion failure,
2 usage or parse/validation errors.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .config import DEFAULT_TRIALS
from .errors import GeomcrossError, ParseError, ValidationError
from .forms import geometry_from_name
from .generators import SUITE_KINDS, generate_scene
from .projection import ProjectionPlane, project_point, pushforward_curve
from .scenes import Scene, check_scene
from .suites import run_suite, write_report_csv

GEOMETRIES = ("spherical", "euclidean", "hyperbolic")


def _parse_plane(spec: str) -> ProjectionPlane:
    spec = spec.strip()
    if spec == "z=1":
        return ProjectionPlane.z1()
    try:
        parts = [float(x) for x in spec.split(",")]
        if len(parts) != 3:
            raise ValueError
    except ValueError:
        raise ParseError(f"cannot parse plane {spec!r}; expected 'z=1' or 'nx,ny,nz'")
    return ProjectionPlane(parts)


def _cmd_verify(args) -> int:
    g = geometry_from_name(args.geometry)
    report = run_suite(
        args.suite, g, args.trials, args.seed, tolerance=args.tol, degree=args.degree
    )
    if args.report:
        write_report_csv(report, args.report)
    print(report.summary())
    return 0 if report.all_passed else 1


def _cmd_gen(args) -> int:
    g = geometry_from_name(args.geometry)
    scene = generate_scene(g, args.suite, args.seed, degree=args.degree)
    scene.save(args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_check(args) -> int:
    scene = Scene.load(args.scene)
    results = check_scene(scene)
    failed = 0
    for assertion, value, passed in results:
        status = "PASS" if passed else "FAIL"
        failed += 0 if passed else 1
        print(
            f"{status} {assertion.predicate}({', '.join(assertion.args)}) = "
            f"{value:.12g} (expect {assertion.expect:.12g} +/- {assertion.tol:.3g})"
        )
    print(f"{len(results) - failed}/{len(results)} assertions passed")
    return 0 if failed == 0 else 1


def _cmd_export_plot(args) -> int:
    from contourpy import LineType, contour_generator

    scene = Scene.load(args.scene)
    plane = _parse_plane(args.plane)
    rows = []
    chart_pts = {}
    for name, p in scene.points.items():
        s = project_point(p, plane)
        chart_pts[name] = s
        rows.append(("point", name, 0, 0, s[0], s[1]))
    if chart_pts:
        lo = np.min(np.array(list(chart_pts.values())), axis=0) - 1.0
        hi = np.max(np.array(list(chart_pts.values())), axis=0) + 1.0
    else:
        lo, hi = np.array([-2.0, -2.0]), np.array([2.0, 2.0])
    xs = np.linspace(lo[0], hi[0], args.samples)
    ys = np.linspace(lo[1], hi[1], args.samples)
    for name, curve in scene.curves.items():
        planar = pushforward_curve(curve, plane)
        grid = np.zeros((len(ys), len(xs)))
        for i, y in enumerate(ys):
            for j, x in enumerate(xs):
                grid[i, j] = planar((x, y))
        cg = contour_generator(x=xs, y=ys, z=grid, line_type=LineType.Separate)
        for seg_idx, segment in enumerate(cg.lines(0.0)):
            for vtx_idx, (s1, s2) in enumerate(segment):
                rows.append(("curve", name, seg_idx, vtx_idx, s1, s2))
    with open(args.out, "w") as fh:
        fh.write("kind,name,segment,vertex,s1,s2\n")
        for kind, name, seg, vtx, s1, s2 in rows:
            fh.write(f"{kind},{name},{seg},{vtx},{format(s1, '.17g')},{format(s2, '.17g')}\n")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geomcross",
        description="Randomized verification of cross-ratio and conic incidence "
        "theorems on the sphere, plane, and hyperboloid.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a randomized suite")
    p.add_argument("--suite", required=True, choices=SUITE_KINDS)
    p.add_argument("--geometry", required=True, choices=GEOMETRIES)
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--degree", type=int, default=3, choices=(1, 2, 3),
                   help="curve degree for the carnot-n suite")
    p.add_argument("--report", default=None, help="write per-trial CSV here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate a deterministic scene file")
    p.add_argument("--suite", required=True, choices=SUITE_KINDS)
    p.add_argument("--geometry", required=True, choices=GEOMETRIES)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--degree", type=int, default=3, choices=(1, 2, 3))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("check", help="run the assertions embedded in a scene file")
    p.add_argument("scene")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("export-plot", help="emit projected point/curve polylines as CSV")
    p.add_argument("scene")
    p.add_argument("--plane", default="z=1", help="'z=1' or 'nx,ny,nz'")
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GeomcrossError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
