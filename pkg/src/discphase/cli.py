"""Command-line interface: JSON reports on stdout, diagnostics on stderr.

Exit codes: 0 success/certified, 1 certification failed or inconclusive,
2 invalid input, 3 numerical failure.  Reports carry a matching "status"
field; identical inputs produce byte-identical output (floats are printed
in shortest round-trip form).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .blaschke import (
    BlaschkeProduct,
    CircleGrid,
    ExplicitPoints,
    LineSegmentGrid,
    ModulusSamples,
    modulus_samples,
)
from .counterexamples import (
    StripMap,
    finite_set_pair,
    function_expr_from_json,
    function_expr_to_json,
    inverse_points_demo,
    perpendicular_lines_pair,
    rational_angle_pair,
    two_circle_right_angle_pair,
)
from .errors import DiscPhaseError, IdenticalCircles
from .geometry import (
    Circle,
    PairKind,
    PresumedIrrational,
    RationalMultipleOfPi,
    UNIT_CIRCLE,
    classify_angle,
    classify_pair,
)
from .outer import BoundaryModulus
from .retrieval import (
    ModulusData,
    RetrievalConfig,
    certify_finite_points,
    retrieve_two_circles,
    verify_equal_modulus,
)

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

_STATUS = {
    EXIT_OK: "ok",
    EXIT_INCONCLUSIVE: "inconclusive",
    EXIT_INVALID: "invalid-input",
    EXIT_NUMERICAL: "numerical-failure",
}


def _emit(report: dict, code: int) -> int:
    report = {"status": _STATUS[code], **report}
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return code


def _fail(code: int, message: str, **extra) -> int:
    print(f"error: {message}", file=sys.stderr)
    return _emit({"error": message, **extra}, code)


def _parse_circle(text: str) -> Circle:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"circle must be 'cx,cy,r', got {text!r}")
    cx, cy, r = (float(p) for p in parts)
    return Circle(complex(cx, cy), r)


def _load_expr(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return function_expr_from_json(json.load(fh))


def _load_blaschke(path: str) -> BlaschkeProduct:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("type") != "blaschke":
        raise ValueError(f"{path}: descriptor type {obj.get('type')!r} is not 'blaschke'")
    return BlaschkeProduct.from_json(obj)


def _angle_class_json(ac) -> dict:
    if isinstance(ac, RationalMultipleOfPi):
        return {
            "kind": "rational_multiple_of_pi",
            "p": ac.p,
            "q": ac.q,
            "residual": ac.residual,
        }
    assert isinstance(ac, PresumedIrrational)
    return {
        "kind": "presumed_irrational",
        "best_q": ac.best_q,
        "best_residual": ac.best_residual,
    }


def cmd_classify(args) -> int:
    try:
        c1 = _parse_circle(args.c1)
        c2 = _parse_circle(args.c2)
    except ValueError as exc:
        return _fail(EXIT_INVALID, str(exc))
    for label, c in (("c1", c1), ("c2", c2)):
        if not c.inside_unit_disc:
            return _fail(EXIT_INVALID, f"{label} is not contained in the unit disc")
    try:
        config = classify_pair(c1, c2)
    except IdenticalCircles as exc:
        return _fail(EXIT_INVALID, str(exc))
    report: dict = {"command": "classify", "configuration": config.kind.value}
    if config.kind is PairKind.INTERSECTING:
        ac = classify_angle(config.angle)
        report["angle"] = config.angle
        report["angle_class"] = _angle_class_json(ac)
        if isinstance(ac, RationalMultipleOfPi):
            report["verdict"] = "non-unique (counterexamples exist)"
        else:
            report["verdict"] = "unique (under irrationality detection policy)"
    else:
        report["verdict"] = "unique up to unimodular constant"
    return _emit(report, EXIT_OK)


def cmd_retrieve(args) -> int:
    try:
        boundary = BoundaryModulus.from_csv(args.boundary)
        inner = ModulusSamples.from_csv(args.inner)
        r = float(args.r)
        if not 0.0 < r < 1.0:
            raise ValueError(f"--r must lie in (0, 1), got {r!r}")
        if len(inner) != boundary.n:
            raise ValueError(
                f"grid sizes differ: boundary has {boundary.n} samples, "
                f"inner circle has {len(inner)}"
            )
        data_t = ModulusData(
            UNIT_CIRCLE, np.exp(1j * boundary.angles), boundary.values
        )
        data_r = ModulusData(Circle(0.0, r), inner.points, inner.moduli)
        config = RetrievalConfig(degree_max=args.degree_max, residual_tol=args.tol)
    except (ValueError, OSError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    try:
        result = retrieve_two_circles(data_t, data_r, config)
    except DiscPhaseError as exc:
        return _fail(
            EXIT_NUMERICAL, str(exc), stage=exc.stage, kind=type(exc).__name__
        )
    outer_csv = None
    if args.out:
        out_path = Path(args.out)
        outer_csv = str(out_path.with_name(out_path.stem + "_outer.csv"))
        result.outer.boundary.to_csv(outer_csv)
    report = {"command": "retrieve", **result.to_json(outer_csv=outer_csv)}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"status": _STATUS[EXIT_OK], **report}, fh, indent=2)
            fh.write("\n")
    return _emit(report, EXIT_OK)


def cmd_certify(args) -> int:
    try:
        b_f = _load_blaschke(args.f)
        b_g = _load_blaschke(args.g)
        r = float(args.r)
        if not 0.0 < r < 1.0:
            raise ValueError(f"--r must lie in (0, 1), got {r!r}")
        k = int(args.points)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    bound = 2 * b_f.degree + 2 * b_g.degree - 1
    if k <= bound:
        return _fail(
            EXIT_INVALID,
            f"--points {k} cannot exceed the agreement bound: the criterion needs "
            f"more than 2M+2N-1 = {bound} distinct points",
            bound=bound,
        )
    pts = r * np.exp(2j * np.pi * np.arange(k) / k)
    try:
        cert = certify_finite_points(b_f, b_g, pts, tol=args.tol)
    except DiscPhaseError as exc:
        return _fail(EXIT_NUMERICAL, str(exc), kind=type(exc).__name__)
    report = {"command": "certify", "certificate": cert.to_json()}
    return _emit(report, EXIT_OK if cert.equal_on_circle else EXIT_INCONCLUSIVE)


def _parse_point_set(spec: str, n: int):
    kind, _, rest = spec.partition(":")
    if kind == "circle":
        return CircleGrid(_parse_circle(rest), n)
    if kind == "segment":
        parts = rest.split(",")
        if len(parts) != 4:
            raise ValueError(f"segment must be 'x1,y1,x2,y2', got {rest!r}")
        x1, y1, x2, y2 = (float(p) for p in parts)
        return LineSegmentGrid(complex(x1, y1), complex(x2, y2), n)
    if kind == "file":
        points = []
        with open(rest, "r", encoding="utf-8") as fh:
            header = fh.readline().strip()
            if header != "re,im":
                raise ValueError(f"{rest}: line 1: expected header 're,im', got {header!r}")
            for lineno, line in enumerate(fh, start=2):
                if not line.strip():
                    continue
                parts = line.strip().split(",")
                if len(parts) != 2:
                    raise ValueError(f"{rest}: line {lineno}: expected 2 fields")
                points.append(complex(float(parts[0]), float(parts[1])))
        return ExplicitPoints(tuple(points))
    raise ValueError(
        f"set spec must be 'circle:cx,cy,r', 'segment:x1,y1,x2,y2' or 'file:path', got {spec!r}"
    )


def cmd_verify(args) -> int:
    try:
        f = _load_expr(args.f)
        g = _load_expr(args.g)
        point_set = _parse_point_set(args.set, args.n)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    try:
        rep = verify_equal_modulus(f, g, point_set, tol=args.tol)
    except DiscPhaseError as exc:
        return _fail(EXIT_NUMERICAL, str(exc), kind=type(exc).__name__)
    report = {"command": "verify", "report": rep.to_json()}
    return _emit(report, EXIT_OK if rep.within_tol else EXIT_INCONCLUSIVE)


def cmd_sample(args) -> int:
    try:
        f = _load_expr(args.f)
        circle = _parse_circle(args.circle)
        n = int(args.n)
        if n < 1:
            raise ValueError("--n must be positive")
        grid = CircleGrid(circle, n, phase_offset=args.phase_offset)
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    try:
        samples = modulus_samples(f, grid)
    except DiscPhaseError as exc:
        return _fail(EXIT_NUMERICAL, str(exc), kind=type(exc).__name__)
    is_boundary_grid = (
        abs(circle.center) == 0.0 and circle.radius == 1.0 and args.phase_offset == 0.0
    )
    if is_boundary_grid:
        # unit-circle data uses the t,modulus format consumed by `retrieve`
        t = 2.0 * np.pi * np.arange(n) / n
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("t,modulus\n")
            for tk, m in zip(t, samples.moduli):
                fh.write(f"{float(tk)!r},{float(m)!r}\n")
        fmt = "t,modulus"
    else:
        samples.to_csv(args.out)
        fmt = "index,re,im,modulus"
    report = {
        "command": "sample",
        "n": n,
        "format": fmt,
        "circle": circle.to_json(),
        "out": args.out,
    }
    return _emit(report, EXIT_OK)


def _pair_verification(f, g, sets: dict, witness_points) -> dict:
    out: dict = {"advertised_sets": {}}
    worst = 0.0
    for name, grid in sets.items():
        rep = verify_equal_modulus(f, g, grid)
        out["advertised_sets"][name] = rep.to_json()
        worst = max(worst, rep.max_deviation)
    out["max_deviation_on_advertised_sets"] = worst
    rep = verify_equal_modulus(f, g, witness_points)
    out["witness"] = {
        "point": [rep.worst_point.real, rep.worst_point.imag],
        "deviation": rep.max_deviation,
    }
    return out


def _unimodularity(expr, grid) -> dict:
    pts = grid.points()
    dev = float(np.abs(np.abs(np.asarray(expr(pts), dtype=complex)) - 1.0).max())
    return {"max_unimodularity_deviation": dev, "n_points": len(pts)}


def cmd_example(args) -> int:
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        return _fail(EXIT_INVALID, str(exc))
    name = args.name
    n = 512
    try:
        if name == "perpendicular_lines" or name == "rational_angle":
            if name == "perpendicular_lines":
                k, f, g = 2, *perpendicular_lines_pair()
            else:
                k = args.k
                f, g = rational_angle_pair(k, args.c1, args.c2)
            sets = {
                f"line_{m}": LineSegmentGrid(
                    -0.9 * np.exp(1j * np.pi * m / k), 0.9 * np.exp(1j * np.pi * m / k), n
                )
                for m in range(k)
            }
            extra = _pair_verification(f, g, sets, CircleGrid(Circle(0.0, 0.5), n))
            pair = (f, g)
        elif name == "finite_set":
            r = args.r
            xs = tuple(r * np.exp(2j * np.pi * np.arange(args.n_x) / args.n_x))
            u = BlaschkeProduct(1.0, (0.2,))
            v = BlaschkeProduct(1.0, (0.6,))
            f, g = finite_set_pair(xs, args.alpha, u, v)
            extra = _pair_verification(
                f, g, {"unit_circle": CircleGrid(UNIT_CIRCLE, n)}, CircleGrid(Circle(0.0, 0.5), n)
            )
            alpha = complex(args.alpha)
            extra["finite_set"] = {
                "points": [[x.real, x.imag] for x in xs],
                "max_value_deviation": max(
                    float(abs(f(x) - alpha)) for x in xs
                )
                + max(float(abs(g(x) - alpha)) for x in xs),
            }
            pair = (f, g)
        elif name == "right_angle_circles":
            built = two_circle_right_angle_pair(args.c1, args.c2)
            sets = {
                "circle1": CircleGrid(built.circle1, n),
                "circle2": CircleGrid(built.circle2, n),
            }
            extra = _pair_verification(built.f, built.g, sets, CircleGrid(Circle(0.0, 0.45), n))
            extra["circles"] = [built.circle1.to_json(), built.circle2.to_json()]
            extra["base_angle"] = built.base_angle
            pair = (built.f, built.g)
        elif name == "strip":
            strip = StripMap()
            edge0 = ExplicitPoints(tuple(np.linspace(-3.0, 3.0, n).astype(complex)))
            edge1 = ExplicitPoints(tuple(1j + np.linspace(-3.0, 3.0, n)))
            interior = ExplicitPoints(
                tuple(
                    complex(x, y)
                    for y in 0.1 + 0.8 * np.arange(24) / 24
                    for x in np.linspace(-2.0, 2.0, 21)
                )
            )
            inside = np.abs(strip(interior.points()))
            extra = {
                "edge_im0": _unimodularity(strip, edge0),
                "edge_im1": _unimodularity(strip, edge1),
                "interior_max_modulus": float(inside.max()),
                "maps_strip_into_disc": bool(inside.max() < 1.0),
            }
            pair = (strip, None)
        elif name == "inverse_points":
            rep = inverse_points_demo(n_samples=n)
            extra = {"report": rep.to_json()}
            pair = (None, None)
        else:
            return _fail(EXIT_INVALID, f"unknown example {name!r}")
    except (ValueError, DiscPhaseError) as exc:
        code = EXIT_INVALID if isinstance(exc, ValueError) else EXIT_NUMERICAL
        return _fail(code, str(exc))

    written = []
    for label, expr in zip(("f", "g"), pair):
        if expr is None:
            continue
        path = out_dir / f"{label}.json"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(function_expr_to_json(expr), fh, indent=2)
            fh.write("\n")
        written.append(str(path))
    report = {"command": "example", "name": name, "files": written, **extra}
    report_path = out_dir / "report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump({"status": _STATUS[EXIT_OK], **report}, fh, indent=2)
        fh.write("\n")
    report["report_file"] = str(report_path)
    return _emit(report, EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discphase",
        description="Modulus-only reconstruction and uniqueness certificates on the unit disc",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a two-circle configuration")
    p.add_argument("--c1", required=True, help="first circle as cx,cy,r")
    p.add_argument("--c2", required=True, help="second circle as cx,cy,r")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("retrieve", help="reconstruct Blaschke x outer from two modulus files")
    p.add_argument("--boundary", required=True, help="CSV (t,modulus) on the unit circle")
    p.add_argument("--inner", required=True, help="CSV (index,re,im,modulus) on the inner circle")
    p.add_argument("--r", required=True, type=float, help="inner circle radius in (0,1)")
    p.add_argument("--degree-max", type=int, default=8, dest="degree_max")
    p.add_argument("--tol", type=float, default=1e-7, help="residual tolerance")
    p.add_argument("--out", default=None, help="write result JSON (plus outer CSV) here")
    p.set_defaults(func=cmd_retrieve)

    p = sub.add_parser("certify", help="finite-point equal-modulus certificate")
    p.add_argument("--f", required=True, help="blaschke descriptor JSON")
    p.add_argument("--g", required=True, help="blaschke descriptor JSON")
    p.add_argument("--r", required=True, type=float)
    p.add_argument("--points", required=True, type=int, help="number of circle points")
    p.add_argument("--tol", type=float, default=1e-9, help="modulus agreement tolerance")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="max modulus gap of two descriptors on a set")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--set", required=True, help="circle:cx,cy,r | segment:x1,y1,x2,y2 | file:path")
    p.add_argument("--n", type=int, default=256, help="grid size for circle/segment sets")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="sample |f| on a circle grid to CSV")
    p.add_argument("--f", required=True)
    p.add_argument("--circle", required=True, help="cx,cy,r")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--phase-offset", type=float, default=0.0, dest="phase_offset")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("example", help="write a generated function family plus report")
    p.add_argument(
        "name",
        choices=[
            "perpendicular_lines",
            "rational_angle",
            "finite_set",
            "right_angle_circles",
            "strip",
            "inverse_points",
        ],
    )
    p.add_argument("--k", type=int, default=3, help="rational_angle: number of lines")
    p.add_argument("--c1", type=float, default=2.0)
    p.add_argument("--c2", type=float, default=3.0)
    p.add_argument("--r", type=float, default=0.5, help="finite_set: circle radius for X")
    p.add_argument("--n-x", type=int, default=2, dest="n_x", help="finite_set: size of X")
    p.add_argument("--alpha", type=complex, default=0.3, help="finite_set: common value")
    p.add_argument("--out-dir", required=True, dest="out_dir")
    p.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
