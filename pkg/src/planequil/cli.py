"""Command line frontend.

Subcommands map one-to-one onto library capabilities: validate, analyze,
equilibria, evolute, region-map, roll and plot.  File formats are listed in
FORMATS.md.  Exit codes: 0 success, 2 invalid body input, 3 numerical
failure, 4 usage error.  Every error is also emitted as single-line JSON on
stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import equilibria as eq
from . import oblique as ob
from .body import (ConvexBody, PlanePoint, TrigPolySupport, constant_width,
                   recenter, validate)
from .errors import (DegenerateCircle, DegeneratePointEvolute, Mismatch,
                     NonPeriodic, NotConverged, NotConvex, ParseError,
                     PlanequilError, QuadratureDiverged, SchemaError,
                     VertexAtCenter)
from .evolute import find_cusps, sample_evolute
from .svg import render_scene
from .winding import evolute_winding

EXIT_OK = 0
EXIT_INVALID_BODY = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 4

_BODY_ERRORS = (NotConvex, ParseError, SchemaError)
_NUMERICAL_ERRORS = (NotConverged, Mismatch, QuadratureDiverged,
                     DegenerateCircle, DegeneratePointEvolute, NonPeriodic,
                     VertexAtCenter)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 4
        raise _UsageError(message)


def parse_body_spec(data: bytes) -> TrigPolySupport:
    """Parse the body-spec JSON: {"a0": x, "cos": [...], "sin": [...]}.

    Index i of the arrays holds the coefficient of cos((i+1) phi) and
    sin((i+1) phi).  Rejects NaN/Inf values and mismatched array lengths.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"input is not UTF-8: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}") from exc

    if not isinstance(obj, dict):
        raise SchemaError("top level must be a JSON object")
    for key in ("a0", "cos", "sin"):
        if key not in obj:
            raise SchemaError(f"missing required field {key!r}")
    a0 = obj["a0"]
    if not isinstance(a0, (int, float)) or isinstance(a0, bool):
        raise SchemaError("field 'a0' must be a number")
    cos_list, sin_list = obj["cos"], obj["sin"]
    for name, arr in (("cos", cos_list), ("sin", sin_list)):
        if not isinstance(arr, list) or any(
                not isinstance(v, (int, float)) or isinstance(v, bool) for v in arr):
            raise SchemaError(f"field {name!r} must be an array of numbers")
    if len(cos_list) != len(sin_list):
        raise SchemaError(
            f"'cos' and 'sin' must have equal length "
            f"({len(cos_list)} != {len(sin_list)})")
    values = [float(a0)] + [float(v) for v in cos_list + sin_list]
    if not all(math.isfinite(v) for v in values):
        raise SchemaError("all coefficients must be finite (no NaN/Inf)")
    return TrigPolySupport(float(a0), tuple(cos_list), tuple(sin_list))


def _load_body(path: str) -> ConvexBody:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read body spec {path!r}: {exc}") from exc
    return validate(parse_body_spec(data))


def _round12(obj):
    """Recursively clamp floats to 12 significant digits for stable output."""
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _emit(args, payload: str | bytes) -> None:
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    out = getattr(args, "out", None)
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()


def _json_dump(obj) -> str:
    return json.dumps(_round12(obj), sort_keys=True, separators=(",", ": "),
                      indent=2) + "\n"


def _parse_point(text: str) -> PlanePoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise _UsageError(f"expected 'x,y', got {text!r}")
    try:
        return PlanePoint(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise _UsageError(f"bad coordinate in {text!r}: {exc}") from exc


def _equilibrium_rows(b: ConvexBody, o: PlanePoint) -> list:
    rows = []
    for e in eq.find_horizontal_equilibria(b, o):
        rows.append({
            "phi": e.phi0,
            "x": e.point.x,
            "y": e.point.y,
            "stability": e.stability.value,
            "multiplicity": e.multiplicity,
        })
    return rows


def _cmd_validate(args) -> int:
    b = _load_body(args.body)
    width = constant_width(b)
    _emit(args, _json_dump({
        "rho_min": b.rho_min,
        "perimeter": b.perimeter,
        "area": b.area,
        "centroid": [b.centroid.x, b.centroid.y],
        "constant_width": width,
    }))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    b = _load_body(args.body)
    o = _parse_point(args.center)
    n_direct, n_formula, m = eq.count_consistency(b, o)
    cusps = [{
        "phi": c.phi0,
        "kind": c.kind.value,
        "x": c.location.x,
        "y": c.location.y,
        "rho": c.rho,
    } for c in find_cusps(b)]
    report = {
        "perimeter": b.perimeter,
        "area": b.area,
        "centroid": [b.centroid.x, b.centroid.y],
        "constant_width": constant_width(b),
        "cusps": cusps,
        "equilibria": _equilibrium_rows(b, o),
        "counts": {"nDirect": n_direct, "nFormula": n_formula, "m": m.value},
    }
    _emit(args, _json_dump(report))
    return EXIT_OK


def _cmd_equilibria(args) -> int:
    b = _load_body(args.body)
    o = _parse_point(args.center)
    if args.alpha_deg is None:
        n_direct, n_formula, m = eq.count_consistency(b, o)
        payload = {
            "center": [o.x, o.y],
            "nDirect": n_direct,
            "nFormula": n_formula,
            "m": m.value,
            "equilibria": _equilibrium_rows(b, o),
        }
    else:
        if not -90.0 < args.alpha_deg < 90.0:
            raise _UsageError("--alpha-deg must lie in (-90, 90)")
        alpha = math.radians(args.alpha_deg)
        roots = ob.find_oblique_equilibria(b, o, alpha)
        n_alpha, m_alpha = ob.oblique_count_via_formula(b, o, alpha)
        from .body import boundary_point
        payload = {
            "center": [o.x, o.y],
            "alpha": alpha,
            "nDirect": len(roots),
            "nFormula": n_alpha,
            "m": m_alpha.value,
            "equilibria": [{
                "phi": r.phi0,
                "x": boundary_point(b, r.phi0).x,
                "y": boundary_point(b, r.phi0).y,
                "stability": r.stability.value,
            } for r in roots],
        }
    _emit(args, _json_dump(payload))
    return EXIT_OK


def _cmd_evolute(args) -> int:
    b = _load_body(args.body)
    poly = sample_evolute(b, args.samples)
    kinds = {}
    try:
        for c in find_cusps(b):
            kinds[round(c.phi0, 12)] = c.kind.value
    except DegenerateCircle:
        pass
    lines = ["phi,x,y,is_cusp,kind"]
    cusp_set = set(poly.cusp_indices)
    for i, (phi, (x, y)) in enumerate(zip(poly.angles, poly.points)):
        is_cusp = i in cusp_set
        kind = kinds.get(round(float(phi), 12), "") if is_cusp else ""
        lines.append(f"{phi:.12g},{x:.12g},{y:.12g},{int(is_cusp)},{kind}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_region_map(args) -> int:
    b = _load_body(args.body)
    parts = args.bbox.split(",")
    if len(parts) != 4:
        raise _UsageError("--bbox expects x0,y0,x1,y1")
    try:
        x0, y0, x1, y1 = (float(v) for v in parts)
    except ValueError as exc:
        raise _UsageError(f"bad --bbox: {exc}") from exc
    res = args.res.lower().split("x")
    if len(res) != 2:
        raise _UsageError("--res expects WxH, e.g. 41x41")
    try:
        nx, ny = int(res[0]), int(res[1])
    except ValueError as exc:
        raise _UsageError(f"bad --res: {exc}") from exc
    rmap = eq.region_map(b, (PlanePoint(x0, y0), PlanePoint(x1, y1)),
                         (nx, ny), args.delta)
    _emit(args, rmap.to_csv())
    return EXIT_OK


def _cmd_roll(args) -> int:
    b = _load_body(args.body)
    o = _parse_point(args.center)
    if not -90.0 < args.alpha_deg < 90.0:
        raise _UsageError("--alpha-deg must lie in (-90, 90)")
    alpha = math.radians(args.alpha_deg)
    pts = ob.center_trace(b, o, alpha, args.samples)
    phis = np.linspace(0.0, 2 * math.pi, args.samples)
    lines = ["phi,x,y,height"]
    for phi, p in zip(phis, pts):
        lines.append(f"{phi:.12g},{p.x:.12g},{p.y:.12g},{p.y:.12g}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_plot(args) -> int:
    b = _load_body(args.body)
    o = _parse_point(args.center)
    _emit(args, render_scene(b, o))
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="planequil",
                     description="Equilibria of planar convex bodies")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("body", help="body-spec JSON file")
        p.add_argument("--out", help="output file (default: stdout)")
        p.set_defaults(fn=fn)
        return p

    add("validate", _cmd_validate, help="certify convexity, print scalars")

    p = add("analyze", _cmd_analyze, help="full report: scalars, cusps, equilibria")
    p.add_argument("--center", default="0,0", help="center of mass x,y (default 0,0)")

    p = add("equilibria", _cmd_equilibria, help="equilibria and counting identity")
    p.add_argument("--center", required=True, help="center of mass x,y")
    p.add_argument("--alpha-deg", type=float, default=None,
                   help="incline angle in degrees (omit for horizontal)")

    p = add("evolute", _cmd_evolute, help="evolute samples as CSV")
    p.add_argument("--samples", type=int, default=512)

    p = add("region-map", _cmd_region_map, help="equilibrium-count raster as CSV")
    p.add_argument("--bbox", required=True, help="x0,y0,x1,y1")
    p.add_argument("--res", required=True, help="WxH, e.g. 41x41")
    p.add_argument("--delta", type=float, default=None,
                   help="near-evolute flag distance (default 0.01 * body scale)")

    p = add("roll", _cmd_roll, help="trace of the center while rolling")
    p.add_argument("--alpha-deg", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--center", default="0,0")

    p = add("plot", _cmd_plot, help="SVG scene of body, evolute and equilibria")
    p.add_argument("--center", default="0,0")

    return parser


def _error_json(exc: Exception) -> str:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("phi", "rho", "value", "samples", "residual",
                 "n_direct", "n_formula"):
        if hasattr(exc, attr):
            payload[attr] = getattr(exc, attr)
    return json.dumps(_round12(payload), sort_keys=True)


def _merge_negative_values(argv: list) -> list:
    """Join '--bbox -2,-2,2,2' style pairs so argparse does not read the
    value as an option (its negative-number detection only covers plain
    numbers)."""
    merged = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--bbox", "--center") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-"):
            merged.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            merged.append(tok)
            i += 1
    return merged


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
        return args.fn(args)
    except _UsageError as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_USAGE
    except _BODY_ERRORS as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_INVALID_BODY
    except _NUMERICAL_ERRORS as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_NUMERICAL
    except PlanequilError as exc:
        print(_error_json(exc), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
