"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 parse or option error.  Errors are
written to stderr as a single JSON object ``{"error": kind, "message": ...}``.
Inputs are JSON strings; a value starting with ``@`` is read from that file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from .errors import ExactModeUnsupported, NotOnIH, ParseError, SuperGeometryError
from .geodesic import (
    Geodesic,
    distance,
    foot,
    geodesic_from_json,
    geodesic_to_json,
    point_at,
    through,
)
from .grassmann import ANALYTIC_TAGS, MAX_GENS, Algebra, analytic_apply
from .minkowski import SuperVector, classify, require_ih, to_upper_half_plane, vector_from_json, vector_to_json
from .pairs import classify_pair, common_perpendicular, intersect, verdict_to_json
from .selftest import SUITES, SelftestConfig, run_selftest
from .textio import format_supernumber, parse_supernumber, supernumber_to_json
from .trig import Triangle, random_triangle, report_to_json, triangle_from_json, triangle_report

COMMANDS = ("eval", "classify", "distance", "through", "foot", "triangle", "intersect",
            "perpendicular", "selftest", "map-uhp", "plot-body")
FLOAT_ONLY = ("map-uhp", "plot-body")


class OptionError(Exception):
    pass


@dataclass(frozen=True)
class DiskPoint:
    px: float
    py: float


def body_to_disk(p: SuperVector, tol: float | None = None) -> DiskPoint:
    """Poincare-disk image of the body of p: X = (x1-x2)/2, Z = (x1+x2)/2, Y = y."""
    x1, x2, y = (float(c) for c in p.body())
    X, Z = (x1 - x2) / 2, (x1 + x2) / 2
    tol = 1e-9 if tol is None else tol
    if Z <= 0 or abs(Z * Z - X * X - y * y - 1) > tol * max(1.0, Z * Z):
        raise NotOnIH("body is not on the hyperboloid sheet")
    return DiskPoint(X / (1 + Z), y / (1 + Z))


def plot_body(L: Geodesic, samples: int = 101, t_min: float = -3.0, t_max: float = 3.0) -> list[tuple]:
    """(t, px, py) rows for uniformly spaced parameters."""
    if samples < 2:
        raise OptionError("need at least two samples")
    rows = []
    for k in range(samples):
        t = t_min + (t_max - t_min) * k / (samples - 1)
        q = body_to_disk(point_at(L, t))
        rows.append((t, q.px, q.py))
    return rows


# ---------------------------------------------------------------- argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise OptionError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gens", type=int, default=8, help="number of Grassmann generators (1-16)")
    p.add_argument("--scalar", choices=("float", "rational"), default="float")
    p.add_argument("--tol", type=float, default=None, help="residual tolerance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("json", "text", "csv"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superhyp", description="Super hyperbolic plane computations.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("eval", help="parse a supernumber, optionally apply a function")
    p.add_argument("expr")
    p.add_argument("--apply", choices=ANALYTIC_TAGS + ("inverse",), default=None)
    _common(p)

    p = sub.add_parser("classify", help="conic class of a vector")
    p.add_argument("--p", required=True)
    _common(p)

    for name in ("distance", "through"):
        p = sub.add_parser(name, help=f"{name} for two points of IH")
        p.add_argument("--p", required=True)
        p.add_argument("--q", required=True)
        _common(p)

    p = sub.add_parser("foot", help="orthogonal projection of a point on a geodesic")
    p.add_argument("--p", required=True)
    p.add_argument("--line", required=True)
    _common(p)

    p = sub.add_parser("triangle", help="laws of cosines and sines for a supertriangle")
    p.add_argument("--triangle", default=None, help="JSON with keys A, B, C; random if omitted")
    p.add_argument("--fermionic-scale", type=float, default=0.5)
    _common(p)

    for name in ("intersect", "perpendicular"):
        p = sub.add_parser(name, help=f"{name} for a pair of geodesics")
        p.add_argument("--line1", required=True)
        p.add_argument("--line2", required=True)
        _common(p)

    p = sub.add_parser("selftest", help="run the property suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--suite", action="append", choices=tuple(SUITES), default=None)
    _common(p)

    p = sub.add_parser("map-uhp", help="image of a point in the super upper half-plane")
    p.add_argument("--p", required=True)
    _common(p)

    p = sub.add_parser("plot-body", help="CSV of disk coordinates along a geodesic body")
    p.add_argument("--line", required=True)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--t-min", type=float, default=-3.0)
    p.add_argument("--t-max", type=float, default=3.0)
    _common(p)
    return parser


def _load(text: str):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None


def _vec(text: str, alg: Algebra) -> SuperVector:
    return vector_from_json(_load(text), alg)


def _line(text: str, alg: Algebra, tol) -> Geodesic:
    return geodesic_from_json(_load(text), alg, tol)


def _sn(x):
    return supernumber_to_json(x) if x is not None else None


# ---------------------------------------------------------------- commands


def _cmd_eval(a, alg):
    x = parse_supernumber(a.expr, alg)
    if a.apply == "inverse":
        x = x.inverse()
    elif a.apply:
        x = analytic_apply(a.apply, x)
    return {"value": supernumber_to_json(x), "text": format_supernumber(x)}


def _cmd_classify(a, alg):
    c = classify(_vec(a.p, alg), a.tol)
    return {"tag": c.tag, "residual": float(c.residual)}


def _cmd_distance(a, alg):
    r = distance(_vec(a.p, alg), _vec(a.q, alg), a.tol)
    return {"cosh_d": _sn(r.cosh_d), "d": _sn(r.d)}


def _cmd_through(a, alg):
    return geodesic_to_json(through(_vec(a.p, alg), _vec(a.q, alg), a.tol))


def _cmd_foot(a, alg):
    r = foot(_vec(a.p, alg), _line(a.line, alg, a.tol), a.tol)
    return {
        "foot": vector_to_json(r.Q),
        "tanh_param": _sn(r.tanh_param),
        "cosh_dist": _sn(r.dist.cosh_d),
        "dist": _sn(r.dist.d),
        "perpendicular": geodesic_to_json(r.perp),
    }


def _cmd_triangle(a, alg):
    if a.triangle:
        T = triangle_from_json(_load(a.triangle), alg)
    else:
        T = random_triangle(a.seed, a.fermionic_scale, alg)
    out = report_to_json(triangle_report(T, a.tol))
    if not a.triangle:
        out["triangle"] = {k: vector_to_json(p) for k, p in zip("ABC", T.vertices)}
    return out


def _cmd_intersect(a, alg):
    return verdict_to_json(intersect(_line(a.line1, alg, a.tol), _line(a.line2, alg, a.tol), a.tol))


def _cmd_perpendicular(a, alg):
    L1, L2 = _line(a.line1, alg, a.tol), _line(a.line2, alg, a.tol)
    v = classify_pair(L1, L2, a.tol)
    if v.perpendicular is None:
        v.perpendicular = common_perpendicular(L1, L2, a.tol, verdict=v)
    return verdict_to_json(v)


def _cmd_map_uhp(a, alg):
    p = _vec(a.p, alg)
    require_ih(p, a.tol)
    z, theta = to_upper_half_plane(p, a.tol)
    return {"z": supernumber_to_json(z), "theta": supernumber_to_json(theta)}


def _cmd_selftest(a, alg):
    if a.trials < 1:
        raise OptionError("--trials must be positive")
    cfg = SelftestConfig(gens=a.gens, trials=a.trials, seed=a.seed, tol=a.tol if a.tol is not None else 1e-9)
    res = run_selftest(cfg, a.suite)
    return {"passed": res.passed, "checks": [c.to_json() for c in res.checks]}, res


def _cmd_plot_body(a, alg):
    return plot_body(_line(a.line, alg, a.tol), a.samples, a.t_min, a.t_max)


HANDLERS = {
    "eval": _cmd_eval,
    "classify": _cmd_classify,
    "distance": _cmd_distance,
    "through": _cmd_through,
    "foot": _cmd_foot,
    "triangle": _cmd_triangle,
    "intersect": _cmd_intersect,
    "perpendicular": _cmd_perpendicular,
    "map-uhp": _cmd_map_uhp,
    "selftest": _cmd_selftest,
    "plot-body": _cmd_plot_body,
}


# ---------------------------------------------------------------- output


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict) and set(v) == {"terms"}:
            lines.append(f"{pad}{k}: {_terms_text(v)}")
        elif isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def _terms_text(v: dict) -> str:
    parts = []
    for t in v["terms"]:
        mono = "*e[" + ",".join(map(str, t["idx"])) + "]" if t["idx"] else ""
        parts.append(f"{t['c']}{mono}")
    return " + ".join(parts) if parts else "0"


def _emit_rows(rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("t", "px", "py"))
    for t, x, y in rows:
        w.writerow((repr(t), repr(x), repr(y)))


def _emit(command: str, result, fmt: str, out) -> None:
    if command == "plot-body":
        if fmt == "json":
            json.dump([{"t": t, "px": x, "py": y} for t, x, y in result], out)
            out.write("\n")
        else:
            _emit_rows(result, out)
        return
    if fmt == "csv":
        raise OptionError("csv output is only available for plot-body")
    if command == "selftest" and fmt == "text":
        for c in result[1].checks:
            out.write(c.line() + "\n")
        out.write("all passed\n" if result[1].passed else "FAILURES\n")
        return
    if command == "selftest":
        result = result[0]
    if fmt == "text":
        out.write("\n".join(_text(result)) + "\n")
    else:
        json.dump(result, out, sort_keys=True)
        out.write("\n")


def _error(kind: str, message: str, err, position=None) -> None:
    obj = {"error": kind, "message": message}
    if position is not None:
        obj["position"] = position
    err.write(json.dumps(obj) + "\n")


def run(argv=None, out=None, err=None) -> int:
    """Parse ``argv``, dispatch, write the result; returns the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise OptionError(f"a command is required: {', '.join(COMMANDS)}")
        if not 1 <= args.gens <= MAX_GENS:
            raise OptionError(f"--gens must lie in [1, {MAX_GENS}]")
        if args.tol is not None and not (args.tol >= 0 and math.isfinite(args.tol)):
            raise OptionError("--tol must be a non-negative number")
        if args.scalar == "rational" and args.command in FLOAT_ONLY:
            raise OptionError(f"{args.command} needs transcendental functions; use --scalar float")
        fmt = args.output or ("csv" if args.command == "plot-body" else "json")
        alg = Algebra(args.gens, args.scalar)
        result = HANDLERS[args.command](args, alg)
        buf = io.StringIO()
        _emit(args.command, result, fmt, buf)
    except OptionError as exc:
        _error("OptionError", str(exc), err)
        return 2
    except ParseError as exc:
        _error("ParseError", str(exc), err, getattr(exc, "position", None))
        return 2
    except ExactModeUnsupported as exc:
        _error("ExactModeUnsupported", str(exc), err)
        return 1
    except SuperGeometryError as exc:
        _error(type(exc).__name__, str(exc), err)
        return 1
    except OSError as exc:
        _error("OptionError", str(exc), err)
        return 2
    out.write(buf.getvalue())
    if args.command == "selftest" and not result[1].passed:
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
