"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
JSON floats are written with repr, so they re-parse bit for bit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import circle_deform, curves, polygon_deform, polygons, rho_half, tracks
from .curves import ClosedCurve, CurveError, WaveFront
from .polygons import Polygon, PolygonError
from .render import svg

OK, FAILED, INVALID = 0, 1, 2


class InputError(Exception):
    pass


def default_tol() -> float:
    raw = os.environ.get("BIKEGEOM_TOL")
    if raw is None:
        return tracks.VERIFY_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"BIKEGEOM_TOL must be a number, got {raw!r}") from None
    if not tol > 0:
        raise InputError("BIKEGEOM_TOL must be positive")
    return tol


# --- I/O helpers ------------------------------------------------------------

def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def _load(path: str, *kinds):
    """Parse a curve, wave front or polygon JSON, restricted to ``kinds``."""
    data = _read_json(path)
    table = {"samples": ClosedCurve, "harmonics": WaveFront, "vertices": Polygon}
    for key, cls in table.items():
        if key in data and cls in kinds:
            try:
                return cls.from_dict(data)
            except (TypeError, ValueError) as exc:
                raise InputError(f"{path}: field '{key}': {exc}") from None
    wanted = ", ".join(f"'{k}'" for k, c in table.items() if c in kinds)
    raise InputError(f"{path}: missing field {wanted}")


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _positive(name):
    def parse(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number") from None
        if not v > 0:
            raise argparse.ArgumentTypeError(f"{name} must be positive")
        return v
    return parse


# --- commands ---------------------------------------------------------------

def cmd_track(args) -> int:
    gamma = _load(args.input, ClosedCurve, WaveFront)
    if args.mode == "ambiguous":
        d = tracks.ambiguity_distance(gamma, args.L)
        ok = d <= args.tol
        _emit(_dump({"ambiguous": ok, "distance": d, "tol": args.tol}), args.out)
        return OK if ok else FAILED
    fn = tracks.front_track if args.mode == "front" else tracks.reverse_front_track
    _emit(fn(gamma, args.L, args.n).to_json() + "\n", args.out)
    return OK


def cmd_bicycle(args) -> int:
    Gamma = _load(args.input, ClosedCurve)
    factor = 1.0
    try:
        tracks._require_normalized(Gamma)
    except CurveError:
        Gamma, factor = curves.normalize_perimeter(Gamma)
    try:
        res = tracks.bicycle_residual(Gamma, args.rho)
    except tracks.NonConvexError as exc:
        _emit(_dump({"convex": False, "message": str(exc)}), args.out)
        return FAILED
    checks = tracks.theorem_checks(Gamma, args.rho, tol=args.tol)
    passed = res.length_spread < args.tol and res.angle_spread < args.tol
    report = {"rho": args.rho, "convex": True, "normalization_factor": factor,
              "length_spread": res.length_spread, "angle_spread": res.angle_spread,
              "half_chord": res.half_chord, "tol": args.tol, "passes": passed,
              "theorems": checks.to_dict()}
    _emit(_dump(report), args.out)
    if args.profile:
        omega = np.pi * args.rho
        G = tracks._ccw(Gamma)
        c = tracks.chord_profile(G, omega)
        a0, a1 = tracks.chord_angles(G, omega)
        _emit(_csv(["x", "c", "alpha_start", "alpha_end"], zip(G.params, c, a0, a1)),
              args.profile)
    return OK if passed else FAILED


def cmd_rho_half(args) -> int:
    front = _load(args.input, WaveFront)
    if args.mode == "threshold":
        L_star = rho_half.min_convex_L(front)
        _emit(_dump({"min_convex_L": L_star}), args.out)
        return OK
    c = rho_half.construct(front, args.L, args.n)
    _emit(c.curve.to_json() + "\n", args.out)
    if args.svg:
        _, cusps = curves.front_eval(front)
        env = curves.front_eval(front, 1024)[0].samples * c.scale
        _emit(svg([c.curve.samples, env], [front.position(cusps) * c.scale]), args.svg)
    if not c.convex:
        print(f"construction is not convex at L = {args.L}; min convex L is "
              f"{rho_half.min_convex_L(front)!r}", file=sys.stderr)
        return FAILED
    return OK


def cmd_modes(args) -> int:
    ns = [args.n] if args.n is not None else range(2, args.scan_max + 1)
    rows = [(r.n, r.omega, r.rho, r.residual) for n in ns for r in circle_deform.mode_roots(n)]
    _emit(_csv(["n", "omega", "rho", "residual"], rows), args.out)
    return OK


def cmd_deform_circle(args) -> int:
    spec = circle_deform.DeformSpec(args.n, args.omega, args.eps, args.samples)
    G = circle_deform.deform_circle(spec)
    if args.curve_out:
        _emit(G.to_json() + "\n", args.curve_out)
    report = {"n": args.n, "omega": args.omega, "epsilon": args.eps,
              "chord_spread": circle_deform.chord_spread(spec),
              "eq16_residual": circle_deform.eq16_residual(spec.f, args.omega),
              "tangent_residual": circle_deform.tangent_residual(args.n, args.omega)}
    _emit(_dump(report), args.out)
    return OK


def cmd_ode(args) -> int:
    traj = circle_deform.ode19_integrate(args.C, args.L, args.beta0, args.dbeta0,
                                         args.x_end, args.h, args.drift_tol)
    rows = zip(traj.x, traj.beta, traj.dbeta, traj.f, traj.E)
    _emit(_csv(["x", "beta", "dbeta", "f", "E"], rows), args.out)
    print(f"relative energy drift {traj.drift!r}", file=sys.stderr)
    return OK if traj.step_ok else FAILED


def cmd_polygon(args) -> int:
    mode = args.mode
    if mode == "make":
        _emit(polygons.regular(args.n, args.R).to_json() + "\n", args.out)
    elif mode == "grid":
        _emit(polygons.grid_example().to_json() + "\n", args.out)
    elif mode == "flex":
        _emit(polygons.flexible(args.n, args.k, args.h).to_json() + "\n", args.out)
    elif mode == "verify":
        rep = polygons.verify(_load(args.input, Polygon), args.k, args.tol)
        _emit(_dump(rep.to_dict()), args.out)
        return OK if rep.is_bicycle else FAILED
    elif mode == "petrunin":
        arcs = polygons.petrunin_arcs(_load(args.input, Polygon), args.k)
        _emit(_dump([a.to_dict() for a in arcs]), args.out)
    elif mode == "spectrum":
        spec = polygon_deform.PolygonSpectrum(args.n, args.k)
        _emit(_csv(["n", "k", "r", "re", "im", "abs", "zero"], spec.rows()), args.out)
    elif mode == "kernel":
        fields = polygon_deform.kernel(args.n, args.k)
        _emit(_dump([{"r": f.r, "t": f.t.tolist(), "U": f.U.tolist()} for f in fields]),
              args.out)
    elif mode == "deform":
        fields = polygon_deform.kernel(args.n, args.k)
        if not 0 <= args.mode_index < len(fields):
            raise InputError(f"--mode-index must lie in [0, {len(fields) - 1}]")
        P = polygon_deform.deform(args.n, args.k, fields[args.mode_index], args.eps)
        _emit(P.to_json() + "\n", args.out)
    elif mode == "search":
        res = polygons.rigidity_search(args.n, args.k, args.seeds, args.seed)
        rows = [(r.seed, r.residual, r.convex, r.regular_distance, r.is_regular) for r in res]
        _emit(_csv(["seed", "residual", "convex", "regular_distance", "regular"], rows), args.out)
        return OK if all(r.is_regular for r in res) else FAILED
    return OK


def cmd_render(args) -> int:
    obj = _load(args.input, ClosedCurve, WaveFront, Polygon)
    markers = []
    if isinstance(obj, WaveFront):
        curve, cusps = curves.front_eval(obj, 1024)
        paths = [curve.samples]
        if args.mark:
            markers.append(obj.position(cusps))
    elif isinstance(obj, Polygon):
        paths = [obj.vertices]
        if args.mark:
            markers.append(obj.vertices)
    else:
        paths = [obj.samples]
        if args.mark and obj.arclength:
            vs = curves.vertices(obj)
            if not vs.circular:
                markers.append(obj.evaluate(vs.params))
    _emit(svg(paths, markers), args.out)
    return OK


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bikegeom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inp=True):
        if inp:
            sp.add_argument("--input", "-i", required=True, help="input JSON file")
        sp.add_argument("--out", "-o", help="output file (default stdout)")
        sp.add_argument("--tol", type=_positive("--tol"), default=None)

    sp = sub.add_parser("track", help="front/reverse tracks and the ambiguity test")
    sp.add_argument("mode", choices=["front", "reverse", "ambiguous"])
    sp.add_argument("--L", type=_positive("--L"), required=True)
    sp.add_argument("--n", type=int, default=None, help="samples for wave-front input")
    common(sp)
    sp.set_defaults(func=cmd_track, file_tol=True)

    sp = sub.add_parser("bicycle", help="check the bicycle property of a curve")
    sp.add_argument("mode", choices=["verify"])
    sp.add_argument("--rho", type=float, required=True)
    sp.add_argument("--profile", help="CSV of chord length and end angles")
    common(sp)
    sp.set_defaults(func=cmd_bicycle)

    sp = sub.add_parser("rho-half", help="rotation number 1/2 curves from a wave front")
    sp.add_argument("mode", choices=["construct", "threshold"])
    sp.add_argument("--L", type=_positive("--L"))
    sp.add_argument("--n", type=int, default=512)
    sp.add_argument("--svg", help="write an SVG of the curve and its front")
    common(sp)
    sp.set_defaults(func=cmd_rho_half)

    sp = sub.add_parser("modes", help="roots of n tan(w) = tan(n w)")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--scan-max", type=int)
    common(sp, inp=False)
    sp.set_defaults(func=cmd_modes)

    sp = sub.add_parser("deform-circle", help="first-order deformation of the unit circle")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--eps", type=float, required=True)
    sp.add_argument("--samples", type=int, default=512)
    sp.add_argument("--curve-out", help="write the deformed curve JSON here")
    common(sp, inp=False)
    sp.set_defaults(func=cmd_deform_circle)

    sp = sub.add_parser("ode", help="integrate L^2 beta'' = (C - cos beta) sin beta")
    sp.add_argument("--C", type=float, required=True)
    sp.add_argument("--L", type=_positive("--L"), required=True)
    sp.add_argument("--beta0", type=float, required=True)
    sp.add_argument("--dbeta0", type=float, required=True)
    sp.add_argument("--h", type=_positive("--h"), default=1e-3)
    sp.add_argument("--x-end", type=_positive("--x-end"), default=2 * np.pi)
    sp.add_argument("--drift-tol", type=_positive("--drift-tol"), default=1e-8)
    common(sp, inp=False)
    sp.set_defaults(func=cmd_ode)

    sp = sub.add_parser("polygon", help="bicycle (n, k)-gons")
    sp.add_argument("mode", choices=["make", "verify", "flex", "grid", "petrunin",
                                     "spectrum", "kernel", "deform", "search"])
    sp.add_argument("--input", "-i")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--R", type=_positive("--R"), default=1.0)
    sp.add_argument("--h", type=float)
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--mode-index", type=int, default=0)
    sp.add_argument("--seeds", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, inp=False)
    sp.set_defaults(func=cmd_polygon)

    sp = sub.add_parser("render", help="SVG of a curve, wave front or polygon")
    sp.add_argument("--mark", action="store_true", help="mark vertices or cusps")
    common(sp)
    sp.set_defaults(func=cmd_render)
    return p


_REQUIRED = {
    ("rho-half", "construct"): ["L"],
    ("polygon", "make"): ["n"],
    ("polygon", "verify"): ["input", "k"],
    ("polygon", "flex"): ["n", "k", "h"],
    ("polygon", "petrunin"): ["input", "k"],
    ("polygon", "spectrum"): ["n", "k"],
    ("polygon", "kernel"): ["n", "k"],
    ("polygon", "deform"): ["n", "k"],
    ("polygon", "search"): ["n", "k"],
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        for name in _REQUIRED.get((args.command, getattr(args, "mode", None)), []):
            if getattr(args, name) is None:
                raise InputError(f"{args.command} {args.mode} needs --{name}")
        if args.tol is None:
            args.tol = tracks.FILE_TOL if getattr(args, "file_tol", False) else default_tol()
        return args.func(args)
    except (InputError, CurveError, PolygonError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
