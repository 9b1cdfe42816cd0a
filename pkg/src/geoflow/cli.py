"""Command-line front end.

Every output starts with a metadata block (tool version, full parameter
echo, numerical constants). The wall-clock timestamp sits alone on its own
line so outputs can be compared byte for byte without it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import __version__, constants
from .classify import DIRECTION_NOTE, classify_lifetime, lifetime_quadrature, sweep_records
from .errors import GeoflowError
from .gb2d import (
    GENUS2_AREA_SCALE,
    TORUS_AREA_SCALE,
    area_law,
    blowup_check,
    check_envelopes,
    classify_surface,
    decay_functional,
)
from .radial_flow import FlowProblem, integrate
from .svg import line_chart
from .symfun import check_parabolic, parse_speed
from .tube import TubeConfig

CSV_COLUMNS = ("t", "r", "F", "H", "K", "area_factor", "conserved")
PARABOLIC_SAMPLES = 256


def _constants() -> dict:
    return {name: getattr(constants, name) for name in dir(constants) if name.isupper()}


def _seed() -> int:
    return int(os.environ.get("GEOFLOW_SEED", constants.DEFAULT_SEED))


def _metadata(args: argparse.Namespace, **extra) -> dict:
    params = {k: v for k, v in sorted(vars(args).items()) if k != "handler"}
    meta = {
        "tool": "geoflow",
        "version": __version__,
        "command": args.command,
        "parameters": params,
        "seed": _seed(),
        "constants": _constants(),
    }
    meta.update(extra)
    return meta


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _json_document(metadata: dict, result) -> str:
    # the timestamp stays on a line of its own
    head = json.dumps({"metadata": metadata}, sort_keys=True, allow_nan=False)[:-1]
    body = json.dumps(result, sort_keys=True, allow_nan=False)
    return f'{head},\n"timestamp": {json.dumps(_timestamp())},\n"result": {body}}}\n'


def _emit(text: str, path: str | None = None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _finite_or_none(x: float | None):
    return None if x is None or not math.isfinite(x) else x


def cmd_simulate(args) -> int:
    problem = FlowProblem(TubeConfig(args.n, args.k), args.r0, parse_speed(args.speed))
    traj = integrate(problem, args.t_max, args.out_step)
    term = {"kind": traj.termination.kind, "time": traj.termination.time, "message": traj.termination.message}
    meta = _metadata(args, termination=term)
    rows = [[getattr(s, c) for c in CSV_COLUMNS] for s in traj.samples]
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("# geoflow " + json.dumps(meta, sort_keys=True) + "\n")
        buf.write(f"# timestamp {_timestamp()}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([f"{v:.17g}" for v in row])
        text = buf.getvalue()
    else:
        result = {"columns": list(CSV_COLUMNS), "samples": [[_finite_or_none(v) for v in row] for row in rows]}
        text = _json_document(meta, result)
    _emit(text)
    if args.plot:
        t = [s.t for s in traj.samples]
        svg = line_chart(t, {"r": [s.r for s in traj.samples], "F": [s.F for s in traj.samples]},
                         title=f"n={args.n} k={args.k} r0={args.r0} speed={args.speed}")
        _emit(svg, args.plot)
    if traj.termination.kind == "error":
        print(f"error [radial_flow]: {traj.termination.message}", file=sys.stderr)
        return 1
    return 0


def cmd_classify(args) -> int:
    c = classify_lifetime(args.n, args.k, args.m, args.l, args.r0)
    _emit(_json_document(_metadata(args, direction_note=DIRECTION_NOTE), c.to_dict()))
    return 0


def cmd_lifetime(args) -> int:
    speed = parse_speed(args.speed)
    c = lifetime_quadrature(FlowProblem(TubeConfig(args.n, args.k), args.r0, speed))
    report = check_parabolic(speed, args.n, PARABOLIC_SAMPLES, seed=_seed())
    result = c.to_dict()
    result["parabolicity"] = {
        "verdict": report.verdict,
        "grad_min": report.grad_min,
        "grad_max": report.grad_max,
        "samples": report.samples,
        "skipped": report.skipped,
        "seed": report.seed,
    }
    _emit(_json_document(_metadata(args, direction_note=DIRECTION_NOTE), result))
    return 0


def cmd_area_law(args) -> int:
    s = classify_surface(args.genus, args.v0)
    result = {
        "genus": s.genus,
        "C0": s.C0,
        "V0": s.V0,
        "case": s.case,
        "limit_area": s.limit_area,
        "extinction": s.extinction_time,
        "nonexistent_under_F_half": s.nonexistence_flag,
    }
    if args.t is not None:
        result["t"] = args.t
        result["V_t"] = area_law(s, args.t)
    _emit(_json_document(_metadata(args), result))
    return 0


def cmd_envelope(args) -> int:
    problem = FlowProblem(TubeConfig(args.n, args.k), args.r0, parse_speed("harmonic"))
    traj = integrate(problem, args.t_max, constants.ENVELOPE_OUT_STEP)
    if traj.termination.kind == "error":
        raise GeoflowError(traj.termination.message)
    report = check_envelopes(traj)
    result = {
        "samples": report.samples,
        "ok": report.ok,
        "violations": report.violations,
        "F_initial": traj.samples[0].F,
        "F_final": traj.samples[-1].F,
        "termination": traj.termination.kind,
    }
    if args.k >= 1:
        scale = {(2, 1): TORUS_AREA_SCALE, (2, 2): GENUS2_AREA_SCALE}.get((args.n, args.k), 1.0)
        series = decay_functional(traj, scale)
        result["decay_functional"] = {"area_scale": scale, "initial": series[0][1], "final": series[-1][1]}
    if (args.n, args.k) == (2, 1):
        hit = blowup_check(traj)
        result["blowup"] = None if hit is None else {"t": hit[0], "H": hit[1]}
    _emit(_json_document(_metadata(args, out_step=constants.ENVELOPE_OUT_STEP), result))
    return 0


def cmd_sweep(args) -> int:
    records = sweep_records(args.n_max, args.r0)
    _emit(_json_document(_metadata(args, direction_note=DIRECTION_NOTE), records), args.output)
    return 0


def _positive(text: str) -> float:
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoflow", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"geoflow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def tube_flags(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=_nonnegative_int, required=True)
        p.add_argument("--r0", type=_positive, required=True)

    p = sub.add_parser("simulate", help="integrate a radial flow")
    tube_flags(p)
    p.add_argument("--speed", default="harmonic")
    p.add_argument("--t-max", type=_positive, default=10.0)
    p.add_argument("--out-step", type=_positive, default=0.1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--plot", default=None, metavar="SVG")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("classify", help="lifetime of the S_m/S_l flow")
    tube_flags(p)
    p.add_argument("--m", type=_nonnegative_int, required=True)
    p.add_argument("--l", type=_nonnegative_int, required=True)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("lifetime", help="lifetime quadrature for a parsed speed")
    tube_flags(p)
    p.add_argument("--speed", required=True)
    p.set_defaults(handler=cmd_lifetime)

    p = sub.add_parser("area-law", help="Gauss-Bonnet area law for a surface")
    p.add_argument("--genus", type=_nonnegative_int, required=True)
    p.add_argument("--v0", type=_positive, required=True)
    p.add_argument("--t", type=float, default=None)
    p.set_defaults(handler=cmd_area_law)

    p = sub.add_parser("envelope", help="check maximum-principle envelopes along a harmonic flow")
    tube_flags(p)
    p.add_argument("--t-max", type=_positive, default=10.0)
    p.set_defaults(handler=cmd_envelope)

    p = sub.add_parser("sweep", help="classify every (n, k, m, l) up to n-max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--r0", type=_positive, default=0.5)
    p.add_argument("--output", default="-")
    p.set_defaults(handler=cmd_sweep)
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if hasattr(args, "n") and args.n is not None:
        if args.n < 1:
            parser.error(f"--n must be >= 1, got {args.n}")
        if args.k > args.n:
            parser.error(f"--k must lie in [0, n={args.n}], got {args.k}")
        if args.r0 > constants.R_MAX:
            parser.error(f"--r0 must not exceed {constants.R_MAX}")
    if args.command == "classify" and (args.m > args.n or args.l > args.n):
        parser.error("--m and --l must lie in [0, n]")
    if args.command == "sweep" and not 1 <= args.n_max <= 6:
        parser.error("--n-max must lie in [1, 6]")
    if args.command == "area-law" and args.t is not None and args.t < 0:
        parser.error("--t must be >= 0")
    if args.command in ("simulate", "lifetime"):
        try:
            parse_speed(args.speed)
        except GeoflowError as exc:
            parser.error(f"--speed: {exc}")
    try:
        _seed()
    except ValueError:
        parser.error("GEOFLOW_SEED must be an integer")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.handler(args)
    except (GeoflowError, ArithmeticError) as exc:
        module = getattr(exc, "module", "geoflow")
        print(f"error [{module}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error [io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
