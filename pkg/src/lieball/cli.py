"""Command-line interface.

Exit codes: 0 success (or all suites passed), 1 domain error or suite
failure, 2 usage error.  All numeric output goes through the deterministic
serializer, so identical commands produce byte-identical output.

A key=value config file may provide defaults for n, tol, seed, trials and
format; its path comes from --config or the LIEBALL_CONFIG environment
variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import verify
from .core import classify, lie_gauge
from .correspondence import s_inv, s_map, theta, theta_inv
from .errors import GeometryError
from .metric import geodesic_integrate, metric_at
from .moebius import (
    HyperbolicMotion,
    motion_apply,
    motion_apply_sphere,
    tangent_action,
)
from .serialize import (
    complex_point_to_dict,
    dumps,
    emit_path,
    motion_from_json,
    parse_complex_vector,
    parse_real_vector,
    sphere_to_dict,
    tangent_to_dict,
)
from .spheres import (
    OrientedSphere,
    TangentVector,
    sphere_euc_to_hyp,
    sphere_hyp_to_euc,
    t_inv,
    t_map,
)


@dataclass
class CliConfig:
    n: int = 3
    tol: float = 1e-9
    seed: int = 0
    trials: int = 200
    fmt: str = "json"


def _load_config(path: str | None) -> CliConfig:
    cfg = CliConfig()
    path = path or os.environ.get("LIEBALL_CONFIG")
    if not path:
        return cfg
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = (t.strip() for t in line.split("=", 1))
            if key == "n":
                cfg.n = int(value)
            elif key == "tol":
                cfg.tol = float(value)
            elif key == "seed":
                cfg.seed = int(value)
            elif key == "trials":
                cfg.trials = int(value)
            elif key == "format":
                cfg.fmt = value
    if cfg.n < 2:
        raise GeometryError("configured dimension must be >= 2")
    if cfg.trials < 1:
        raise GeometryError("configured trials must be >= 1")
    return cfg


def _maybe_complex(text: str) -> np.ndarray:
    return parse_complex_vector(text) if ";" in text else parse_real_vector(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lieball",
        description="Tangent bundle of the Poincare ball as the Lie ball: "
        "maps, motions, metric, and verification suites.",
    )
    parser.add_argument("--config", help="key=value config file (or set LIEBALL_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gauge", help="Lie-ball gauge and classification of a complex point")
    p.add_argument("--z", required=True, help="complex vector 're,im;re,im;...'")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("theta", help="tangent vector -> Lie-ball point")
    p.add_argument("--x", required=True)
    p.add_argument("--v", required=True)

    p = sub.add_parser("theta-inv", help="Lie-ball point -> tangent vector")
    p.add_argument("--z", required=True)

    p = sub.add_parser("sphere", help="conversions between sphere encodings")
    p.add_argument("--z", help="complex point encoding")
    p.add_argument("--x", help="tangent base (with --v)")
    p.add_argument("--v", help="tangent components (with --x)")
    p.add_argument("--center", help="sphere center (with --radius-vector)")
    p.add_argument("--radius-vector", dest="radius_vector")
    p.add_argument(
        "--to",
        choices=("sphere", "complex", "tangent"),
        default=None,
        help="output encoding (default: sphere for point inputs, complex for sphere input)",
    )

    p = sub.add_parser("convert-sphere", help="hyperbolic <-> euclidean sphere data")
    p.add_argument("--c", help="hyperbolic center (with --r)")
    p.add_argument("--r", type=float, help="hyperbolic radius parameter")
    p.add_argument("--c-e", dest="c_e", help="euclidean center (with --r-e)")
    p.add_argument("--r-e", dest="r_e", type=float, help="euclidean radius")

    p = sub.add_parser("motion", help="apply a motion to a point, sphere, or tangent vector")
    p.add_argument("--motion-json", help="motion JSON (string or @file)")
    p.add_argument("--rho", help="orthogonal part, rows separated by ';' (default identity)")
    p.add_argument("--a", help="translation parameter (default zero)")
    p.add_argument("--point", help="real 'a,b,c' or complex 're,im;...' point")
    p.add_argument("--sphere-center", dest="sphere_center")
    p.add_argument("--sphere-radius-vector", dest="sphere_radius_vector")
    p.add_argument("--x", help="tangent base (with --v)")
    p.add_argument("--v", help="tangent components")

    p = sub.add_parser("metric", help="metric tensor at a tangent-bundle point")
    p.add_argument("--x", required=True)
    p.add_argument("--v", required=True)

    p = sub.add_parser("geodesic", help="integrate a geodesic and emit samples")
    p.add_argument("--x", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--xdot", required=True)
    p.add_argument("--vdot", required=True)
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--format", choices=("json", "csv"), default=None)

    p = sub.add_parser("verify", help="run a named invariant suite (or 'all')")
    p.add_argument("suite", choices=verify.suite_names() + ["all"])
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)

    return parser


def _cmd_gauge(args, cfg, out):
    tol = cfg.tol if args.tol is None else args.tol
    z = parse_complex_vector(args.z)
    cls = classify(z, tol)
    out.write(dumps({"gauge": lie_gauge(z), "class": cls.region.value}) + "\n")
    return 0


def _cmd_theta(args, cfg, out):
    tv = TangentVector(parse_real_vector(args.x), parse_real_vector(args.v))
    out.write(dumps(complex_point_to_dict(theta(tv))) + "\n")
    return 0


def _cmd_theta_inv(args, cfg, out):
    tv = theta_inv(parse_complex_vector(args.z), tol=cfg.tol)
    out.write(dumps(tangent_to_dict(tv)) + "\n")
    return 0


def _cmd_sphere(args, cfg, out):
    if args.z is not None:
        target = args.to or "sphere"
        z = parse_complex_vector(args.z)
        if target == "sphere":
            out.write(dumps(sphere_to_dict(t_map(z))) + "\n")
        elif target == "tangent":
            out.write(dumps(tangent_to_dict(theta_inv(z, tol=cfg.tol))) + "\n")
        else:
            out.write(dumps(complex_point_to_dict(z)) + "\n")
    elif args.x is not None and args.v is not None:
        target = args.to or "sphere"
        tv = TangentVector(parse_real_vector(args.x), parse_real_vector(args.v))
        if target == "sphere":
            out.write(dumps(sphere_to_dict(s_map(tv))) + "\n")
        elif target == "complex":
            out.write(dumps(complex_point_to_dict(theta(tv))) + "\n")
        else:
            out.write(dumps(tangent_to_dict(tv)) + "\n")
    elif args.center is not None and args.radius_vector is not None:
        target = args.to or "complex"
        s = OrientedSphere(parse_real_vector(args.center), parse_real_vector(args.radius_vector))
        if target == "complex":
            out.write(dumps(complex_point_to_dict(t_inv(s))) + "\n")
        elif target == "tangent":
            out.write(dumps(tangent_to_dict(s_inv(s, tol=cfg.tol))) + "\n")
        else:
            out.write(dumps(sphere_to_dict(s)) + "\n")
    else:
        raise GeometryError("sphere needs --z, or --x/--v, or --center/--radius-vector")
    return 0


def _cmd_convert_sphere(args, cfg, out):
    if args.c is not None and args.r is not None:
        c_e, r_e = sphere_hyp_to_euc(parse_real_vector(args.c), args.r)
        out.write(dumps({"c_e": list(c_e), "r_e": r_e}) + "\n")
    elif args.c_e is not None and args.r_e is not None:
        c, r = sphere_euc_to_hyp(parse_real_vector(args.c_e), args.r_e)
        out.write(dumps({"c": list(c), "r": r}) + "\n")
    else:
        raise GeometryError("convert-sphere needs --c/--r or --c-e/--r-e")
    return 0


def _parse_motion(args, cfg) -> HyperbolicMotion:
    if args.motion_json:
        import json

        text = args.motion_json
        if text.startswith("@"):
            with open(text[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        return motion_from_json(json.loads(text))
    a = parse_real_vector(args.a) if args.a else None
    if args.rho:
        rows = [parse_real_vector(row) for row in args.rho.split(";")]
        rho = np.vstack(rows)
        if a is None:
            a = np.zeros(rho.shape[0])
    else:
        if a is None:
            raise GeometryError("motion needs --motion-json, --rho, or --a")
        rho = np.eye(a.size)
    return HyperbolicMotion(rho, a)


def _cmd_motion(args, cfg, out):
    motion = _parse_motion(args, cfg)
    if args.point is not None:
        result = motion_apply(motion, _maybe_complex(args.point))
        out.write(dumps(complex_point_to_dict(result)) + "\n")
    elif args.sphere_center is not None and args.sphere_radius_vector is not None:
        s = OrientedSphere(
            parse_real_vector(args.sphere_center),
            parse_real_vector(args.sphere_radius_vector),
        )
        out.write(dumps(sphere_to_dict(motion_apply_sphere(motion, s))) + "\n")
    elif args.x is not None and args.v is not None:
        tv = TangentVector(parse_real_vector(args.x), parse_real_vector(args.v))
        out.write(dumps(tangent_to_dict(tangent_action(motion, tv))) + "\n")
    else:
        raise GeometryError("motion needs --point, --sphere-*, or --x/--v")
    return 0


def _cmd_metric(args, cfg, out):
    tv = TangentVector(parse_real_vector(args.x), parse_real_vector(args.v))
    tensor = metric_at(tv)
    out.write(
        dumps({"x": list(tv.x), "v": list(tv.v), "matrix": tensor.matrix.tolist()}) + "\n"
    )
    return 0


def _cmd_geodesic(args, cfg, out):
    tv = TangentVector(parse_real_vector(args.x), parse_real_vector(args.v))
    velocity = np.concatenate([parse_real_vector(args.xdot), parse_real_vector(args.vdot)])
    path = geodesic_integrate(tv, velocity, args.length, args.steps)
    emit_path(path, args.format or cfg.fmt, out)
    return 0


def _cmd_verify(args, cfg, out):
    trials = cfg.trials if args.trials is None else args.trials
    seed = cfg.seed if args.seed is None else args.seed
    if args.suite == "all":
        reports = verify.run_all(n=args.n, trials=trials, seed=seed)
    else:
        reports = verify.run_suite(args.suite, n=args.n, trials=trials, seed=seed)
    for report in reports:
        out.write(dumps(report) + "\n")
    return 0 if all(r["pass"] for r in reports) else 1


_COMMANDS = {
    "gauge": _cmd_gauge,
    "theta": _cmd_theta,
    "theta-inv": _cmd_theta_inv,
    "sphere": _cmd_sphere,
    "convert-sphere": _cmd_convert_sphere,
    "motion": _cmd_motion,
    "metric": _cmd_metric,
    "geodesic": _cmd_geodesic,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return _COMMANDS[args.command](args, cfg, sys.stdout)
    except GeometryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
