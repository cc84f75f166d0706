"""torus-thurston: command-line access to the weak metric and friends.

Every command prints one JSON object (or CSV with --csv).  Exit codes:
0 ok, 1 selftest failure, 2 bad arguments, 3 input outside the domain.
"""
from __future__ import annotations

import argparse
import configparser
import json
import math
import os
import re
import sys
import time

from . import __version__, selftest
from .errors import DomainError
from .finsler import GeodesicArc, PiecewisePath, Polyline, QuadratureConfig, norm_delta_p, path_length
from .halfplane import HalfPlanePoint, TangentVector, geodesic_arc_param, geodesic_endpoints, geodesic_through, Semicircle
from .oracle import OracleConfig
from .shapes import (
    backward_ball_boundary,
    ellipse_foci,
    forward_ball_boundary,
    unit_circle_delta,
    unit_circle_delta_p,
)
from .thurston import check_p, delta, delta_oracle, delta_p, extremal_slopes
from .torus import kappa_sup

CONFIG_ENV = "TORUS_THURSTON_CONFIG"
DEFAULTS = {"tol": 1e-10, "grid_size": 4096, "seed": 42}

EXIT_SELFTEST_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^[+-]?{_NUM}$")
_IMAG = re.compile(rf"^(?P<sign>[+-]?)(?P<im>{_NUM})?i$")
_FULL = re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<sign>[+-])(?P<im>{_NUM})?i$")


# ---------------------------------------------------------------- parsing


def parse_complex(text: str) -> complex:
    """Parse 'a+bi', 'a', 'bi', 'i' or '-i'; whitespace is ignored."""
    s = "".join(text.split())
    if _REAL.match(s):
        return complex(float(s), 0.0)
    m = _FULL.match(s) or _IMAG.match(s)
    if not m:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}")
    im = float(m["im"]) if m["im"] is not None else 1.0
    if m["sign"] == "-":
        im = -im
    re_part = float(m["re"]) if "re" in m.groupdict() else 0.0
    return complex(re_part, im)


def _complex_arg(text: str) -> complex:
    z = parse_complex(text)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise argparse.ArgumentTypeError(f"non-finite complex literal: {text!r}")
    return z


def _p_arg(text: str) -> float:
    try:
        return check_p(float(text))
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def _protect_negatives(argv: list[str]) -> list[str]:
    """Stop argparse from mistaking '-1+2i' for an option."""
    out = []
    for tok in argv:
        plain = "".join(tok.split())
        if tok.startswith("-") and (_REAL.match(plain) or _IMAG.match(plain) or _FULL.match(plain)):
            tok = " " + tok
        out.append(tok)
    return out


def load_config(path: str | None) -> dict:
    """Read tol / grid_size / seed from a flat 'key = value' file (INI sections optional)."""
    if not path:
        return {}
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    cp = configparser.ConfigParser()
    cp.read_string(text if text.lstrip().startswith("[") else "[torus-thurston]\n" + text)
    values = {}
    for section in cp.sections():
        for key, raw in cp.items(section):
            key = key.replace("-", "_")
            if key not in DEFAULTS:
                raise ValueError(f"unknown config key {key!r} in {path}")
            values[key] = type(DEFAULTS[key])(float(raw) if key == "tol" else int(raw))
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="relative tolerance for path quadrature")
    common.add_argument("--grid-size", type=int, default=None, help="oracle grid size")
    common.add_argument("--seed", type=int, default=None, help="random seed (selftest)")
    common.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    common.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identity)")

    parser = argparse.ArgumentParser(prog="torus-thurston", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    sp = add("dist", "delta_p(z1, z2)")
    sp.add_argument("z1", type=_complex_arg)
    sp.add_argument("z2", type=_complex_arg)
    sp.add_argument("--p", type=_p_arg, default=0.0)
    sp.add_argument("--oracle", action="store_true", help="also run the brute-force sup search")

    sp = add("slopes", "extremal slopes x+ and x-")
    sp.add_argument("z1", type=_complex_arg)
    sp.add_argument("z2", type=_complex_arg)

    sp = add("geodesic", "sample the geodesic arc from z1 to z2")
    sp.add_argument("z1", type=_complex_arg)
    sp.add_argument("z2", type=_complex_arg)
    sp.add_argument("--n", type=_positive_int, default=64)

    sp = add("norm", "weak norm of the tangent vector v at z")
    sp.add_argument("z", type=_complex_arg)
    sp.add_argument("v", type=_complex_arg)
    sp.add_argument("--p", type=_p_arg, default=0.0)

    sp = add("circle", "unit circle of the weak norm at z")
    sp.add_argument("z", type=_complex_arg)
    sp.add_argument("--p", type=_p_arg, default=0.0)
    sp.add_argument("--n", type=_positive_int, default=256)

    sp = add("ball", "boundary of a forward or backward ball")
    sp.add_argument("z", type=_complex_arg)
    sp.add_argument("r", type=float)
    sp.add_argument("--n", type=_positive_int, default=256)
    sp.add_argument("--direction", choices=("fwd", "bwd"), default="fwd")

    sp = add("kappa", "sup of curve-length ratios over classes with q <= q_max")
    sp.add_argument("z1", type=_complex_arg)
    sp.add_argument("z2", type=_complex_arg)
    sp.add_argument("--q-max", type=_positive_int, default=10_000)

    sp = add("length", "delta_p length of a path read from a JSON file")
    sp.add_argument("path_file")
    sp.add_argument("--p", type=_p_arg, default=0.0)

    sp = add("selftest", "randomised invariant suite")
    sp.add_argument("--samples", type=_positive_int, default=200)
    return parser


# ---------------------------------------------------------------- output


def _num(x):
    if isinstance(x, float):
        if math.isnan(x):
            return '"nan"'
        if math.isinf(x):
            return '"inf"' if x > 0 else '"-inf"'
        return format(x, ".17g")
    return json.dumps(x)


def dumps(obj) -> str:
    """Deterministic JSON: insertion key order, reals to 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    return _num(float(obj))


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _polyline(pl) -> dict:
    return {"closed": pl.closed, "points": [[float(u), float(v)] for u, v in pl.points]}


def to_csv(record: dict) -> str:
    """Polylines become 'u,v' rows; otherwise scalar result fields become 'key,value' rows."""
    result = record["result"]
    rows = []
    if "points" in result:
        rows.append("u,v")
        rows += [f"{_num(float(u))},{_num(float(v))}" for u, v in result["points"]]
    else:
        rows.append("key,value")
        for key, val in result.items():
            if isinstance(val, (int, float)) and not isinstance(val, bool):
                rows.append(f"{key},{_num(float(val))}")
            elif isinstance(val, (bool, str)):
                rows.append(f"{key},{val}")
    return "\n".join(rows).replace('"', "")


# ---------------------------------------------------------------- commands


def cmd_dist(args, cfg):
    z1, z2 = HalfPlanePoint.from_complex(args.z1), HalfPlanePoint.from_complex(args.z2)
    inputs = {"z1": _pair(z1), "z2": _pair(z2), "p": args.p, "oracle": args.oracle}
    result = {"value": delta_p(args.p, z1, z2)}
    if args.oracle and z1 != z2:
        orc = delta_oracle(z1, z2, cfg["oracle"])
        busemann = 0.5 * args.p * math.log(z1.im / z2.im)
        result["oracle_value"] = orc.value + busemann
        result["oracle_argmax"] = orc.argmax
        result["oracle_attained"] = orc.attained
        result["discrepancy"] = abs(result["value"] - result["oracle_value"])
    return inputs, result


def cmd_slopes(args, cfg):
    z1, z2 = HalfPlanePoint.from_complex(args.z1), HalfPlanePoint.from_complex(args.z2)
    x_plus, x_minus = extremal_slopes(z1, z2)
    return {"z1": _pair(z1), "z2": _pair(z2)}, {"x_plus": x_plus, "x_minus": x_minus, "delta": delta(z1, z2)}


def cmd_geodesic(args, cfg):
    z1, z2 = HalfPlanePoint.from_complex(args.z1), HalfPlanePoint.from_complex(args.z2)
    g = geodesic_through(z1, z2)
    n = max(args.n, 2)
    pts = [_pair(geodesic_arc_param(g, z1, z2, k / (n - 1)).z) for k in range(n)]
    start, end = geodesic_endpoints(g)
    if isinstance(g, Semicircle):
        shape = {"kind": "semicircle", "center": g.center, "radius": g.radius}
    else:
        shape = {"kind": "vertical", "x": g.x}
    result = {"geodesic": shape, "endpoints": [start, end], "closed": False, "points": pts}
    return {"z1": _pair(z1), "z2": _pair(z2), "n": n}, result


def cmd_norm(args, cfg):
    z = HalfPlanePoint.from_complex(args.z)
    tv = TangentVector(z, args.v.real, args.v.imag)
    return {"z": _pair(z), "v": _pair(args.v), "p": args.p}, {"value": norm_delta_p(args.p, tv)}


def cmd_circle(args, cfg):
    z = HalfPlanePoint.from_complex(args.z)
    inputs = {"z": _pair(z), "p": args.p, "n": args.n}
    if args.p == 0.0:
        return inputs, {"kind": "parabola", "foci": [[0.0, 0.0]], **_polyline(unit_circle_delta(z, args.n))}
    foci = ellipse_foci(args.p, z)
    return inputs, {"kind": "ellipse", "foci": [list(f) for f in foci], **_polyline(unit_circle_delta_p(args.p, z, args.n))}


def cmd_ball(args, cfg):
    z = HalfPlanePoint.from_complex(args.z)
    inputs = {"z": _pair(z), "r": args.r, "n": args.n, "direction": args.direction}
    if args.direction == "fwd":
        pl = forward_ball_boundary(z, args.r, args.n)
    else:
        pl = backward_ball_boundary(z, args.r, args.n)
    return inputs, {"direction": args.direction, **_polyline(pl)}


def cmd_kappa(args, cfg):
    z1, z2 = HalfPlanePoint.from_complex(args.z1), HalfPlanePoint.from_complex(args.z2)
    value, best = kappa_sup(z1, z2, args.q_max)
    d = delta(z1, z2)
    result = {"value": value, "class": [best.p, best.q], "delta": d, "gap": d - value}
    return {"z1": _pair(z1), "z2": _pair(z2), "q_max": args.q_max}, result


def read_path(data: dict) -> PiecewisePath:
    """Build a path from {"segments": [{"type": "polyline", "vertices": [[x, y], ...]},
    {"type": "geodesic", "from": [x, y], "to": [x, y]}]}."""
    segments = []
    for seg in data["segments"]:
        kind = seg["type"]
        if kind == "polyline":
            segments.append(Polyline(tuple(HalfPlanePoint(*map(float, v)) for v in seg["vertices"])))
        elif kind == "geodesic":
            segments.append(GeodesicArc(HalfPlanePoint(*map(float, seg["from"])), HalfPlanePoint(*map(float, seg["to"]))))
        else:
            raise ValueError(f"unknown segment type {kind!r}")
    return PiecewisePath(tuple(segments))


def cmd_length(args, cfg):
    with open(args.path_file, encoding="utf-8") as fh:
        data = json.load(fh)
    path = read_path(data)
    value = path_length(args.p, path, cfg["quad"])
    return {"path": data, "p": args.p}, {"value": value, "segments": len(path.segments)}


def cmd_selftest(args, cfg):
    report = selftest.run(cfg["seed"], args.samples, cfg["oracle"], cfg["quad"])
    return {"seed": cfg["seed"], "samples": args.samples}, report


COMMANDS = {
    "dist": cmd_dist,
    "slopes": cmd_slopes,
    "geodesic": cmd_geodesic,
    "norm": cmd_norm,
    "circle": cmd_circle,
    "ball": cmd_ball,
    "kappa": cmd_kappa,
    "length": cmd_length,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negatives(argv))
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --help
        return int(exc.code or 0)

    try:
        settings = dict(DEFAULTS)
        settings.update(load_config(os.environ.get(CONFIG_ENV)))
    except (OSError, ValueError, configparser.Error) as exc:
        print(f"torus-thurston: bad config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for key in DEFAULTS:
        if getattr(args, key) is not None:
            settings[key] = getattr(args, key)

    try:
        cfg = {
            "seed": settings["seed"],
            "oracle": OracleConfig(grid_size=settings["grid_size"]),
            "quad": QuadratureConfig(rel_tol=settings["tol"]),
        }
    except ValueError as exc:
        print(f"torus-thurston: {exc}", file=sys.stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        inputs, result = COMMANDS[args.command](args, cfg)
    except DomainError as exc:
        print(f"torus-thurston: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, ValueError, KeyError, TypeError) as exc:
        # unreadable or malformed path file
        print(f"torus-thurston: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = (time.perf_counter() - start) * 1e3 if args.timing else None

    record = {
        "command": args.command,
        "inputs": inputs,
        "result": result,
        "meta": {
            "tolerances": {"quadrature_rel_tol": cfg["quad"].rel_tol, "oracle_refine_tol": cfg["oracle"].refine_tol},
            "oracle": {"grid_size": cfg["oracle"].grid_size},
            "wall_time_ms": elapsed,
        },
    }
    print(to_csv(record) if args.csv else dumps(record))
    if args.command == "selftest" and not result["passed"]:
        return EXIT_SELFTEST_FAILED
    return 0


if __name__ == "__main__":
    sys.exit(main())
