"""Command line front end: generate maps, run analyses, emit CSV/JSON.

Subcommands map one-to-one onto library operations.  Tables go to
--out when given, else to stdout; each table-producing command also
reports a small JSON summary (to stdout when the table went to a file,
to stderr when the table occupied stdout).  Exit codes: 0 success,
1 validation problem (bad flags, bad files, rejected hypotheses),
2 numeric non-convergence or degenerate data.

A --config JSON file supplies defaults using the flag names (dashes or
underscores); explicit flags override it.  All randomness is seeded,
default seed 0, so identical invocations produce byte-identical output.
HEISENLAB_THREADS caps BLAS-level parallelism for reproducible timing.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import generators, serialize
from .contact import DegenerateMapError, SampledMap, contact_residual, \
    holder_exponent_estimate, injectivity_collision_search, \
    loop_integral_residual, rank_report
from .covering import DecayConfig, PointCloud, content_decay_experiment, \
    greedy_ball_covering
from .curves import NonConvergenceError, PlanarPolyline, geodesic, \
    horizontal_lift
from .extension import CircleDomain, IntervalDomain, extend_circle, \
    extend_interval
from .symplectic import isometry_between_isotropic, \
    random_isotropic_subspace
from .trace import run_trace, trace_to_csv


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract reserves 2 for
    # numeric failures, so route usage problems through exit code 1
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


# ------------------------------------------------------------- helpers


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in str(text).split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}")


def _load_json_arg(value: str):
    """Inline JSON if it looks like JSON, else a file path."""
    s = value.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    return serialize.load_json(value)


def _load_point(value: str) -> np.ndarray:
    return serialize.point_from_json(_load_json_arg(value))


def _planar_samples(obj: dict) -> tuple:
    """Planar polyline from curve JSON: rows are [x1,y1,...] or points."""
    rows = obj["points"]
    out = []
    for r in rows:
        if isinstance(r, dict):
            out.append([float(v) for v in r["z"]])
        else:
            out.append([float(v) for v in r])
    arr = np.asarray(out, dtype=float)
    if arr.ndim != 2 or arr.shape[1] % 2 != 0 or arr.shape[1] == 0:
        raise ValueError(
            f"planar samples must have even width, got shape {arr.shape}")
    return arr, bool(obj.get("closed", False))


def _load_cloud_points(path: str) -> np.ndarray:
    if str(path).endswith(".csv"):
        with open(path) as fh:
            return serialize.curve_from_csv(fh.read())
    obj = serialize.load_json(path)
    if isinstance(obj, dict):
        pts, _ = serialize.curve_from_json(obj)
        return pts
    rows = [serialize.point_from_json(r) if isinstance(r, dict) else r
            for r in obj]
    return np.asarray(rows, dtype=float)


_GENERATORS = ("frame", "normal", "corner", "pure-t", "embed")


def _generated_map(args) -> SampledMap:
    if args.k is None or args.n is None:
        raise ValueError("--generate needs --k and --n")
    k, n = args.k, args.n
    j = args.j if args.j is not None else min(k, n)
    shape = _ints(args.grid) if args.grid else generators.suite_shape(k)
    if len(shape) == 1:
        shape = shape * k
    box = [[0.0, 1.0]] * k if args.generate == "normal" else \
        [[-1.0, 1.0]] * k
    if args.generate == "frame":
        fn = generators.fixed_frame_map(k, n, j, seed=args.seed)
    elif args.generate == "normal":
        fn = generators.sard_normal_map(k, n, j, seed=args.seed)
    elif args.generate == "corner":
        fn = generators.corner_curve_map(k, n, seed=args.seed)
    elif args.generate == "pure-t":
        fn = generators.pure_t_map(k, n)
    elif args.generate == "embed":
        fn = generators.isotropic_embedding(k, n, j)
    else:
        raise ValueError(f"unknown generator {args.generate!r}")
    return SampledMap.from_function(fn, box, shape)


def _load_map(args) -> SampledMap:
    if getattr(args, "map", None):
        return serialize.sampled_map_from_json(serialize.load_json(args.map))
    if getattr(args, "generate", None):
        return _generated_map(args)
    raise ValueError("need --map FILE or --generate KIND")


def _emit_table(text: str, out, summary: dict | None = None) -> None:
    payload = json.dumps(summary, sort_keys=True) if summary is not None \
        else None
    if out:
        serialize.write_text(out, text)
        if payload is not None:
            sys.stdout.write(payload + "\n")
    else:
        sys.stdout.write(text)
        if payload is not None:
            sys.stderr.write(payload + "\n")


def _add_map_source(p) -> None:
    p.add_argument("--map", help="sampled-map JSON file")
    p.add_argument("--generate", choices=_GENERATORS,
                   help="build a reference map instead of reading one")
    p.add_argument("--k", type=int, help="domain dimension for --generate")
    p.add_argument("--n", type=int, help="target index n for --generate")
    p.add_argument("--j", type=int, help="rank for --generate (default "
                                         "min(k, n))")
    p.add_argument("--grid", help="comma-separated grid shape, or one "
                                  "size reused per axis")


# ------------------------------------------------------------ commands


def _cmd_lift(args) -> int:
    obj = _load_json_arg(args.curve)
    samples, closed = _planar_samples(obj)
    lift = horizontal_lift(PlanarPolyline(samples, closed=closed),
                           t0=args.t0)
    _emit_table(serialize.curve_to_csv(lift.samples), args.out)
    return 0


def _cmd_geodesic(args) -> int:
    if args.frm is None or args.to is None:
        raise ValueError("need --from and --to points")
    p = _load_point(args.frm)
    q = _load_point(args.to)
    g = geodesic(p, q, tol=args.tol, samples=args.samples)
    _emit_table(serialize.curve_to_csv(g.samples), args.out)
    return 0


def _cmd_extend(args) -> int:
    if args.data is None:
        raise ValueError("need --data with partial curve JSON")
    data = serialize.partial_data_from_json(_load_json_arg(args.data))
    if isinstance(data.domain, IntervalDomain):
        out = extend_interval(data, step=args.step)
    else:
        out = extend_circle(data, step=args.step)
    _emit_table(serialize.curve_to_csv(out.samples), args.out)
    return 0


def _cmd_isometry(args) -> int:
    if (args.source is None) != (args.target is None):
        raise ValueError("--source and --target go together")
    if args.source:
        V = serialize.subspace_from_json(_load_json_arg(args.source))
        W = serialize.subspace_from_json(_load_json_arg(args.target))
    else:
        if args.n is None or args.j is None:
            raise ValueError("need --n and --j (or --source/--target)")
        rng = np.random.default_rng(args.seed)
        V = random_isotropic_subspace(args.n, args.j, rng)
        W = random_isotropic_subspace(args.n, args.j, rng)
    iso = isometry_between_isotropic(V, W)
    obj = {"n": V.n,
           "phi": [[float(v) for v in row] for row in iso.phi],
           "source": serialize.subspace_to_json(V),
           "target": serialize.subspace_to_json(W)}
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if args.out:
        serialize.write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_contact_report(args) -> int:
    m = _load_map(args)
    if args.residual_only:
        rep = contact_residual(m)
    else:
        rep = rank_report(m, contact_tol=args.contact_tol,
                          rank_tol=args.rank_tol,
                          defect_tol=args.defect_tol)
    summary = {"max_residual": float(rep.quantiles["max"]),
               "flags": len(rep.flags)}
    _emit_table(serialize.report_to_csv(rep, m.shape), args.out, summary)
    return 0


def _cmd_loop_residual(args) -> int:
    m = _load_map(args)
    if args.index is None or args.radius is None:
        raise ValueError("need --index and --radius")
    idx = _ints(args.index)
    axes = _ints(args.axes)
    val = loop_integral_residual(m, idx, args.radius, axes=axes)
    obj = {"index": list(idx), "radius": args.radius,
           "axes": list(axes), "value": val,
           "disc_area": float(np.pi * args.radius ** 2)}
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    return 0


def _cmd_content(args) -> int:
    if args.points is None or args.r_max is None:
        raise ValueError("need --points and --r-max")
    pts = _load_cloud_points(args.points)
    cloud = PointCloud(pts, metric=args.metric)
    cov = greedy_ball_covering(cloud, r_max=args.r_max, s=args.s)
    summary = {"balls": int(cov.centers.shape[0]),
               "content": float(cov.content()), "s": args.s,
               "r_max": args.r_max}
    _emit_table(serialize.covering_to_csv(cov), args.out, summary)
    return 0


def _cmd_decay(args) -> int:
    if args.k is None or args.n is None or args.j is None:
        raise ValueError("need --k, --n and --j")
    cfg = DecayConfig(k=args.k, n=args.n, j=args.j,
                      mdiv_ladder=_ints(args.mdiv),
                      shape=_ints(args.shape) if args.shape else None,
                      seed=args.seed)
    result = content_decay_experiment(cfg)
    table, sidecar = serialize.decay_to_csv(result)
    if args.out:
        serialize.write_text(args.out, table)
        base, ext = os.path.splitext(args.out)
        side_path = base + ".json" if ext == ".csv" else args.out + ".json"
        serialize.dump_json(sidecar, side_path)
        sys.stdout.write(json.dumps({"slope": result.slope,
                                     "sidecar": side_path},
                                    sort_keys=True) + "\n")
    else:
        sys.stdout.write(table)
        sys.stderr.write(json.dumps(sidecar, sort_keys=True) + "\n")
    return 0


def _cmd_holder(args) -> int:
    m = _load_map(args)
    alpha, profile = holder_exponent_estimate(m)
    summary = {"alpha_hat": float(alpha)}
    _emit_table(serialize.holder_profile_to_csv(profile), args.out,
                summary)
    return 0


def _cmd_collide(args) -> int:
    m = _load_map(args)
    if args.eps is None or args.delta is None:
        raise ValueError("need --eps and --delta")
    pairs = injectivity_collision_search(m, eps=args.eps,
                                         delta=args.delta,
                                         max_pairs=args.max_pairs)
    summary = {"pairs": len(pairs)}
    _emit_table(serialize.collisions_to_csv(pairs), args.out, summary)
    return 0


def _cmd_trace(args) -> int:
    rows = run_trace()
    summary = {"anchors": len(rows),
               "failed": sum(1 for r in rows if r.status != "pass")}
    _emit_table(trace_to_csv(rows), args.out, summary)
    return 0


# -------------------------------------------------------------- parser


def _build_parser() -> tuple:
    parser = _Parser(prog="heisenlab",
                     description="Heisenberg group experiments")
    sub = parser.add_subparsers(dest="command")
    parsers = {}

    def new(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--config", help="JSON file of default flag values")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--seed", type=int, default=0)
        parsers[name] = p
        return p

    p = new("lift", _cmd_lift, help="lift a planar polyline")
    p.add_argument("--curve", help="planar curve JSON (file or inline)")
    p.add_argument("--t0", type=float, default=0.0)

    p = new("geodesic", _cmd_geodesic, help="join two points")
    p.add_argument("--from", dest="frm", help="point JSON (file or inline)")
    p.add_argument("--to", help="point JSON (file or inline)")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--samples", type=int)

    p = new("extend", _cmd_extend, help="extend partial curve data")
    p.add_argument("--data", help="partial data JSON (file or inline)")
    p.add_argument("--step", type=float)

    p = new("isometry", _cmd_isometry,
            help="match two isotropic subspaces")
    p.add_argument("--n", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--source", help="subspace JSON (file or inline)")
    p.add_argument("--target", help="subspace JSON (file or inline)")

    p = new("contact-report", _cmd_contact_report,
            help="residual / rank / isotropy table")
    _add_map_source(p)
    p.add_argument("--contact-tol", type=float)
    p.add_argument("--rank-tol", type=float, default=1e-8)
    p.add_argument("--defect-tol", type=float, default=1e-6)
    p.add_argument("--residual-only", action="store_true")

    p = new("loop-residual", _cmd_loop_residual,
            help="height-form circulation around a grid loop")
    _add_map_source(p)
    p.add_argument("--index", help="comma-separated grid multi-index")
    p.add_argument("--radius", type=float)
    p.add_argument("--axes", default="0,1")

    p = new("content", _cmd_content, help="greedy covering content")
    p.add_argument("--points", help="point cloud (curve CSV or JSON)")
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--r-max", type=float)
    p.add_argument("--metric", choices=("koranyi", "euclidean"),
                   default="koranyi")

    p = new("decay", _cmd_decay, help="content decay across cube ladders")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--mdiv", default="2,4,8,16,32")
    p.add_argument("--shape", help="comma-separated grid shape override")

    p = new("holder", _cmd_holder, help="Holder exponent estimate")
    _add_map_source(p)

    p = new("collide", _cmd_collide, help="near-collision search")
    _add_map_source(p)
    p.add_argument("--eps", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--max-pairs", type=int)

    new("trace", _cmd_trace, help="claim traceability report")

    return parser, parsers


def _apply_config(parser, parsers, argv, args):
    path = getattr(args, "config", None)
    if not path:
        return args
    cfg = serialize.load_json(path)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object of flag values")
    sub = parsers[args.command]
    dests = {a.dest for a in sub._actions} - {"help", "config", "fn"}
    defaults = {}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest == "from":
            dest = "frm"
        if dest not in dests:
            raise ValueError(f"config key {key!r} is not a flag of "
                             f"{args.command!r}")
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        defaults[dest] = value
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def run(argv=None) -> int:
    """Parse argv, dispatch, and map failures onto exit codes."""
    if argv is None:
        argv = sys.argv[1:]
    parser, parsers = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) is None:
            parser.print_usage(sys.stderr)
            return 1
        args = _apply_config(parser, parsers, argv, args)

        limit = os.environ.get("HEISENLAB_THREADS")
        if limit:
            try:
                from threadpoolctl import threadpool_limits
            except ImportError:
                return args.fn(args)
            with threadpool_limits(limits=int(limit)):
                return args.fn(args)
        return args.fn(args)
    except SystemExit as exc:          # argparse -h prints and exits 0
        return 0 if exc.code in (0, None) else 1
    except _UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 1
    except (NonConvergenceError, DegenerateMapError) as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
