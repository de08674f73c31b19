"""Command-line batch entry point.

Subcommands cover the full experiment surface: generate constellations, trace
single orbits, sweep the relaxation parameter, raster iteration-count maps,
estimate success rates, and serve the HTTP API.  Exit code 0 means the
command completed; any failure prints a one-line diagnostic and returns 1.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algorithms import (
    DEFAULT_EPSILON,
    DEFAULT_MAX_ITERATIONS,
    LAMBDA_BEST,
    LAMBDA_DEFAULT,
    AlgorithmConfig,
    AlgorithmKind,
    run_orbit,
)
from .constellations import (
    REFERENCE_SEEDS,
    CircleSpec,
    ConstellationPreset,
    RandomSpec,
    Ring,
    circles_constellation,
    preset_spec,
    random_constellation,
)
from .experiments import cartographer, lambda_sweep, pick_best_lambda, success_rate
from .geometry import GLOBAL_REGION, LOCAL_REGION, Constellation, Point, Region
from .io_formats import (
    dump_constellation,
    encode_map_pgm,
    load_constellation,
    prepend_manifest,
    write_sweep_csv,
    write_trace_csv,
)
from .sampling import sample_region_xy

__all__ = ["main"]


def _parse_algo(text: str) -> AlgorithmKind:
    return AlgorithmKind.parse(text)


def _parse_lambda(text: str, kind: AlgorithmKind) -> float:
    if text == "default":
        return LAMBDA_DEFAULT
    if text == "best":
        return LAMBDA_BEST[kind]
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"--lambda must be a number, 'default', or 'best', got {text!r}") from None


def _parse_point(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'x,y', got {text!r}")
    return Point(float(parts[0]), float(parts[1]))


def _parse_size(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise ValueError(f"expected WIDTHxHEIGHT, got {text!r}")
    w, h = int(parts[0]), int(parts[1])
    if w < 1 or h < 1:
        raise ValueError("size must be at least 1x1")
    return w, h


def _parse_circles(text: str) -> CircleSpec:
    """'4:8,8:16' -> one concentric circle per set (radius:count pairs)."""
    sets = []
    for item in text.split(","):
        parts = item.split(":")
        if len(parts) != 2:
            raise ValueError(f"expected RADIUS:COUNT, got {item!r}")
        sets.append((Ring(radius=float(parts[0]), count=int(parts[1])),))
    return CircleSpec(sets=tuple(sets))


def _load(path: str) -> Constellation:
    return load_constellation(Path(path).read_bytes())


def _resolve_region(name: str, bounds: str | None) -> Region:
    if name == "local":
        return LOCAL_REGION
    if name == "global":
        return GLOBAL_REGION
    if bounds is None:
        raise ValueError("--region custom needs --bounds xmin,xmax,ymin,ymax")
    parts = bounds.split(",")
    if len(parts) != 4:
        raise ValueError(f"expected xmin,xmax,ymin,ymax, got {bounds!r}")
    return Region(*(float(p) for p in parts))


def _region_fields(region: Region) -> str:
    return " ".join(repr(v) for v in (region.xmin, region.xmax, region.ymin, region.ymax))


def _write(path: str, payload: bytes):
    Path(path).write_bytes(payload)


def cmd_generate(args) -> int:
    if args.circles is not None:
        constellation = circles_constellation(_parse_circles(args.circles))
    elif args.preset is not None:
        preset = ConstellationPreset.parse(args.preset)
        seed = REFERENCE_SEEDS[preset] if args.seed is None else args.seed
        constellation = random_constellation(preset_spec(preset, seed=seed))
    elif args.sets is not None:
        if args.max_points is None:
            raise ValueError("--sets needs --max-points")
        if args.seed is None:
            raise ValueError("--sets needs --seed")
        spec = RandomSpec(seed=args.seed, num_sets=args.sets, max_points_per_set=args.max_points)
        constellation = random_constellation(spec)
    else:
        raise ValueError("choose one of --preset, --sets/--max-points, or --circles")
    _write(args.out, dump_constellation(constellation))
    sizes = " ".join(str(len(s.points)) for s in constellation.sets)
    print(f"{constellation.m} sets, sizes: {sizes}")
    print(f"wrote {args.out} (id {constellation.content_id()})")
    return 0


def cmd_orbit(args) -> int:
    constellation = _load(args.constellation)
    kind = _parse_algo(args.algo)
    lam = _parse_lambda(args.lam, kind)
    config = AlgorithmConfig(kind=kind, lam=lam)
    start = _parse_point(args.start)
    trace = run_orbit(config, constellation, start)
    if args.out_csv:
        body = write_trace_csv(trace)
        manifest = {
            "algorithm": kind.value,
            "lambda": lam,
            "epsilon": config.epsilon,
            "max_iterations": config.max_iterations,
            "start": f"{start.x!r} {start.y!r}",
            "constellation_id": constellation.content_id(),
        }
        _write(args.out_csv, prepend_manifest(body, "orbit-trace", manifest))
    if trace.solved:
        print(f"Solved at {trace.solved_at}")
    else:
        print(f"Exhausted after {trace.iterations} iterations")
    return 0


def cmd_sweep(args) -> int:
    constellation = _load(args.constellation)
    kind = _parse_algo(args.algo)
    region = _resolve_region(args.region, args.bounds)
    sweep = lambda_sweep(
        kind,
        constellation,
        region,
        n_lambda=args.n_lambda,
        n_starts=args.n_starts,
        workers=args.threads,
    )
    best = pick_best_lambda(sweep)
    if args.out_csv:
        body = write_sweep_csv(sweep)
        manifest = {
            "algorithm": kind.value,
            "n_lambda": args.n_lambda,
            "starts_per_lambda": args.n_starts,
            "epsilon": DEFAULT_EPSILON,
            "max_iterations": DEFAULT_MAX_ITERATIONS,
            "region": _region_fields(region),
            "constellation_id": constellation.content_id(),
        }
        _write(args.out_csv, prepend_manifest(body, "lambda-sweep", manifest))
    rate = sweep.rates[sweep.lambdas.index(best)]
    print(f"best lambda {best!r} (rate {rate:.3f})")
    return 0


def cmd_map(args) -> int:
    constellation = _load(args.constellation)
    kind = _parse_algo(args.algo)
    lam = _parse_lambda(args.lam, kind)
    config = AlgorithmConfig(kind=kind, lam=lam)
    region = _resolve_region(args.region, args.bounds)
    width, height = _parse_size(args.size)
    imap = cartographer(config, constellation, region, width, height, workers=args.threads)
    _write(args.out_pgm, encode_map_pgm(imap))
    summary = imap.success_summary()
    print(f"wrote {args.out_pgm} ({width}x{height}, success rate {summary.rate:.3f})")
    return 0


def cmd_rates(args) -> int:
    constellation = _load(args.constellation)
    kind = _parse_algo(args.algo)
    lam = _parse_lambda(args.lam, kind)
    config = AlgorithmConfig(kind=kind, lam=lam)
    region = _resolve_region(args.region, args.bounds)
    starts = sample_region_xy(region, args.n_starts, start_index=1)
    summary = success_rate(config, constellation, starts)
    print(f"rate {summary.rate:.3f}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feaslab",
        description="Projection-algorithm experiments on finite planar point sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_threads(p):
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: FEASLAB_THREADS or CPU count)")

    def add_algo(p):
        p.add_argument("--algo", required=True, help="cycp | exparp | dr | cycdr")
        p.add_argument("--lambda", dest="lam", default="default",
                       help="relaxation parameter in (0,2), or 'default' / 'best'")

    def add_region(p, default="local"):
        p.add_argument("--region", choices=["local", "global", "custom"], default=default)
        p.add_argument("--bounds", default=None,
                       help="xmin,xmax,ymin,ymax with --region custom; "
                            "use --bounds=-1,1,-1,1 for negative values")

    p = sub.add_parser("generate", help="create a constellation file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--preset", help="few-few | few-many | many-few | many-many")
    group.add_argument("--sets", type=int, help="number of random sets")
    group.add_argument("--circles", help="concentric circles, e.g. '4:8,8:16'")
    p.add_argument("--max-points", type=int, default=None, help="max points per random set")
    p.add_argument("--seed", type=int, default=None, help="generator seed")
    p.add_argument("--out", required=True, help="output constellation file")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("orbit", help="trace one orbit from a starting point")
    p.add_argument("--constellation", required=True)
    add_algo(p)
    p.add_argument("--start", required=True, help="starting point as 'x,y'")
    p.add_argument("--out-csv", default=None)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("sweep", help="success rate across a lambda grid")
    p.add_argument("--constellation", required=True)
    p.add_argument("--algo", required=True, help="cycp | exparp | dr | cycdr")
    p.add_argument("--n-lambda", type=int, default=200)
    p.add_argument("--n-starts", type=int, default=5000)
    add_region(p)
    p.add_argument("--out-csv", default=None)
    add_threads(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("map", help="iteration-count raster as a PGM image")
    p.add_argument("--constellation", required=True)
    add_algo(p)
    add_region(p)
    p.add_argument("--size", default="512x512", help="raster size as WIDTHxHEIGHT")
    p.add_argument("--out-pgm", required=True)
    add_threads(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("rates", help="success rate over QMC starts")
    p.add_argument("--constellation", required=True)
    add_algo(p)
    add_region(p)
    p.add_argument("--n-starts", type=int, default=10_000)
    add_threads(p)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("serve", help="run the local HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--static", default=None, help="directory with the built explorer UI")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
