"""Command-line interface.

Exit codes: 0 success, 1 validation problem (config, arguments, failed
verification), 2 numerical non-convergence, 3 I/O failure.  Errors print
one machine-readable line to stderr of the form

    projfif-error {"kind": ..., "exit": ..., "message": ...}
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .classical import ClassicalFifSpec, classical_fif
from .config import JobSpec, parse_config
from .engine import (
    PointCloud,
    chaos_game,
    cloud_from_graph,
    deterministic_attractor,
    endpoint_segment,
    evaluate,
    fixed_point_graph,
    slice_at_level,
)
from .errors import ConvergenceError, ValidationError
from .ifs import (
    InterpolationData,
    ProjIfs,
    build_ifs,
    contraction_certificate,
    verify_joinup,
)
from .output import (
    atomic_write_text,
    rasterize,
    write_point_cloud_csv,
    write_raster,
    write_slice_csv,
    write_vector_polyline,
)
from .projective import ProjPoint, dist

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NONCONVERGENCE = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # route argparse failures through the validation exit code
    def error(self, message):
        raise ValidationError(message)


def _load_job(path: str) -> JobSpec:
    text = Path(path).read_text()
    return parse_config(text)


def _job_ifs(job: JobSpec) -> ProjIfs:
    points = [ProjPoint(*triple) for triple in job.points]
    return build_ifs(InterpolationData(points), job.scales)


def _default_viewport(job: JobSpec) -> tuple[float, float, float, float]:
    if job.viewport is not None:
        return job.viewport
    xs = [x / z for x, _, z in job.points]
    ys = [y / z for _, y, z in job.points]
    mx = 0.1 * (max(xs) - min(xs))
    my = max(0.1 * (max(ys) - min(ys)), 0.5)
    return (min(xs) - mx, max(xs) + mx, min(ys) - my, max(ys) + my)


def cmd_build(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    header = f"{'n':>3} {'a':>18} {'b':>18} {'c':>18} {'d':>18} {'f':>18}"
    rows = [header]
    for i, m in enumerate(ifs.maps, start=1):
        rows.append(
            f"{i:>3} {m.a:>18.12g} {m.b:>18.12g} {m.c:>18.12g} "
            f"{m.d:>18.12g} {m.f:>18.12g}"
        )
    table = "\n".join(rows)
    print(table)
    if args.out:
        body = ["n,a,b,c,d,f"]
        for i, m in enumerate(ifs.maps, start=1):
            body.append(f"{i},{m.a!r},{m.b!r},{m.c!r},{m.d!r},{m.f!r}")
        atomic_write_text(args.out, "\n".join(body) + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_certificate(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    theta = args.theta if args.theta is not None else job.theta
    cert = contraction_certificate(ifs, theta)
    text = cert.describe()
    print(text)
    if args.out:
        atomic_write_text(args.out, text + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def _solve(job: JobSpec, ifs: ProjIfs):
    graph, trace = fixed_point_graph(
        ifs, grid_m=job.grid_m, tol=job.tol, max_iter=job.max_iter
    )
    if not trace.converged:
        raise ConvergenceError(
            f"no convergence after {trace.iterations} iterations "
            f"(last delta {trace.deltas[-1]:.3e}, tol {trace.tol:.3e})"
        )
    return graph, trace


def cmd_fixed_point(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    graph, trace = _solve(job, ifs)
    out = args.out or str(_outdir(job, args) / "graph.csv")
    artifact = write_point_cloud_csv(cloud_from_graph(graph), out)
    print(
        f"converged in {trace.iterations} iterations "
        f"(final delta {trace.deltas[-1]:.3e}, tol {trace.tol:.3e})"
    )
    print(f"wrote {artifact.path} ({artifact.metadata['rows']} rows)")
    return EXIT_OK


def cmd_attract(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    if args.mode == "chaos":
        cloud = chaos_game(ifs, job.n_points, burn_in=job.burn_in, seed=job.seed)
    else:
        cloud = deterministic_attractor(
            ifs, endpoint_segment(ifs.data, args.init_samples), args.depth
        )
    out = args.out or str(_outdir(job, args) / f"attractor_{args.mode}.csv")
    artifact = write_point_cloud_csv(cloud, out)
    print(f"wrote {artifact.path} ({artifact.metadata['rows']} rows)")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    value = evaluate(ifs, args.x, depth=args.depth)
    print(repr(value.value))
    return EXIT_OK


def cmd_verify(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    lines = []
    ok = True

    report = verify_joinup(ifs, tol=1e-12)
    ok &= report.ok
    lines.append(_check_line("join-up", report.ok, f"max residual {report.max_residual:.3e}"))

    lip_worst = _lipschitz_residual(ifs, samples=1000, seed=job.seed)
    lip_ok = lip_worst <= 1e-12
    ok &= lip_ok
    lines.append(_check_line("lipschitz-identities", lip_ok, f"max deviation {lip_worst:.3e}"))

    graph, trace = _solve(job, ifs)
    xs = [p.u for p in ifs.data.points]
    ys = [p.v for p in ifs.data.points]
    spec = ClassicalFifSpec.from_data(xs, ys, job.scales)
    grid, vals, _, conv = classical_fif(
        spec, grid_m=job.grid_m, tol=job.tol, max_iter=job.max_iter
    )
    if not conv:
        raise ConvergenceError("classical oracle did not converge")
    if not np.array_equal(grid, graph.u):
        raise ValidationError("oracle grid does not match the graph grid")
    diff = float(np.max(np.abs(vals - graph.v)))
    oracle_ok = diff <= 1e-9
    ok &= oracle_ok
    lines.append(_check_line("oracle-equivalence", oracle_ok, f"max difference {diff:.3e}"))

    text = "\n".join(lines)
    print(text)
    if args.out:
        atomic_write_text(args.out, text + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK if ok else EXIT_VALIDATION


def _check_line(name: str, passed: bool, detail: str) -> str:
    return f"{name}: {'PASS' if passed else 'FAIL'} ({detail})"


def _lipschitz_residual(ifs: ProjIfs, samples: int, seed: int) -> float:
    """Worst deviation of the three exact per-map scaling identities."""
    rng = np.random.default_rng(seed)
    lo, hi = float(ifs.data.X[0]), float(ifs.data.X[-1])
    span = hi - lo
    ymid = float(ifs.data.Y.mean())
    worst = 0.0
    for m in ifs.maps:
        us = rng.uniform(lo, hi, size=(samples, 2))
        vs = rng.uniform(ymid - span, ymid + span, size=(samples, 2))
        for (u1, u2), (v1, v2) in zip(us, vs):
            p1 = ProjPoint(u1, v1, 1.0)
            p2 = ProjPoint(u2, v1, 1.0)
            p3 = ProjPoint(u1, v2, 1.0)
            h1 = m.map_abscissa(p1.split()[0])
            h2 = m.map_abscissa(p2.split()[0])
            lhs = abs(h1.value - h2.value)
            worst = max(worst, abs(lhs - abs(m.a) * abs(u1 - u2)))
            lhs = dist(m.map_value(p1).lift(), m.map_value(p2).lift())
            worst = max(worst, abs(lhs - abs(m.c) * abs(u1 - u2)))
            lhs = dist(m.map_value(p1).lift(), m.map_value(p3).lift())
            worst = max(worst, abs(lhs - abs(m.d) * abs(v1 - v2)))
    return worst


def _outdir(job: JobSpec, args) -> Path:
    outdir = Path(getattr(args, "outdir", None) or job.out_dir or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def cmd_render(args) -> int:
    job = _load_job(args.config)
    ifs = _job_ifs(job)
    outdir = _outdir(job, args)
    viewport = _default_viewport(job)
    artifacts = []

    graph, _ = _solve(job, ifs)
    artifacts.append(write_vector_polyline(graph, outdir / "graph.svg", viewport))

    if args.source == "chaos":
        cloud = chaos_game(ifs, job.n_points, burn_in=job.burn_in, seed=job.seed)
    else:
        cloud = cloud_from_graph(graph)
    mask = rasterize(cloud, viewport, job.raster_width, job.raster_height)
    artifacts.append(write_raster(mask, outdir / "attractor.pbm"))

    for level in job.slice_levels:
        pts3d = slice_at_level(cloud, level)
        artifacts.append(write_slice_csv(pts3d, outdir / f"slice_z{level:g}.csv"))

    for artifact in artifacts:
        print(f"wrote {artifact.path}")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="projfif", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to a TOML job file")
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "solve and print the map coefficients")
    p.add_argument("--out", help="also write the coefficients as CSV")

    p = add("certificate", cmd_certificate, "report the contraction certificate")
    p.add_argument("--theta", type=float, help="metric weight override")
    p.add_argument("--out", help="also write the report to a file")

    p = add("fixed-point", cmd_fixed_point, "iterate the interpolant to its fixed point")
    p.add_argument("--out", help="output CSV path (default <outdir>/graph.csv)")
    p.add_argument("--outdir", help="output directory (default from config)")

    p = add("attract", cmd_attract, "sample the attractor as a point cloud")
    p.add_argument("--mode", choices=("chaos", "deterministic"), default="chaos")
    p.add_argument("--depth", type=int, default=6, help="union iteration steps")
    p.add_argument("--init-samples", type=int, default=33, help="chord sample count")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--outdir", help="output directory (default from config)")

    p = add("evaluate", cmd_evaluate, "evaluate the interpolant at one abscissa")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--depth", type=int, default=30)

    p = add("verify", cmd_verify, "run join-up, identity, and oracle checks")
    p.add_argument("--out", help="also write the report to a file")

    p = add("render", cmd_render, "write the figure artifacts for a job")
    p.add_argument("--source", choices=("fixed-point", "chaos"), default="fixed-point")
    p.add_argument("--outdir", help="output directory (default from config)")

    return parser


def _fail(kind: str, code: int, err: BaseException) -> int:
    payload = json.dumps({"kind": kind, "exit": code, "message": str(err)})
    print(f"projfif-error {payload}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ValidationError as e:
        return _fail("validation", EXIT_VALIDATION, e)
    except ConvergenceError as e:
        return _fail("non-convergence", EXIT_NONCONVERGENCE, e)
    except OSError as e:
        return _fail("io", EXIT_IO, e)


if __name__ == "__main__":
    sys.exit(main())
