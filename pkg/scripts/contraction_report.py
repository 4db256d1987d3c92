"""Print contraction certificates and iteration traces for the shipped jobs.

Usage: python scripts/contraction_report.py [config.toml ...]
"""

import sys
from pathlib import Path

from projfif import (
    InterpolationData,
    ProjPoint,
    build_ifs,
    contraction_certificate,
    fixed_point_graph,
    parse_config,
)

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def report(path: Path) -> None:
    job = parse_config(path.read_text())
    data = InterpolationData([ProjPoint(*t) for t in job.points])
    ifs = build_ifs(data, job.scales)

    print(f"== {path.name} ==")
    print(contraction_certificate(ifs, job.theta).describe())

    graph, trace = fixed_point_graph(
        ifs, grid_m=job.grid_m, tol=job.tol, max_iter=job.max_iter
    )
    status = "converged" if trace.converged else "NOT CONVERGED"
    print(f"iteration: {status} after {trace.iterations} steps (tol {trace.tol:g})")
    for i, delta in enumerate(trace.deltas, start=1):
        ratio = "" if i == 1 else f"  ratio {delta / trace.deltas[i - 2]:.4f}"
        print(f"  step {i:3d}  delta {delta:.6e}{ratio}")
    print()


def main() -> int:
    if len(sys.argv) > 1:
        paths = [Path(a) for a in sys.argv[1:]]
    else:
        paths = sorted(CONFIG_DIR.glob("*.toml"))
    for path in paths:
        report(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
