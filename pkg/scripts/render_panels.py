"""Render the three zigzag panels side by side.

Produces one raster and one polyline per shipped config plus a combined
contact sheet (three P1 rasters stacked into a single file), all under
an output directory of choice.

Usage: python scripts/render_panels.py [outdir]
"""

import sys
from pathlib import Path

import numpy as np

from projfif import (
    InterpolationData,
    ProjPoint,
    build_ifs,
    cloud_from_graph,
    fixed_point_graph,
    parse_config,
)
from projfif.output import rasterize, write_raster, write_vector_polyline

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"
PANELS = ["zigzag_d01.toml", "zigzag_d03.toml", "zigzag_dneg03.toml"]


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("panels")
    outdir.mkdir(parents=True, exist_ok=True)

    masks = []
    for name in PANELS:
        job = parse_config((CONFIG_DIR / name).read_text())
        data = InterpolationData([ProjPoint(*t) for t in job.points])
        ifs = build_ifs(data, job.scales)
        graph, trace = fixed_point_graph(
            ifs, grid_m=job.grid_m, tol=job.tol, max_iter=job.max_iter
        )
        if not trace.converged:
            print(f"{name}: did not converge, skipping", file=sys.stderr)
            return 2
        stem = name.removesuffix(".toml")
        mask = rasterize(
            cloud_from_graph(graph), job.viewport, job.raster_width, job.raster_height
        )
        write_raster(mask, outdir / f"{stem}.pbm")
        write_vector_polyline(graph, outdir / f"{stem}.svg", job.viewport)
        masks.append(mask)
        print(f"{stem}: {int(mask.sum())} lit pixels, {trace.iterations} iterations")

    sheet = np.concatenate(masks, axis=1)
    write_raster(sheet, outdir / "contact_sheet.pbm")
    print(f"wrote {outdir}/contact_sheet.pbm")
    return 0


if __name__ == "__main__":
    sys.exit(main())
