"""Artifact writers: point-cloud CSV, bilevel raster, vector polyline.

All writers are deterministic byte-for-byte for identical inputs (floats
are formatted with repr, which is the shortest exact form) and atomic
(content goes to a temp file in the target directory, then rename).
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .engine import PointCloud
from .errors import ValidationError
from .geometry import SampledGraph

CSV_HEADER = "u,v,x,y,z"


@dataclass(frozen=True)
class FigureArtifact:
    """One produced file plus the metadata needed to reproduce it."""

    kind: str  # cloud-csv | raster | vector | slice-csv | certificate-report | verify-report
    path: str
    metadata: dict = field(default_factory=dict)


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_point_cloud_csv(cloud: PointCloud, path) -> FigureArtifact:
    """CSV with header u,v,x,y,z: canonical pair plus the raw triple.

    Rows are sorted lexicographically by (u, v) so re-exports of the
    same cloud are byte-identical.
    """
    uv = cloud.uv
    order = np.lexsort((uv[:, 1], uv[:, 0]))
    lines = [CSV_HEADER]
    xyz = cloud.xyz
    for i in order:
        row = (uv[i, 0], uv[i, 1], xyz[i, 0], xyz[i, 1], xyz[i, 2])
        lines.append(",".join(repr(float(c)) for c in row))
    atomic_write_text(path, "\n".join(lines) + "\n")
    return FigureArtifact("cloud-csv", str(path), {"rows": len(cloud)})


def write_slice_csv(points3d: np.ndarray, path) -> FigureArtifact:
    """CSV of real 3-space points with header x,y,z, sorted by (x, y)."""
    order = np.lexsort((points3d[:, 1], points3d[:, 0]))
    lines = ["x,y,z"]
    for i in order:
        lines.append(",".join(repr(float(c)) for c in points3d[i, :3]))
    atomic_write_text(path, "\n".join(lines) + "\n")
    return FigureArtifact("slice-csv", str(path), {"rows": int(points3d.shape[0])})


def rasterize(cloud: PointCloud, viewport, width: int, height: int) -> np.ndarray:
    """Boolean occupancy grid of shape (height, width), top-left origin.

    A point lands in the pixel found by flooring the affine viewport
    transform; points outside the viewport are dropped, and the right
    and bottom edges are folded into the last pixel.
    """
    x0, x1, y0, y1 = (float(c) for c in viewport)
    if not (x0 < x1 and y0 < y1):
        raise ValidationError("viewport must have positive extent")
    if width < 1 or height < 1:
        raise ValidationError("raster must be at least 1x1")
    uv = cloud.uv
    u = uv[:, 0]
    v = uv[:, 1]
    inside = (u >= x0) & (u <= x1) & (v >= y0) & (v <= y1)
    u = u[inside]
    v = v[inside]
    cols = np.minimum((u - x0) / (x1 - x0) * width, width - 1).astype(np.intp)
    rows = np.minimum((y1 - v) / (y1 - y0) * height, height - 1).astype(np.intp)
    mask = np.zeros((height, width), dtype=bool)
    mask[rows, cols] = True
    return mask


def write_raster(mask: np.ndarray, path) -> FigureArtifact:
    """Write an occupancy mask as a textual bilevel pixmap (magic P1).

    One digit per pixel, rows wrapped at 64 digits per line.
    """
    height, width = mask.shape
    lines = [f"P1\n{width} {height}"]
    for row in mask:
        digits = "".join("1" if bit else "0" for bit in row)
        for i in range(0, width, 64):
            lines.append(digits[i : i + 64])
    atomic_write_text(path, "\n".join(lines) + "\n")
    return FigureArtifact(
        "raster",
        str(path),
        {"width": int(width), "height": int(height), "lit": int(mask.sum())},
    )


def write_vector_polyline(
    graph: SampledGraph, path, viewport=None, stroke: str = "black"
) -> FigureArtifact:
    """Minimal SVG: one polyline through the graph nodes.

    The y axis is flipped (SVG grows downward) by negating ordinates in
    both the points and the view box.
    """
    if viewport is None:
        y_lo = float(graph.v.min())
        y_hi = float(graph.v.max())
        if y_lo == y_hi:
            y_lo -= 0.5
            y_hi += 0.5
        viewport = (float(graph.u[0]), float(graph.u[-1]), y_lo, y_hi)
    x0, x1, y0, y1 = (float(c) for c in viewport)
    if not (x0 < x1 and y0 < y1):
        raise ValidationError("viewport must have positive extent")
    pts = " ".join(
        f"{_svg_num(u)},{_svg_num(-v)}" for u, v in zip(graph.u.tolist(), graph.v.tolist())
    )
    stroke_width = _svg_num(0.004 * (y1 - y0))
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_svg_num(x0)} {_svg_num(-y1)} {_svg_num(x1 - x0)} {_svg_num(y1 - y0)}">\n'
        f'  <polyline fill="none" stroke="{stroke}" stroke-width="{stroke_width}" '
        f'points="{pts}"/>\n'
        f"</svg>\n"
    )
    atomic_write_text(path, svg)
    return FigureArtifact("vector", str(path), {"nodes": len(graph)})


def _svg_num(x: float) -> str:
    out = f"{x:.9g}"
    if out == "-0":
        out = "0"
    return out


def read_raster(path) -> np.ndarray:
    """Parse a textual bilevel pixmap back into a boolean mask."""
    tokens = []
    with open(path) as handle:
        for line in handle:
            line = line.split("#", 1)[0]
            tokens.extend(line.split())
    if not tokens or tokens[0] != "P1":
        raise ValidationError("not a textual bilevel pixmap")
    width, height = int(tokens[1]), int(tokens[2])
    digits = "".join(tokens[3:])
    if len(digits) != width * height:
        raise ValidationError(
            f"expected {width * height} pixels, found {len(digits)}"
        )
    bits = np.frombuffer(digits.encode(), dtype=np.uint8) - ord("0")
    if not np.all((bits == 0) | (bits == 1)):
        raise ValidationError("pixmap body must contain only 0 and 1")
    return bits.reshape(height, width).astype(bool)
