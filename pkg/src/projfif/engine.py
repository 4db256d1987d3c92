"""Fixed-point machinery: graph refinement, attractors, clouds, distances.

The interpolant is the unique function, pinned to the data endpoints,
that the self-referential refinement operator leaves unchanged: on
subinterval n the operator pulls the argument back through the
horizontal part of map n and pushes the sampled value forward through
the vertical part.  Its iteration contracts in the sup distance with
factor max|d_n|, so plain Picard iteration on a sampled graph converges
geometrically.  The graph of the fixed point is simultaneously the
attractor of the map family, which the cloud utilities (deterministic
union iteration and the chaos game) sample directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    CloudLimitError,
    GridAlignmentError,
    ValidationError,
)
from .geometry import SampledGraph, graph_sup_dist
from .ifs import InterpolationData, ProjIfs
from .projective import Z_FLOOR, AbscissaPoint, OrdinatePoint, ProjPoint


@dataclass(frozen=True)
class IterationTrace:
    """Successive sup-distance deltas of a fixed-point iteration."""

    deltas: tuple[float, ...]
    iterations: int
    converged: bool
    tol: float


class PointCloud:
    """A finite set of plane points stored as raw homogeneous rows (n, 3).

    Engine-produced clouds are canonical (z == 1 on every row); clouds
    built by hand may carry arbitrary valid representatives, which the
    exporters preserve.
    """

    __slots__ = ("xyz",)

    def __init__(self, xyz):
        xyz = np.ascontiguousarray(xyz, dtype=float)
        if xyz.ndim != 2 or xyz.shape[1] != 3:
            raise ValidationError("cloud must be an (n, 3) array of triples")
        if xyz.shape[0] < 1:
            raise ValidationError("cloud must be nonempty")
        if np.any(np.abs(xyz[:, 2]) < Z_FLOOR):
            raise ValidationError("cloud contains a point on the removed line")
        self.xyz = xyz

    @classmethod
    def from_uv(cls, u, v) -> "PointCloud":
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return cls(np.column_stack([u, v, np.ones_like(u)]))

    @classmethod
    def from_points(cls, points) -> "PointCloud":
        return cls(np.array([[p.x, p.y, p.z] for p in points]))

    @property
    def uv(self) -> np.ndarray:
        """Canonical coordinate pairs, shape (n, 2)."""
        return self.xyz[:, :2] / self.xyz[:, 2:3]

    def __len__(self) -> int:
        return self.xyz.shape[0]

    def points(self) -> Iterator[ProjPoint]:
        for x, y, z in self.xyz:
            yield ProjPoint(x, y, z)


def cloud_from_graph(graph: SampledGraph) -> PointCloud:
    return PointCloud.from_uv(graph.u, graph.v)


def data_grid(data: InterpolationData, grid_m: int) -> np.ndarray:
    """Sampling grid whose nodes include every data abscissa.

    The node count must be 1 mod n_maps; each segment then carries the
    same number of equally spaced nodes.  For equally spaced data this
    is the uniform grid on the whole span.
    """
    n = data.n_maps
    if grid_m < n + 1 or (grid_m - 1) % n != 0:
        raise GridAlignmentError(
            f"grid size must be k*{n} + 1 for some k >= 1, got {grid_m}"
        )
    per = (grid_m - 1) // n
    X = data.X
    parts = [np.linspace(X[i], X[i + 1], per + 1)[:-1] for i in range(n)]
    parts.append(X[-1:])
    return np.concatenate(parts)


def _check_alignment(data: InterpolationData, u: np.ndarray) -> None:
    # every data abscissa must be a grid node, exactly
    idx = np.searchsorted(u, data.X)
    if np.any(idx >= u.size) or not np.array_equal(u[np.minimum(idx, u.size - 1)], data.X):
        raise GridAlignmentError("grid nodes must include every data abscissa")


def _segment_index(data: InterpolationData, u: np.ndarray) -> np.ndarray:
    # 0-based segment per node; interior data nodes go with the map on
    # their left (both neighbours agree there on pinned graphs)
    return np.clip(np.searchsorted(data.X, u, side="left") - 1, 0, data.n_maps - 1)


def refine(ifs: ProjIfs, graph: SampledGraph) -> SampledGraph:
    """One pass of the refinement operator on a sampled graph.

    Node u in segment n is pulled back through the horizontal part of
    map n, the current graph is evaluated there by linear interpolation,
    and the value is pushed forward through the vertical part.  The
    output keeps the grid and stays pinned to the data endpoints.
    """
    data = ifs.data
    u = graph.u
    _check_alignment(data, u)
    X, Y = data.X, data.Y
    lo, hi = X[0], X[-1]
    seg = _segment_index(data, u)
    out = np.empty_like(graph.v)
    for i, m in enumerate(ifs.maps):
        sel = seg == i
        if not np.any(sel):
            continue
        w = (u[sel] - m.b) / m.a
        np.clip(w, lo, hi, out=w)
        fv = np.interp(w, graph.u, graph.v)
        out[sel] = m.c * w + m.d * fv + m.f
    if __debug__:
        # well-definedness: at interior data nodes the two adjacent maps
        # agree whenever the input graph is endpoint-pinned
        if abs(graph.v[0] - Y[0]) <= 1e-9 and abs(graph.v[-1] - Y[-1]) <= 1e-9:
            node_pos = np.searchsorted(u, X[1:-1])
            for k, pos in enumerate(node_pos, start=1):
                m = ifs.maps[k]  # right neighbour; left one filled `out`
                w = (u[pos] - m.b) / m.a
                alt = m.c * w + m.d * np.interp(w, graph.u, graph.v) + m.f
                assert abs(out[pos] - alt) <= 1e-9
    return SampledGraph(u, out)


def linear_seed(data: InterpolationData, grid_m: int) -> SampledGraph:
    """The data's piecewise-linear interpolant, sampled on the aligned grid."""
    u = data_grid(data, grid_m)
    return SampledGraph(u, np.interp(u, data.X, data.Y))


def fixed_point_graph(
    ifs: ProjIfs,
    grid_m: int = 1025,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[SampledGraph, IterationTrace]:
    """Iterate the refinement operator to its fixed point on a grid.

    Starts from the data's linear interpolant and stops when the sup
    distance between successive iterates drops below tol.  The remaining
    distance to the limit is then at most tol * d/(1 - d) with
    d = max|d_n|.  Non-convergence is reported on the trace, not raised.
    """
    if not tol > 0.0:
        raise ValidationError(f"tolerance must be positive, got {tol!r}")
    if max_iter < 1:
        raise ValidationError(f"need at least one iteration, got {max_iter}")
    g = linear_seed(ifs.data, grid_m)
    deltas: list[float] = []
    converged = False
    for _ in range(max_iter):
        nxt = refine(ifs, g)
        delta = graph_sup_dist(nxt, g)
        deltas.append(delta)
        g = nxt
        if delta < tol:
            converged = True
            break
    return g, IterationTrace(tuple(deltas), len(deltas), converged, tol)


def evaluate(ifs: ProjIfs, p, depth: int = 30) -> OrdinatePoint:
    """Grid-free value of the interpolant at one abscissa point.

    Peels ``depth`` address levels by repeated horizontal pullback,
    seeds with the data's linear interpolant, and unwinds through the
    vertical parts.  The error is at most max|d_n|^depth times the data
    diameter, and data nodes come out exactly for any depth.
    """
    if isinstance(p, AbscissaPoint):
        x = p.value
    else:
        x = float(p)
    data = ifs.data
    X, Y = data.X, data.Y
    lo, hi = float(X[0]), float(X[-1])
    if not lo <= x <= hi:
        raise ValidationError(f"abscissa {x!r} outside the data span [{lo}, {hi}]")
    if depth < 0:
        raise ValidationError(f"depth must be nonnegative, got {depth}")
    trail: list[int] = []
    for _ in range(depth):
        k = int(np.clip(np.searchsorted(X, x, side="left") - 1, 0, data.n_maps - 1))
        trail.append(k)
        m = ifs.maps[k]
        x = (x - m.b) / m.a
        x = min(max(x, lo), hi)
    y = float(np.interp(x, X, Y))
    for k in reversed(trail):
        m = ifs.maps[k]
        y = m.c * x + m.d * y + m.f
        x = m.a * x + m.b
    return OrdinatePoint(y, 1.0)


def hutchinson_step(
    ifs: ProjIfs, cloud: PointCloud, max_points: int | None = None
) -> PointCloud:
    """Union of all map images of the cloud, in canonical coordinates.

    The size multiplies by the number of maps; no deduplication here.
    """
    uv = cloud.uv
    n_out = len(ifs.maps) * uv.shape[0]
    if max_points is not None and n_out > max_points:
        raise CloudLimitError(
            f"step would produce {n_out} points, over the cap {max_points}"
        )
    pieces = []
    for m in ifs.maps:
        pieces.append(
            np.column_stack([m.a * uv[:, 0] + m.b, m.c * uv[:, 0] + m.d * uv[:, 1] + m.f])
        )
    new = np.concatenate(pieces)
    return PointCloud.from_uv(new[:, 0], new[:, 1])


def snap_dedup(cloud: PointCloud, eps: float = 1e-6) -> PointCloud:
    """Collapse points that agree after snapping to an eps grid.

    A rendering approximation to bound cloud growth; keep it off when
    exact unions are wanted.
    """
    if not eps > 0.0:
        raise ValidationError(f"snap resolution must be positive, got {eps!r}")
    uv = cloud.uv
    keys = np.round(uv / eps).astype(np.int64)
    _, index = np.unique(keys, axis=0, return_index=True)
    index.sort()
    kept = uv[index]
    return PointCloud.from_uv(kept[:, 0], kept[:, 1])


def deterministic_attractor(
    ifs: ProjIfs,
    initial: PointCloud,
    k: int,
    snap_eps: float | None = None,
    max_points: int = 4_000_000,
) -> PointCloud:
    """k-fold union iteration of the map family applied to ``initial``.

    With ``snap_eps`` set, each step is followed by snap-to-grid
    deduplication at that resolution.  k = 0 returns the initial cloud.
    """
    if k < 0:
        raise ValidationError(f"step count must be nonnegative, got {k}")
    cloud = initial
    for _ in range(k):
        cloud = hutchinson_step(ifs, cloud, max_points=max_points)
        if snap_eps is not None:
            cloud = snap_dedup(cloud, snap_eps)
    return cloud


def endpoint_segment(data: InterpolationData, m: int = 33) -> PointCloud:
    """The chord between the first and last data nodes, m samples."""
    if m < 2:
        raise ValidationError(f"need at least 2 samples, got {m}")
    t = np.linspace(0.0, 1.0, m)
    u = data.X[0] + t * (data.X[-1] - data.X[0])
    v = data.Y[0] + t * (data.Y[-1] - data.Y[0])
    return PointCloud.from_uv(u, v)


def chaos_game(
    ifs: ProjIfs,
    n_points: int,
    burn_in: int = 50,
    seed: int = 0,
) -> PointCloud:
    """Random-iteration sample of the attractor.

    Starts at the first data node, applies uniformly chosen maps, and
    keeps every iterate after the first ``burn_in``.  Deterministic for
    a fixed seed.
    """
    if n_points < 1:
        raise ValidationError(f"need at least one point, got {n_points}")
    if burn_in < 0:
        raise ValidationError(f"burn-in must be nonnegative, got {burn_in}")
    rng = np.random.default_rng(seed)
    total = burn_in + n_points
    choices = rng.integers(0, len(ifs.maps), size=total).tolist()
    coeffs = [(m.a, m.b, m.c, m.d, m.f) for m in ifs.maps]
    u = float(ifs.data.X[0])
    v = float(ifs.data.Y[0])
    out = np.empty((n_points, 2))
    j = 0
    for i in range(total):
        a, b, c, d, f = coeffs[choices[i]]
        v = c * u + d * v + f
        u = a * u + b
        if i >= burn_in:
            out[j, 0] = u
            out[j, 1] = v
            j += 1
    return PointCloud.from_uv(out[:, 0], out[:, 1])


def hausdorff_distance(
    a: PointCloud,
    b: PointCloud,
    theta: float | None = None,
    chunk: int = 4_000_000,
) -> float:
    """Symmetric Hausdorff distance between two clouds, exact brute force.

    Uses the flat metric by default, or the weighted metric when a
    positive ``theta`` is given.  Pairwise distances are evaluated in
    chunks so memory stays bounded at O(chunk).
    """
    if theta is not None and not theta > 0.0:
        raise ValidationError(f"weight must be positive, got {theta!r}")
    A = a.uv
    B = b.uv
    mins_a = np.full(A.shape[0], np.inf)
    mins_b = np.full(B.shape[0], np.inf)
    rows = max(1, chunk // B.shape[0])
    for i0 in range(0, A.shape[0], rows):
        blk = A[i0 : i0 + rows]
        du = blk[:, 0, None] - B[None, :, 0]
        dv = blk[:, 1, None] - B[None, :, 1]
        if theta is None:
            dmat = du * du + dv * dv
        else:
            dmat = np.abs(du) + theta * np.abs(dv)
        mins_a[i0 : i0 + rows] = dmat.min(axis=1)
        np.minimum(mins_b, dmat.min(axis=0), out=mins_b)
    h = max(mins_a.max(), mins_b.max())
    if theta is None:
        h = np.sqrt(h)
    return float(h)


def slice_at_level(cloud: PointCloud, z0: float) -> np.ndarray:
    """Real 3-space points where the rays of the cloud meet the plane z = z0.

    Each canonical (u, v, 1) maps to (u*z0, v*z0, z0), so the slice at
    one level is the slice at another scaled by the ratio of levels.
    """
    z0 = float(z0)
    if abs(z0) < Z_FLOOR:
        raise ValidationError("slice level must be nonzero")
    uv = cloud.uv
    return np.column_stack([uv[:, 0] * z0, uv[:, 1] * z0, np.full(uv.shape[0], z0)])
