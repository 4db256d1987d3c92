"""Interpolation data and the piecewise projective maps built from it.

Given N+1 data points with strictly increasing abscissae, each map n
(1-based) sends the whole data span onto subinterval n:

* horizontally  (x : 0 : z) -> (a_n x + b_n z : 0 : z)
* vertically    (x : y : z) -> (0 : c_n x + d_n y + f_n z : z)

The vertical scale d_n is a free parameter with |d_n| < 1; the remaining
coefficients are pinned by requiring map n to carry the first data point
to point n-1 and the last to point n ("join-up").  Horizontal and
vertical parts combine by projective addition, equivalently as the
matrix [[a, 0, b], [c, d, f], [0, 0, 1]] acting on raw triples.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DataOrderingError, ScaleError, ValidationError
from .geometry import ProjInterval
from .projective import AbscissaPoint, OrdinatePoint, ProjPoint, dist, equiv


class DegenerateScaleWarning(UserWarning):
    """A vertical scale of zero collapses the map onto a line segment."""


class InterpolationData:
    """Validated interpolation nodes with sign-normalized representatives.

    Nodes are stored with positive last coordinate so the order relation
    on abscissae reduces to the order of the canonical coordinates.
    ``X`` and ``Y`` hold the canonical coordinate arrays.
    """

    __slots__ = ("points", "X", "Y")

    def __init__(self, points: Sequence[ProjPoint]):
        if len(points) < 3:
            raise ValidationError(
                f"need at least 3 nodes (2 segments), got {len(points)}"
            )
        normalized = []
        for p in points:
            if p.z < 0.0:
                normalized.append(ProjPoint(-p.x, -p.y, -p.z))
            else:
                normalized.append(p)
        for i in range(len(normalized) - 1):
            a, b = normalized[i], normalized[i + 1]
            if not a.x * b.z < b.x * a.z:
                raise DataOrderingError(
                    f"abscissae must be strictly increasing; "
                    f"violated between nodes {i} and {i + 1}"
                )
        self.points = tuple(normalized)
        self.X = np.array([p.x / p.z for p in normalized])
        self.Y = np.array([p.y / p.z for p in normalized])

    @property
    def n_maps(self) -> int:
        return len(self.points) - 1

    def interval(self) -> ProjInterval:
        return ProjInterval(
            AbscissaPoint(self.points[0].x, self.points[0].z),
            AbscissaPoint(self.points[-1].x, self.points[-1].z),
        )

    def diameter(self) -> float:
        """Flat diameter of the data's bounding rectangle."""
        return math.hypot(
            float(self.X[-1] - self.X[0]),
            float(self.Y.max() - self.Y.min()),
        )


def interval_coeffs(data: InterpolationData, n: int) -> tuple[float, float]:
    """Horizontal coefficients (a_n, b_n) of map n (1-based).

    Pinned by carrying the data span endpoints onto subinterval n.
    Computed from canonical coordinates, so they are representative
    independent.
    """
    if not 1 <= n <= data.n_maps:
        raise ValidationError(f"map index {n} out of range 1..{data.n_maps}")
    X = data.X
    span = X[-1] - X[0]
    a = (X[n] - X[n - 1]) / span
    b = (X[-1] * X[n - 1] - X[0] * X[n]) / span
    return float(a), float(b)


def value_coeffs(data: InterpolationData, n: int, d: float) -> tuple[float, float]:
    """Vertical coefficients (c_n, f_n) of map n (1-based) for scale d.

    Pinned by the join-up conditions once the free vertical scale d is
    chosen.
    """
    if not 1 <= n <= data.n_maps:
        raise ValidationError(f"map index {n} out of range 1..{data.n_maps}")
    X, Y = data.X, data.Y
    span = X[-1] - X[0]
    c = (Y[n] - Y[n - 1]) / span - d * (Y[-1] - Y[0]) / span
    f = (X[-1] * Y[n - 1] - X[0] * Y[n]) / span - d * (X[-1] * Y[0] - X[0] * Y[-1]) / span
    return float(c), float(f)


@dataclass(frozen=True)
class ProjectiveMap:
    """One affine-in-the-chart map with coefficients (a, b, c, d, f)."""

    a: float
    b: float
    c: float
    d: float
    f: float

    def matrix(self) -> np.ndarray:
        """3x3 matrix form acting on raw homogeneous triples."""
        return np.array(
            [
                [self.a, 0.0, self.b],
                [self.c, self.d, self.f],
                [0.0, 0.0, 1.0],
            ]
        )

    def map_abscissa(self, p: AbscissaPoint) -> AbscissaPoint:
        """(x : 0 : z) -> (a x + b z : 0 : z), canonicalized."""
        return AbscissaPoint((self.a * p.x + self.b * p.z) / p.z, 1.0)

    def unmap_abscissa(self, p: AbscissaPoint) -> AbscissaPoint:
        """Inverse of the horizontal part: (x : 0 : z) -> (x - b z : 0 : a z)."""
        return AbscissaPoint((p.x - self.b * p.z) / (self.a * p.z), 1.0)

    def map_value(self, p: ProjPoint) -> OrdinatePoint:
        """(x : y : z) -> (0 : c x + d y + f z : z), canonicalized."""
        return OrdinatePoint((self.c * p.x + self.d * p.y + self.f * p.z) / p.z, 1.0)

    def apply(self, p: ProjPoint) -> ProjPoint:
        """Full map: horizontal image plus vertical image.

        The matrix route must agree exactly in canonical form; that is
        asserted here as a cheap internal cross-check.
        """
        out = self.map_abscissa(AbscissaPoint(p.x, p.z)).lift() + self.map_value(p).lift()
        assert equiv(out, self.apply_matrix(p), 0.0)
        return out

    def apply_matrix(self, p: ProjPoint) -> ProjPoint:
        """Full map via the 3x3 matrix on the raw triple, canonicalized."""
        m = self.matrix()
        xr = m[0, 0] * p.x + m[0, 1] * p.y + m[0, 2] * p.z
        yr = m[1, 0] * p.x + m[1, 1] * p.y + m[1, 2] * p.z
        zr = m[2, 0] * p.x + m[2, 1] * p.y + m[2, 2] * p.z
        return ProjPoint(xr / zr, yr / zr, 1.0)


@dataclass(frozen=True)
class ProjIfs:
    """Interpolation data together with its validated map family."""

    data: InterpolationData
    maps: tuple[ProjectiveMap, ...]

    @property
    def d_bound(self) -> float:
        return max(abs(m.d) for m in self.maps)

    def interval(self) -> ProjInterval:
        return self.data.interval()


def build_ifs(
    data: InterpolationData,
    scales: Sequence[float],
    allow_zero_scale: bool = True,
) -> ProjIfs:
    """Construct the map family for the given vertical scales.

    One scale per segment, each with |d| < 1.  A zero scale is legal but
    degenerate (that map flattens onto a segment and the interpolant
    reduces to the linear one); it triggers a warning unless
    ``allow_zero_scale`` is disabled, in which case it is an error.
    """
    if len(scales) != data.n_maps:
        raise ValidationError(
            f"{len(data.points)} nodes define {data.n_maps} segments, "
            f"got {len(scales)} scales"
        )
    maps = []
    for i, d in enumerate(scales):
        d = float(d)
        if not abs(d) < 1.0:
            raise ScaleError(f"scale {i + 1} must satisfy |d| < 1, got {d!r}")
        if d == 0.0:
            if not allow_zero_scale:
                raise ScaleError(f"scale {i + 1} is zero and zero scales are disabled")
            warnings.warn(
                "zero vertical scale: the interpolant degenerates to the "
                "piecewise-linear one",
                DegenerateScaleWarning,
                stacklevel=2,
            )
        a, b = interval_coeffs(data, i + 1)
        c, f = value_coeffs(data, i + 1, d)
        maps.append(ProjectiveMap(a, b, c, d, f))
    ifs = ProjIfs(data, tuple(maps))
    report = verify_joinup(ifs, tol=1e-8)
    if not report.ok:
        raise ValidationError(
            f"join-up residual {report.max_residual:.3e} exceeds 1e-8; "
            "data is numerically degenerate"
        )
    return ifs


@dataclass(frozen=True)
class JoinupReport:
    """Per-map endpoint residuals of the join-up conditions."""

    residuals: tuple[tuple[float, float], ...]
    max_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.max_residual <= self.tol

    def worst_map(self) -> int:
        """1-based index of the map with the largest residual."""
        worst = max(range(len(self.residuals)), key=lambda i: max(self.residuals[i]))
        return worst + 1


def verify_joinup(ifs: ProjIfs, tol: float = 1e-12) -> JoinupReport:
    """Check that map n carries the first data point to node n-1 and the
    last data point to node n, measuring residuals in the flat metric."""
    first = ifs.data.points[0]
    last = ifs.data.points[-1]
    residuals = []
    for i, m in enumerate(ifs.maps):
        left = dist(m.apply(first), ifs.data.points[i])
        right = dist(m.apply(last), ifs.data.points[i + 1])
        residuals.append((left, right))
    max_residual = max(max(pair) for pair in residuals)
    return JoinupReport(tuple(residuals), max_residual, tol)


@dataclass(frozen=True)
class ContractionCertificate:
    """Sufficient-condition report for contractivity of the full maps.

    ``theta_max`` is the largest weight for which the standard bound
    applies: min_n(1 - 2|c_n|) / max_n(2|a_n|).  When positive, any
    weight 0 < theta <= theta_max gives a horizontal factor
    a_bound = max_n(|a_n| + theta |c_n|) < 1, and the maps contract in
    the weighted metric with factor c_bound = max(a_bound, d_bound).

    A failed certificate (sufficient = False) does not preclude the
    interpolant: the function-space iteration contracts whenever
    d_bound = max_n |d_n| < 1, regardless of theta_max.
    """

    theta_max: float
    theta_used: float | None
    a_bound: float
    d_bound: float
    c_bound: float
    sufficient: bool

    def describe(self) -> str:
        lines = [
            f"theta_max:  {self.theta_max!r}",
            f"theta_used: {self.theta_used!r}",
            f"a_bound:    {self.a_bound!r}",
            f"d_bound:    {self.d_bound!r}",
            f"c_bound:    {self.c_bound!r}",
            f"sufficient: {self.sufficient}",
        ]
        if not self.sufficient:
            lines.append(
                "note: certificate failed, but the interpolant still exists "
                "whenever d_bound < 1"
            )
        return "\n".join(lines)


def contraction_certificate(ifs: ProjIfs, theta: float | None = None) -> ContractionCertificate:
    """Evaluate the sufficient contraction condition for the map family.

    If ``theta`` is omitted, theta_max/2 is used when theta_max is
    positive; otherwise no weight is usable and ``theta_used`` is None,
    with the horizontal bound reported at the weight -> 0 limit.
    """
    abs_a = [abs(m.a) for m in ifs.maps]
    abs_c = [abs(m.c) for m in ifs.maps]
    abs_d = [abs(m.d) for m in ifs.maps]
    theta_max = min(1.0 - 2.0 * c for c in abs_c) / max(2.0 * a for a in abs_a)
    if theta is None:
        theta_used = theta_max / 2.0 if theta_max > 0.0 else None
    else:
        if not theta > 0.0:
            raise ValidationError(f"weight must be positive, got {theta!r}")
        theta_used = float(theta)
    eff = theta_used if theta_used is not None else 0.0
    a_bound = max(a + eff * c for a, c in zip(abs_a, abs_c))
    d_bound = max(abs_d)
    c_bound = max(a_bound, d_bound)
    sufficient = theta_max > 0.0 and d_bound < 1.0
    return ContractionCertificate(
        theta_max=float(theta_max),
        theta_used=theta_used,
        a_bound=float(a_bound),
        d_bound=float(d_bound),
        c_bound=float(c_bound),
        sufficient=sufficient,
    )
