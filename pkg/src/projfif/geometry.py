"""Intervals, rectangles, and sampled graphs over the horizontal line."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateIntervalError, GridMismatchError, ValidationError
from .projective import (
    AbscissaPoint,
    OrdinatePoint,
    ProjPoint,
    compare_abscissa,
    compare_ordinate,
)


class ProjInterval:
    """Closed, order-bounded segment of the horizontal coordinate line."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: AbscissaPoint, hi: AbscissaPoint):
        if compare_abscissa(lo, hi) >= 0:
            raise DegenerateIntervalError(
                f"endpoints out of order or equal: {lo!r} !< {hi!r}"
            )
        self.lo = lo
        self.hi = hi

    @classmethod
    def from_values(cls, a: float, b: float) -> "ProjInterval":
        return cls(AbscissaPoint(a, 1.0), AbscissaPoint(b, 1.0))

    def __repr__(self) -> str:
        return f"ProjInterval([{self.lo.value!r}, {self.hi.value!r}])"

    @property
    def width(self) -> float:
        return self.hi.value - self.lo.value

    def contains(self, p: AbscissaPoint) -> bool:
        return compare_abscissa(self.lo, p) <= 0 and compare_abscissa(p, self.hi) <= 0

    def sample(self, m: int) -> list[AbscissaPoint]:
        """m equally spaced canonical points, endpoints included."""
        if m < 2:
            raise ValidationError(f"need at least 2 sample points, got {m}")
        us = np.linspace(self.lo.value, self.hi.value, m)
        return [AbscissaPoint(u, 1.0) for u in us.tolist()]


class ProjRectangle:
    """Product of a horizontal interval and a vertical interval."""

    __slots__ = ("x", "y_lo", "y_hi")

    def __init__(self, x: ProjInterval, y_lo: OrdinatePoint, y_hi: OrdinatePoint):
        if compare_ordinate(y_lo, y_hi) >= 0:
            raise DegenerateIntervalError(
                f"vertical bounds out of order or equal: {y_lo!r} !< {y_hi!r}"
            )
        self.x = x
        self.y_lo = y_lo
        self.y_hi = y_hi

    @classmethod
    def from_values(cls, x0: float, x1: float, y0: float, y1: float) -> "ProjRectangle":
        return cls(ProjInterval.from_values(x0, x1), OrdinatePoint(y0, 1.0), OrdinatePoint(y1, 1.0))

    def contains(self, p: ProjPoint) -> bool:
        h, o = p.split()
        return (
            self.x.contains(h)
            and compare_ordinate(self.y_lo, o) <= 0
            and compare_ordinate(o, self.y_hi) <= 0
        )


class SampledGraph:
    """Function values sampled on a strictly increasing abscissa grid.

    Both arrays hold canonical coordinates; node i stands for the full
    point (u[i] : v[i] : 1).  Instances are treated as immutable.
    """

    __slots__ = ("u", "v")

    def __init__(self, u, v):
        u = np.ascontiguousarray(u, dtype=float)
        v = np.ascontiguousarray(v, dtype=float)
        if u.ndim != 1 or v.ndim != 1:
            raise ValidationError("grid and values must be one-dimensional")
        if u.shape != v.shape:
            raise ValidationError(
                f"grid has {u.size} nodes but {v.size} values were given"
            )
        if u.size < 2:
            raise ValidationError("need at least 2 sample nodes")
        if not np.all(np.diff(u) > 0.0):
            raise ValidationError("grid must be strictly increasing")
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise ValidationError("grid and values must be finite")
        self.u = u
        self.v = v

    def __len__(self) -> int:
        return self.u.size

    def __repr__(self) -> str:
        return f"SampledGraph({self.u.size} nodes on [{self.u[0]!r}, {self.u[-1]!r}])"

    def interp(self, w):
        """Piecewise-linear evaluation at w (scalar or array), in canonical
        coordinates.  Arguments outside the grid clamp to the end values."""
        return np.interp(w, self.u, self.v)

    def node(self, i: int) -> ProjPoint:
        return ProjPoint(self.u[i], self.v[i], 1.0)

    def abscissae(self) -> list[AbscissaPoint]:
        return [AbscissaPoint(x, 1.0) for x in self.u.tolist()]

    def values(self) -> list[OrdinatePoint]:
        return [OrdinatePoint(y, 1.0) for y in self.v.tolist()]


def graph_sup_dist(f: SampledGraph, g: SampledGraph) -> float:
    """Sup distance over the shared grid, max_i |f.v[i] - g.v[i]|.

    This equals the maximum over the grid of the flat distance between
    the vertical parts of the two graphs.  The grids must be identical.
    """
    if f.u.shape != g.u.shape or not np.array_equal(f.u, g.u):
        raise GridMismatchError("graphs are sampled on different grids")
    return float(np.max(np.abs(f.v - g.v)))
