"""Plain real-coordinate fractal interpolation oracle for cross-checks.

This is the textbook affine construction on the rectangle: maps
w_n(x, y) = (a_n x + b_n, c_n x + d_n y + f_n), each taking the whole
data span onto one subinterval and the endpoint values onto the segment
endpoints.  The sampled fixed point of the associated function operator
is computed here with its own coefficient solve, its own interpolation
routine, and its own bucketing convention, deliberately sharing no code
with the projective engine so the two routes stay independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DataOrderingError, ScaleError, ValidationError


@dataclass(frozen=True)
class ClassicalFifSpec:
    """Plane data nodes plus solved affine coefficients per map."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    coeffs: tuple[tuple[float, float, float, float, float], ...]

    @classmethod
    def from_data(
        cls,
        xs: Sequence[float],
        ys: Sequence[float],
        scales: Sequence[float],
    ) -> "ClassicalFifSpec":
        xs = tuple(float(x) for x in xs)
        ys = tuple(float(y) for y in ys)
        if len(xs) != len(ys):
            raise ValidationError(f"{len(xs)} abscissae vs {len(ys)} ordinates")
        if len(xs) < 3:
            raise ValidationError("need at least 3 nodes")
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise DataOrderingError("abscissae must be strictly increasing")
        if len(scales) != len(xs) - 1:
            raise ValidationError(
                f"{len(xs)} nodes need {len(xs) - 1} scales, got {len(scales)}"
            )
        x0, xn = xs[0], xs[-1]
        y0, yn = ys[0], ys[-1]
        span = xn - x0
        coeffs = []
        for i, d in enumerate(scales):
            d = float(d)
            if not abs(d) < 1.0:
                raise ScaleError(f"scale {i + 1} must satisfy |d| < 1, got {d!r}")
            # solve the endpoint constraints directly
            a = (xs[i + 1] - xs[i]) / span
            b = xs[i] - a * x0
            c = (ys[i + 1] - ys[i] - d * (yn - y0)) / span
            f = ys[i] - c * x0 - d * y0
            coeffs.append((a, b, c, d, f))
        spec = cls(xs, ys, tuple(coeffs))
        spec._check_joinup()
        return spec

    def _check_joinup(self) -> None:
        x0, xn = self.xs[0], self.xs[-1]
        y0, yn = self.ys[0], self.ys[-1]
        for i, (a, b, c, d, f) in enumerate(self.coeffs):
            left = (a * x0 + b, c * x0 + d * y0 + f)
            right = (a * xn + b, c * xn + d * yn + f)
            err = max(
                abs(left[0] - self.xs[i]),
                abs(left[1] - self.ys[i]),
                abs(right[0] - self.xs[i + 1]),
                abs(right[1] - self.ys[i + 1]),
            )
            if err > 1e-8:
                raise ValidationError(f"map {i + 1} misses its endpoints by {err:.3e}")


def _lerp_eval(gx: np.ndarray, gy: np.ndarray, w: np.ndarray) -> np.ndarray:
    # manual piecewise-linear evaluation (right-closed segments)
    j = np.searchsorted(gx, w, side="left")
    j = np.clip(j, 1, gx.size - 1)
    xl = gx[j - 1]
    xr = gx[j]
    t = (w - xl) / (xr - xl)
    return gy[j - 1] * (1.0 - t) + gy[j] * t


def classical_fif(
    spec: ClassicalFifSpec,
    grid_m: int = 1025,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[np.ndarray, np.ndarray, int, bool]:
    """Sampled fixed point of the classical function operator.

    Returns (grid, values, iterations, converged).  The grid carries the
    same number of nodes on every segment so data abscissae are nodes.
    """
    n = len(spec.coeffs)
    if grid_m < n + 1 or (grid_m - 1) % n != 0:
        raise ValidationError(f"grid size must be k*{n} + 1, got {grid_m}")
    per = (grid_m - 1) // n
    xs = np.asarray(spec.xs)
    pieces = [np.linspace(xs[i], xs[i + 1], per + 1)[1:] for i in range(n)]
    grid = np.concatenate([xs[:1]] + pieces)

    # segment of each node, right-closed buckets (x_{i-1}, x_i]
    seg = np.clip(np.searchsorted(xs, grid, side="left") - 1, 0, n - 1)
    x0, xn = xs[0], xs[-1]

    vals = _lerp_eval(xs, np.asarray(spec.ys), grid)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        new = np.empty_like(vals)
        for i, (a, b, c, d, f) in enumerate(spec.coeffs):
            mask = seg == i
            w = (grid[mask] - b) / a
            w = np.clip(w, x0, xn)
            new[mask] = c * w + d * _lerp_eval(grid, vals, w) + f
        delta = float(np.max(np.abs(new - vals)))
        vals = new
        if delta < tol:
            converged = True
            break
    return grid, vals, it, converged
