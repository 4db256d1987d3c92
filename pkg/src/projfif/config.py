"""Job configuration: a small TOML schema with strict validation.

A job file is plain TOML with the keys documented in the README (and in
``KNOWN_KEYS`` below).  ``points`` and ``scales`` are required; every
other key has a default.  Unknown keys are rejected so typos fail loudly
instead of silently falling back to defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

import math

from .errors import ConfigError

KNOWN_KEYS = frozenset(
    {
        "points",
        "scales",
        "theta",
        "grid_m",
        "tol",
        "max_iter",
        "n_points",
        "burn_in",
        "seed",
        "viewport",
        "raster_width",
        "raster_height",
        "slice_levels",
        "out_dir",
    }
)


@dataclass(frozen=True)
class JobSpec:
    """One fully validated rendering/analysis job."""

    points: tuple[tuple[float, float, float], ...]
    scales: tuple[float, ...]
    theta: float | None = None
    grid_m: int = 1025
    tol: float = 1e-10
    max_iter: int = 200
    n_points: int = 100_000
    burn_in: int = 50
    seed: int = 1729
    viewport: tuple[float, float, float, float] | None = None
    raster_width: int = 256
    raster_height: int = 256
    slice_levels: tuple[float, ...] = ()
    out_dir: str | None = None


def _expect_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{path}: must be finite, got {value!r}")
    return value


def _expect_int(value, path: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}, got {value}")
    return value


def parse_config(text: str) -> JobSpec:
    """Parse and validate job text, raising ConfigError on any problem.

    Parse errors carry the line/column from the TOML reader; semantic
    errors carry the offending field path.
    """
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"config parse error: {e}") from e

    unknown = sorted(set(raw) - KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")
    for key in ("points", "scales"):
        if key not in raw:
            raise ConfigError(f"{key}: required key is missing")

    pts_raw = raw["points"]
    if not isinstance(pts_raw, list) or len(pts_raw) < 3:
        raise ConfigError("points: expected a list of at least 3 triples")
    points = []
    for i, trip in enumerate(pts_raw):
        if not isinstance(trip, list) or len(trip) != 3:
            raise ConfigError(f"points[{i}]: expected a triple [x, y, z]")
        points.append(tuple(_expect_number(c, f"points[{i}][{j}]") for j, c in enumerate(trip)))
        if abs(points[-1][2]) < 1e-12:
            raise ConfigError(f"points[{i}]: last coordinate must be nonzero")

    scales_raw = raw["scales"]
    if not isinstance(scales_raw, list):
        raise ConfigError("scales: expected a list of numbers")
    scales = tuple(_expect_number(s, f"scales[{i}]") for i, s in enumerate(scales_raw))
    if len(scales) != len(points) - 1:
        raise ConfigError(
            f"scales: {len(points)} points define {len(points) - 1} segments, "
            f"got {len(scales)} scales"
        )
    for i, s in enumerate(scales):
        if not abs(s) < 1.0:
            raise ConfigError(f"scales[{i}]: need |scale| < 1, got {s!r}")

    theta = None
    if "theta" in raw:
        theta = _expect_number(raw["theta"], "theta")
        if not theta > 0.0:
            raise ConfigError(f"theta: must be positive, got {theta!r}")

    grid_m = _expect_int(raw.get("grid_m", 1025), "grid_m", 3)
    n_seg = len(points) - 1
    if (grid_m - 1) % n_seg != 0:
        raise ConfigError(
            f"grid_m: must be k*{n_seg} + 1 so data nodes are grid nodes, got {grid_m}"
        )

    tol = _expect_number(raw.get("tol", 1e-10), "tol")
    if not tol > 0.0:
        raise ConfigError(f"tol: must be positive, got {tol!r}")
    max_iter = _expect_int(raw.get("max_iter", 200), "max_iter", 1)
    n_points = _expect_int(raw.get("n_points", 100_000), "n_points", 1)
    burn_in = _expect_int(raw.get("burn_in", 50), "burn_in", 0)
    seed = _expect_int(raw.get("seed", 1729), "seed", 0)

    viewport = None
    if "viewport" in raw:
        vp_raw = raw["viewport"]
        if not isinstance(vp_raw, list) or len(vp_raw) != 4:
            raise ConfigError("viewport: expected [x_min, x_max, y_min, y_max]")
        viewport = tuple(_expect_number(c, f"viewport[{i}]") for i, c in enumerate(vp_raw))
        if not (viewport[0] < viewport[1] and viewport[2] < viewport[3]):
            raise ConfigError("viewport: min bounds must be below max bounds")

    raster_width = _expect_int(raw.get("raster_width", 256), "raster_width", 16)
    raster_height = _expect_int(raw.get("raster_height", 256), "raster_height", 16)

    slice_levels = ()
    if "slice_levels" in raw:
        sl_raw = raw["slice_levels"]
        if not isinstance(sl_raw, list):
            raise ConfigError("slice_levels: expected a list of numbers")
        slice_levels = tuple(
            _expect_number(s, f"slice_levels[{i}]") for i, s in enumerate(sl_raw)
        )
        for i, s in enumerate(slice_levels):
            if abs(s) < 1e-12:
                raise ConfigError(f"slice_levels[{i}]: level must be nonzero")

    out_dir = raw.get("out_dir")
    if out_dir is not None and not isinstance(out_dir, str):
        raise ConfigError(f"out_dir: expected a string, got {out_dir!r}")

    return JobSpec(
        points=tuple(points),
        scales=scales,
        theta=theta,
        grid_m=grid_m,
        tol=tol,
        max_iter=max_iter,
        n_points=n_points,
        burn_in=burn_in,
        seed=seed,
        viewport=viewport,
        raster_width=raster_width,
        raster_height=raster_height,
        slice_levels=slice_levels,
        out_dir=out_dir,
    )


def _toml_scalar(value) -> str:
    if isinstance(value, bool):
        raise ConfigError(f"cannot emit {value!r}")
    if isinstance(value, int):
        return repr(value)
    if isinstance(value, float):
        # repr round-trips doubles exactly and is valid TOML
        out = repr(value)
        return out if any(ch in out for ch in ".eE") else out + ".0"
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise ConfigError(f"cannot emit {value!r}")


def emit_config(spec: JobSpec) -> str:
    """Serialize a JobSpec as TOML such that parse_config round-trips it."""
    lines = []
    pts = ", ".join(
        "[" + ", ".join(_toml_scalar(float(c)) for c in p) + "]" for p in spec.points
    )
    lines.append(f"points = [{pts}]")
    lines.append("scales = [" + ", ".join(_toml_scalar(float(s)) for s in spec.scales) + "]")
    for fld in fields(spec):
        if fld.name in ("points", "scales"):
            continue
        value = getattr(spec, fld.name)
        if value is None:
            continue
        if fld.name in ("viewport", "slice_levels"):
            if len(value) == 0:
                continue
            body = ", ".join(_toml_scalar(float(c)) for c in value)
            lines.append(f"{fld.name} = [{body}]")
        else:
            lines.append(f"{fld.name} = {_toml_scalar(value)}")
    return "\n".join(lines) + "\n"
