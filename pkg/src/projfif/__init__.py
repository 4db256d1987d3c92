"""Projective-plane fractal interpolation toolkit."""

from .classical import ClassicalFifSpec, classical_fif
from .config import JobSpec, emit_config, parse_config
from .engine import (
    IterationTrace,
    PointCloud,
    chaos_game,
    cloud_from_graph,
    data_grid,
    deterministic_attractor,
    endpoint_segment,
    evaluate,
    fixed_point_graph,
    hausdorff_distance,
    hutchinson_step,
    linear_seed,
    refine,
    slice_at_level,
    snap_dedup,
)
from .errors import (
    CloudLimitError,
    ConfigError,
    ConvergenceError,
    DataOrderingError,
    DegenerateIntervalError,
    GridAlignmentError,
    GridMismatchError,
    HyperplaneError,
    ProjFifError,
    ScaleError,
    ValidationError,
)
from .geometry import ProjInterval, ProjRectangle, SampledGraph, graph_sup_dist
from .ifs import (
    ContractionCertificate,
    DegenerateScaleWarning,
    InterpolationData,
    JoinupReport,
    ProjIfs,
    ProjectiveMap,
    build_ifs,
    contraction_certificate,
    interval_coeffs,
    value_coeffs,
    verify_joinup,
)
from .projective import (
    ZERO,
    AbscissaPoint,
    OrdinatePoint,
    ProjPoint,
    axis_dist,
    dist,
    dist_round,
    dist_theta,
    equiv,
    is_orthogonal,
)

__version__ = "0.1.0"

__all__ = [
    "AbscissaPoint",
    "ClassicalFifSpec",
    "CloudLimitError",
    "ConfigError",
    "ContractionCertificate",
    "ConvergenceError",
    "DataOrderingError",
    "DegenerateIntervalError",
    "DegenerateScaleWarning",
    "GridAlignmentError",
    "GridMismatchError",
    "HyperplaneError",
    "InterpolationData",
    "IterationTrace",
    "JobSpec",
    "JoinupReport",
    "OrdinatePoint",
    "PointCloud",
    "ProjFifError",
    "ProjIfs",
    "ProjInterval",
    "ProjPoint",
    "ProjRectangle",
    "ProjectiveMap",
    "SampledGraph",
    "ScaleError",
    "ValidationError",
    "ZERO",
    "axis_dist",
    "build_ifs",
    "chaos_game",
    "classical_fif",
    "cloud_from_graph",
    "contraction_certificate",
    "data_grid",
    "deterministic_attractor",
    "dist",
    "dist_round",
    "dist_theta",
    "emit_config",
    "endpoint_segment",
    "equiv",
    "evaluate",
    "fixed_point_graph",
    "graph_sup_dist",
    "hausdorff_distance",
    "hutchinson_step",
    "interval_coeffs",
    "is_orthogonal",
    "linear_seed",
    "parse_config",
    "refine",
    "slice_at_level",
    "snap_dedup",
    "value_coeffs",
    "verify_joinup",
]
