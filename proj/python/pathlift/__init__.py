"""Exact liftings of paths of probability measures on finite metric spaces."""

from ._pathlift import (
    CubeInterpolation,
    DomainError,
    InvariantError,
    LiftedPath,
    Measure,
    MetricSpace,
    ParseError,
    PolygonalPath,
    RandomVariable,
    SampledPath,
    approximate_polygonal,
    canonical_rv,
    joint_mass,
    kyfan,
    lift_path,
    lift_polygonal,
    match_to_law,
    prokhorov,
    prokhorov_subsets,
    relift,
    segment,
    selftest,
    total_variation,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
