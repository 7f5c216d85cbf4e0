"""Accuracy analysis of connectivity-based coverage-hole detection on a sphere.

The package samples Poisson sensor deployments, detects triangular coverage
holes that a communication-graph (Rips) view misses relative to the true
sensing-cap (Cech) view, estimates their area proportion by Monte Carlo, and
evaluates closed-form lower/upper bounds by nested quadrature.
"""

from .geometry import (
    Cap,
    NoIntersectionError,
    SphericalPoint,
    SphericalTriangle,
    angular_distance,
    azimuthal_half_width,
    cap_area,
    cap_boundary_colatitude,
    great_circle_distance,
    geodesic_midpoint,
    min_enclosing_cap,
    point_in_spherical_triangle,
)
from .poisson import NodeSet, sample_cap_poisson, sample_sphere_poisson
from .complexes import Complex2, build_cech2, build_rips2, check_inclusion, rips_threshold
from .montecarlo import (
    MCEstimate,
    NetworkConfig,
    estimate_p,
    estimate_second_case,
    in_triangular_hole,
)
from .bounds import (
    BoundResult,
    CaseGeometry,
    CaseLabel,
    SECOND_CASE_CEILING,
    area_S_minus,
    area_S_plus,
    classify,
    closest_node_density,
    evaluate_bounds,
    lower_bound,
    required_intensity,
    upper_bound,
)
from .sweep import ResultRow, SweepSpec, run_sweep, write_csv

__version__ = "0.1.0"

__all__ = [
    "Cap",
    "NoIntersectionError",
    "SphericalPoint",
    "SphericalTriangle",
    "angular_distance",
    "azimuthal_half_width",
    "cap_area",
    "cap_boundary_colatitude",
    "great_circle_distance",
    "geodesic_midpoint",
    "min_enclosing_cap",
    "point_in_spherical_triangle",
    "NodeSet",
    "sample_cap_poisson",
    "sample_sphere_poisson",
    "Complex2",
    "build_cech2",
    "build_rips2",
    "check_inclusion",
    "rips_threshold",
    "MCEstimate",
    "NetworkConfig",
    "estimate_p",
    "estimate_second_case",
    "in_triangular_hole",
    "BoundResult",
    "CaseGeometry",
    "CaseLabel",
    "SECOND_CASE_CEILING",
    "area_S_minus",
    "area_S_plus",
    "classify",
    "closest_node_density",
    "evaluate_bounds",
    "lower_bound",
    "required_intensity",
    "upper_bound",
    "ResultRow",
    "SweepSpec",
    "run_sweep",
    "write_csv",
]
