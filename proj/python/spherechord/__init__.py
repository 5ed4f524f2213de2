"""Chord-length and point-distance distributions for convex bodies on spheres.

The heavy lifting lives in the compiled ``_spherechord`` extension; this
package re-exports its surface.
"""

from ._spherechord import (
    ConvexSphericalBody,
    EfficiencyError,
    SphericalCap,
    UnsupportedBodyError,
    ball_volume,
    body_measures_mc,
    bp_constant,
    cap_boundary_area,
    cap_delta_cdf,
    cap_delta_density,
    cap_sigma_cdf_check,
    cap_sigma_survival,
    cap_volume,
    crofton_hit_check,
    delta_density_from_cap_sigma,
    delta_density_from_sigma_samples,
    even_dim_cap_delta_density,
    orthant_boundary_area,
    orthant_volume,
    reduction_integral,
    run_suite,
    sample_delta_body,
    sample_delta_cap,
    sample_points_in_body,
    sample_points_in_cap,
    sample_sigma_body,
    sample_sigma_cap,
    sin_power_antiderivative,
    sin_power_double_antiderivative,
    sphere_surface_area,
    spherical_distance,
)

__all__ = [
    "ConvexSphericalBody",
    "EfficiencyError",
    "SphericalCap",
    "UnsupportedBodyError",
    "ball_volume",
    "body_measures_mc",
    "bp_constant",
    "cap_boundary_area",
    "cap_delta_cdf",
    "cap_delta_density",
    "cap_sigma_cdf_check",
    "cap_sigma_survival",
    "cap_volume",
    "crofton_hit_check",
    "delta_density_from_cap_sigma",
    "delta_density_from_sigma_samples",
    "even_dim_cap_delta_density",
    "orthant_boundary_area",
    "orthant_volume",
    "reduction_integral",
    "run_suite",
    "sample_delta_body",
    "sample_delta_cap",
    "sample_points_in_body",
    "sample_points_in_cap",
    "sample_sigma_body",
    "sample_sigma_cap",
    "sin_power_antiderivative",
    "sin_power_double_antiderivative",
    "sphere_surface_area",
    "spherical_distance",
]
