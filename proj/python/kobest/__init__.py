"""Kobayashi-distance estimates and non-hyperbolicity witness experiments."""

from ._core import (  # noqa: F401
    Domain,
    ball,
    coordinate_disc_hull,
    delta_fourpoint_disc,
    disc,
    distance_disc,
    distance_halfplane,
    distance_lower_bound_cconvex,
    distance_lower_bound_halfspace,
    distance_lower_bound_wlc,
    distance_punctured_disc,
    distance_upper_mesh,
    domain_from_json,
    halfplane,
    kobayashi_distance,
    localization_multiplier,
    lower_bound_punctured_log,
    metric_disc,
    metric_lower_bound_cconvex,
    metric_punctured_disc,
    metric_upper_bound,
    minus_hyperplanes,
    polydisc,
    product,
    punctured_disc,
    radial_geodesic_point,
    run_experiment,
    tent_point,
    verify_radial_geodesic,
)

__version__ = "0.1.0"
