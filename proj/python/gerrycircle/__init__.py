"""Voter circle gerrymandering analysis, compactness metrics and split-line districting."""

from ._core import (
    NumericalError,
    ValidationError,
    I_term,
    J_term,
    brownian_event_estimate,
    chord_objective,
    closed_form_limit,
    compactness,
    enumerate_d_distribution,
    estimate_distribution,
    expected_district_share,
    generate_votes,
    limit_d0,
    optimal_gerrymander,
    prob_d2_exact,
    series_I,
    series_J,
    split_inertia,
    splitline,
    trivariate_density,
    verify_geometry,
    verify_ivt,
    walk_identity_holds,
)

__version__ = "0.1.0"
