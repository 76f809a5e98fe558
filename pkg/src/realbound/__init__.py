"""Numerical certification of sharp growth bounds for holomorphic maps.

The package evaluates both sides of a family of sharp inequalities for
holomorphic functions on a disc whose image lies in a planar region:
derivative growth against the distance from an image point to the convex
hull boundary, q-power coefficient sums (centered and recentered), and
derivative increments.  It also reproduces the extremal constructions that
witness sharpness: a pole family approaching the boundary and a conformal
map onto the region between two internally tangent discs.
"""

from .bounds import (
    BoundReport,
    QVariant,
    bohr_coeff,
    check_bound,
    deriv_bound_coeff,
    increment_coeff,
    q_functional,
    q_functional_detailed,
    recentered_bohr_coeff,
)
from .corpus import CorpusEntry, builtin_corpus, validate_containment
from .errors import (
    ConfigError,
    ContourError,
    DegenerateGeometryError,
    DomainValidityError,
    HypothesisViolationError,
    NearZeroDivisionError,
    NumericalError,
    PhaseUndefinedError,
    RealboundError,
    TruncationError,
)
from .families import (
    AffineTransform,
    BohrSweepResult,
    CrescentParams,
    PoleParams,
    SweepRow,
    apply_transform,
    choose_phase,
    coefficient_magnitude_estimate,
    crescent_coefficients,
    crescent_map,
    crescent_region,
    pole_extremal,
    sharpness_sweep_bohr,
    sharpness_sweep_deriv,
    sharpness_sweep_increment,
)
from .geometry import (
    BoundaryDistance,
    CrescentDomain,
    Disc,
    Domain,
    HalfPlane,
    PolygonHull,
    SampledBoundary,
    Strip,
    build_crescent,
    contains,
    convex_hull,
    dist_to_hull_boundary,
    domain_from_json,
    domain_to_json,
    hull_of_domain,
    regular_convexity_certificate,
    sample_boundary,
    support_halfplane_at,
)
from .harness import (
    ExperimentConfig,
    ExperimentResult,
    config_from_dict,
    load_config,
    run_experiment,
)
from .series import (
    AnalyticFunction,
    PowerSeries,
    TailSumResult,
    cauchy_derivative,
    increment_lhs,
    recenter,
    series_at_zero,
)

__version__ = "0.1.0"
