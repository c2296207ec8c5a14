"""Exact-arithmetic capital adequacy testing.

Distributions of capital positions with exact rational quantile calculus,
VaR/expected-shortfall/distortion risk measures, the VaR-induced acceptance
families with dual-route membership, falsifier-style checkers for the
acceptance-set axioms, classification of axiom-satisfying sets, and
machine-checked counterexamples.
"""

from .acceptance import (
    AcceptanceSet,
    CollapseReport,
    DistortionSet,
    ExpectedShortfallSet,
    InclusionReport,
    MembershipError,
    MembershipVerdict,
    OracleSet,
    RouteDisagreement,
    Shortfall,
    VarStrict,
    VarUniformStrict,
    VarWeak,
    describe_set,
    finite_support_collapse_check,
    inclusion_check,
    member,
    shortfall_member,
)
from .characterize import (
    ClassificationReport,
    DominanceError,
    RearrangedPosition,
    approximate_from_below,
    approximation_distance,
    classify,
    closure_sequence,
    comonotone_rearrangement,
    critical_level,
    strict_to_weak_level,
    surplus_dominance_scale,
)
from .counterexamples import (
    Claim,
    CounterexampleReport,
    es_surplus_counterexample,
    strict_sandwich_construction,
    uniform_numeraire_counterexample,
    weak_star_step_approximation,
)
from .distribution import (
    Affine,
    Constant,
    FiniteDistribution,
    MonotoneMap,
    NegSqrt,
    NotRepresentableError,
    PiecewiseQuantile,
    Position,
    Segment,
    cdf,
    cdf_left,
    kyfan_distance,
    kyfan_law_distance,
    negative_part_quantile,
    quantile_left,
    quantile_right,
    transform_decreasing,
    transform_increasing,
    truncate,
)
from .extended import NEG_INF, POS_INF, ExtendedRational, Infinite, as_rational, format_extended
from .piecewise import PiecewiseLinear
from .properties import (
    ConvergentSequence,
    PositionUniverse,
    PropertyReport,
    accepts,
    check_cip_closedness,
    check_conicity,
    check_law_invariance,
    check_numeraire_invariance,
    check_surplus_invariance,
    check_truncation_closedness,
    replay_cip,
    replay_conicity,
    replay_law,
    replay_numeraire,
    replay_surplus,
    replay_truncation,
)
from .risk_measures import (
    DistortionFunction,
    DistortionSpec,
    ESSpec,
    VaRLowerSpec,
    VaRUpperSpec,
    distortion_measure,
    distortion_measure_quantile_form,
    distortion_truncation_limit_check,
    evaluate_measure,
    expected_shortfall,
    var_lower,
    var_lower_via_loss_law,
    var_upper,
    var_upper_via_loss_law,
)

__version__ = "0.1.0"
