"""Committee elections on the line metric.

Ordinal multi-winner voting rules with proven worst-case cost ratios, exact
rational cost evaluation, optimal-committee oracles, adversarial search over
consistent metrics, and generators for the tight lower-bound instance
families.
"""

from .costs import Objective, alternative_cost, social_cost, voter_cost
from .distortion import (
    AdversarialResult,
    FixedDistortion,
    FocalQuery,
    MoveConstraints,
    adversarial_distortion,
    distortion_fixed,
    focal_point,
    move_voters,
    ratio_bound,
)
from .generators import (
    TwoMetricInstance,
    gen_lb_k2,
    gen_lb_k_extremes,
    gen_lb_large_k,
    gen_lb_small_k,
    gen_random,
)
from .model import (
    Committee,
    ConsistencyMode,
    Election,
    LineMetric,
    Scalar,
    check_consistency,
    derive_profile,
    make_metric,
    validate_election,
)
from .optimal import OptResult, optimal_bruteforce, optimal_utilitarian
from .ordering import (
    AlternativeOrder,
    MajorityOrder,
    majority_order,
    order_alternatives,
    pairwise_margin,
    pareto_dominated,
)
from .rules import (
    compose,
    distortion_bound,
    interior_committee,
    k_extremes,
    polar_general,
    polar_k2,
    polar_k3,
    rule_by_id,
    top_of_majority,
    within_sqrt2_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
