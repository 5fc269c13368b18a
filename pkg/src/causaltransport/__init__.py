"""Causal precedence between probability measures on finite event sets.

Core objects: grounds (event sets with a base relation), their causal
closures, exact rational measures, and time functions.  The central
question "does mu precede nu over this relation" is decided by integer
max flow with witness couplings and violating-set certificates, and is
cross-checked against enumeration oracles, threshold and integral
conditions, and separating families of time functions.
"""

from ._kernels import backend_name, set_backend
from .audit import AuditReport, TrialRecord, run_audit
from .errors import (CapacityError, CausalTransportError,
                     InvariantViolationError, NotStablyCausalError,
                     ValidationError)
from .measures import (Coupling, Measure, common_denominator,
                       diagonal_pushforward, marginals, mass_on, measure_of,
                       pushforward_scores, scaled_weights)
from .models import (MinkowskiSample, boost_time_function, gen_cyclic,
                     gen_measure, gen_minkowski, gen_random_dag,
                     gen_time_function)
from .relations import (CausalGround, Relation, causal_closure,
                        complement_duality_check, diagonal, full_relation,
                        future_set, is_antisymmetric, is_future_closed,
                        is_past_closed, is_preorder, is_reflexive,
                        is_stably_causal, is_transitive, past_set)
from .timefns import (MultiTimeFamily, PrefixReport, SmoothingParams,
                      TimeFunction, antisymmetry_verdict,
                      build_separating_family, check_integral_condition,
                      check_threshold_condition, event_heights,
                      monotone_phi_sampler, multi_time_ordering,
                      phi_smoothing, prefix_monotonicity_check,
                      t_kl_indicator_demo, time_ordering,
                      up_set_indicator_functions, weighted_sum_functional)
from .transport import (EquivalenceReport, RelatednessVerdict,
                        check_compact_condition,
                        check_future_closed_condition,
                        check_past_closed_condition,
                        check_past_compact_condition, equivalence_audit,
                        oracle_relate, relate, verify_verdict)

# k_plus is the traditional name for the causal closure operator
k_plus = causal_closure

__version__ = "0.1.0"

__all__ = [
    "backend_name", "set_backend",
    "CausalTransportError", "ValidationError", "CapacityError",
    "NotStablyCausalError", "InvariantViolationError",
    "Measure", "Coupling", "marginals", "diagonal_pushforward", "mass_on",
    "measure_of", "pushforward_scores", "common_denominator", "scaled_weights",
    "Relation", "CausalGround", "causal_closure", "k_plus", "diagonal",
    "full_relation", "future_set", "past_set", "is_future_closed",
    "is_past_closed", "is_antisymmetric", "is_reflexive", "is_transitive",
    "is_preorder", "is_stably_causal", "complement_duality_check",
    "TimeFunction", "MultiTimeFamily", "SmoothingParams", "PrefixReport",
    "build_separating_family", "time_ordering", "multi_time_ordering",
    "check_threshold_condition", "check_integral_condition",
    "weighted_sum_functional", "antisymmetry_verdict", "phi_smoothing",
    "t_kl_indicator_demo", "monotone_phi_sampler", "prefix_monotonicity_check",
    "event_heights", "up_set_indicator_functions",
    "RelatednessVerdict", "EquivalenceReport", "relate", "oracle_relate",
    "check_compact_condition", "check_past_compact_condition",
    "check_future_closed_condition", "check_past_closed_condition",
    "equivalence_audit", "verify_verdict",
    "MinkowskiSample", "gen_random_dag", "gen_cyclic", "gen_minkowski",
    "gen_measure", "gen_time_function", "boost_time_function",
    "AuditReport", "TrialRecord", "run_audit",
]
