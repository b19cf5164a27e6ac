"""
Filter functions over finite universes.

Set machinery, mass functions, indicators, the general filter engine and
rough-set approximations.
"""

from .catalog import FilterKind, NamedFilter, parse_filter, parse_filter_list
from .errors import FilterFuncError
from .filters import (ContextualMassWeight, ContextualProbWeight, FilterSpec,
                      IndicatorWeight, PignisticWeight, RestrictToFamily,
                      belief, belief_min, belief_plus, contextual_mass,
                      contextual_prob, eval_filter, normalization_constant,
                      pignistic, plausibility, plausibility_min)
from .indicators import IndicatorKind, IndicatorTag, eval_indicator
from .mass import (EstimationMethod, MassFunction, ObservationCounts,
                   ProbabilityMeasure, bayesian_mass, build_mass,
                   build_probability, estimate_mass, measure_from_mass,
                   sampling_probability)
from .rough import (ApproximationResult, accuracy, approximate, gamma,
                    rough_membership)
from .universe import (NeighbourhoodFamily, SubsetMask, Universe,
                       build_algebra_from_partition, build_universe,
                       enumerate_subsets, noa, validate_family)

__all__ = [
    "ApproximationResult", "ContextualMassWeight", "ContextualProbWeight",
    "EstimationMethod", "FilterFuncError", "FilterKind", "FilterSpec",
    "IndicatorKind", "IndicatorTag", "IndicatorWeight", "MassFunction",
    "NamedFilter", "NeighbourhoodFamily", "ObservationCounts",
    "PignisticWeight", "ProbabilityMeasure", "RestrictToFamily", "SubsetMask",
    "Universe", "accuracy", "approximate", "bayesian_mass", "belief",
    "belief_min", "belief_plus", "build_algebra_from_partition", "build_mass",
    "build_probability", "build_universe", "contextual_mass",
    "contextual_prob", "enumerate_subsets", "estimate_mass", "eval_filter",
    "eval_indicator", "gamma", "measure_from_mass", "noa",
    "normalization_constant", "parse_filter", "parse_filter_list",
    "pignistic", "plausibility", "plausibility_min", "rough_membership",
    "sampling_probability", "validate_family",
]
