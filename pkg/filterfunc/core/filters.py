"""
The general filter F(E) = Σ m(Y)·w(E, Y) and the named estimators built on it.

Every named estimator is eval_filter with a fixed FilterSpec, so the two
agree bit for bit. Sums always run over the family members in canonical
order, accumulating ``mass * weight`` starting from 0.0; the vectorised
replication engine in ``filterfunc.sim`` relies on that exact order.
"""

import logging
from dataclasses import dataclass
from typing import Union

from .errors import BadNormalization, FilterRangeError, InvalidParameter
from .indicators import IndicatorKind, eval_indicator
from .mass import MassFunction, ProbabilityMeasure
from .universe import EMPTY, NeighbourhoodFamily, SubsetMask, cardinality

logger = logging.getLogger(__name__)

FilterValue = float

RANGE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class IndicatorWeight:
    """w(E, Y) = ind(E, Y) for one of the indicator families."""
    kind: IndicatorKind

    def __str__(self) -> str:
        return str(self.kind)


@dataclass(frozen=True)
class PignisticWeight:
    """w(E, Y) = |E ∩ Y| / noa(Y) for nonempty Y; needs an algebra."""

    def __str__(self) -> str:
        return "pignistic"


@dataclass(frozen=True)
class ContextualMassWeight:
    """w(E, Y) = |E ∩ Y| / |Y| for nonempty Y."""

    def __str__(self) -> str:
        return "contextual"


@dataclass(frozen=True)
class ContextualProbWeight:
    """w(E, Y) = |E ∩ Y| / K."""
    K: float

    def __str__(self) -> str:
        return f"contextual(K={self.K})"


@dataclass(frozen=True)
class RestrictToFamily:
    """Gate an inner weight by ind_N(E): zero unless E is a member."""
    inner: "FilterSpec"

    def __str__(self) -> str:
        return f"restricted({self.inner})"


FilterSpec = Union[IndicatorWeight, PignisticWeight, ContextualMassWeight,
                   ContextualProbWeight, RestrictToFamily]


def validate_spec(spec: FilterSpec, family: NeighbourhoodFamily) -> None:
    """Check a spec against a family before any evaluation."""
    if isinstance(spec, RestrictToFamily):
        if isinstance(spec.inner, RestrictToFamily):
            raise InvalidParameter("RestrictToFamily nests exactly one level")
        validate_spec(spec.inner, family)
    elif isinstance(spec, IndicatorWeight):
        spec.kind.validate_for(family.universe)
    elif isinstance(spec, PignisticWeight):
        family.require_atoms()
    elif isinstance(spec, ContextualProbWeight):
        if not spec.K > 0:
            raise BadNormalization(f"normalization K must be positive, got {spec.K}")
    elif not isinstance(spec, ContextualMassWeight):
        raise InvalidParameter(f"unknown filter spec {spec!r}")


def weight(spec: FilterSpec, family: NeighbourhoodFamily,
           e: SubsetMask, y: SubsetMask) -> float:
    """w(e, y) for a validated spec."""
    if isinstance(spec, IndicatorWeight):
        return float(eval_indicator(spec.kind, e, y))
    if isinstance(spec, ContextualMassWeight):
        if y == EMPTY:
            return 0.0
        return cardinality(e & y) / cardinality(y)
    if isinstance(spec, PignisticWeight):
        if y == EMPTY:
            return 0.0
        return cardinality(e & y) / family.noa(y)
    if isinstance(spec, ContextualProbWeight):
        return cardinality(e & y) / spec.K
    if isinstance(spec, RestrictToFamily):
        if e not in family:
            return 0.0
        return weight(spec.inner, family, e, y)
    raise InvalidParameter(f"unknown filter spec {spec!r}")


def _bounded(spec: FilterSpec) -> bool:
    while isinstance(spec, RestrictToFamily):
        spec = spec.inner
    return not isinstance(spec, ContextualProbWeight)


def eval_filter(m: MassFunction, spec: FilterSpec, e: SubsetMask) -> FilterValue:
    """F(e) = Σ m(Y)·w(e, Y) over the members of m's family."""
    family = m.family
    family.universe.check(e)
    validate_spec(spec, family)
    total = 0.0
    for y in family.members:
        total += m(y) * weight(spec, family, e, y)
    if m.normalized and _bounded(spec) and not (
            -RANGE_TOLERANCE <= total <= 1.0 + RANGE_TOLERANCE):
        raise FilterRangeError(
            f"{spec} gives {total!r} on {family.universe.render(e)}; the mass is invalid")
    return total


BELIEF = IndicatorWeight(IndicatorKind.lower())
PLAUSIBILITY = IndicatorWeight(IndicatorKind.upper())
# LowerK(1): Y ⊆ E and Y nonempty.
BELIEF_PLUS = IndicatorWeight(IndicatorKind.lower_k(1))
BELIEF_MIN = RestrictToFamily(BELIEF)
PLAUSIBILITY_MIN = IndicatorWeight(IndicatorKind.subset())
PIGNISTIC = PignisticWeight()
CONTEXTUAL = ContextualMassWeight()


def belief(m: MassFunction, e: SubsetMask) -> FilterValue:
    """Degree of belief: total mass of members contained in e."""
    return eval_filter(m, BELIEF, e)


def plausibility(m: MassFunction, e: SubsetMask) -> FilterValue:
    """Degree of plausibility: total mass of members meeting e."""
    return eval_filter(m, PLAUSIBILITY, e)


def pignistic(m: MassFunction, e: SubsetMask) -> FilterValue:
    return eval_filter(m, PIGNISTIC, e)


def contextual_mass(m: MassFunction, e: SubsetMask) -> FilterValue:
    return eval_filter(m, CONTEXTUAL, e)


def belief_plus(m: MassFunction, e: SubsetMask) -> FilterValue:
    """Belief without the empty pattern: bel(e) - m(∅)."""
    return eval_filter(m, BELIEF_PLUS, e)


def belief_min(m: MassFunction, e: SubsetMask) -> FilterValue:
    """Belief gated to events that are members of the family."""
    return eval_filter(m, BELIEF_MIN, e)


def plausibility_min(m: MassFunction, e: SubsetMask) -> FilterValue:
    """Mass of the members that contain e."""
    return eval_filter(m, PLAUSIBILITY_MIN, e)


def normalization_constant(p: ProbabilityMeasure) -> float:
    """K = Σ p(Y)·|Y| over every member of the algebra."""
    total = 0.0
    for y in p.algebra.members:
        total += p.measure(y) * cardinality(y)
    return total


def contextual_prob(p: ProbabilityMeasure, e: SubsetMask) -> FilterValue:
    """Contextual probability with respect to p: Σ p(Y)·|e ∩ Y| / K."""
    algebra = p.algebra
    algebra.universe.check(e)
    k_norm = normalization_constant(p)
    if not k_norm > 0:
        raise BadNormalization(f"normalization K must be positive, got {k_norm}")
    spec = ContextualProbWeight(k_norm)
    total = 0.0
    for y in algebra.members:
        total += p.measure(y) * weight(spec, algebra, e, y)
    return total
