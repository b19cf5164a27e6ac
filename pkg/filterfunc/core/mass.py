"""
Mass functions, probability measures on algebras and mass estimation.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import (FilterFuncError, NegativeMass, NoAtoms, NonFiniteMass,
                     NotInFamily, SumNotOne, ZeroObservations)
from .universe import (EMPTY, NeighbourhoodFamily, SubsetMask, Universe,
                       cardinality, is_subset)

logger = logging.getLogger(__name__)

SUM_TOLERANCE = 1e-9


class EstimationMethod(Enum):
    """How observation counts are turned into a mass function."""
    RELATIVE_FREQUENCY = "relative_frequency"
    # obs(X)·|X|/n taken literally; does not sum to one.
    ITEM_WEIGHTED = "item_weighted"


@dataclass(frozen=True)
class MassFunction:
    """Nonnegative weights on the members of a family summing to one.

    Mass on the empty set is allowed (open world). ``normalized`` is False
    only for the item-weighted estimate, which is kept for comparison.
    """
    family: NeighbourhoodFamily
    values: Mapping[SubsetMask, float]
    normalized: bool = True

    def __call__(self, y: SubsetMask) -> float:
        return self.values.get(y, 0.0)

    @property
    def universe(self) -> Universe:
        return self.family.universe

    @property
    def focal_elements(self) -> Tuple[SubsetMask, ...]:
        """Members with strictly positive mass, in canonical order."""
        return tuple(y for y in self.family.members if self.values.get(y, 0.0) > 0.0)

    def total(self) -> float:
        total = 0.0
        for y in self.family.members:
            total += self.values.get(y, 0.0)
        return total


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Additive probability on a Boolean algebra, given by its atom values."""
    algebra: NeighbourhoodFamily
    atom_probs: Mapping[SubsetMask, float]

    def __call__(self, y: SubsetMask) -> float:
        return self.measure(y)

    def measure(self, y: SubsetMask) -> float:
        """p(Y) as the sum of the probabilities of the atoms inside Y."""
        total = 0.0
        for atom in self.algebra.require_atoms():
            if is_subset(atom, y):
                total += self.atom_probs.get(atom, 0.0)
        return total


@dataclass(frozen=True)
class ObservationCounts:
    """How often each member of a family was observed as a solving pattern."""
    family: NeighbourhoodFamily
    counts: Mapping[SubsetMask, int]
    total: int = field(default=-1)

    def __post_init__(self):
        counted = 0
        for y, c in self.counts.items():
            if y not in self.family:
                raise NotInFamily(
                    f"pattern {self.family.universe.render(y)} is not in the structure")
            if c < 0:
                raise NegativeMass(f"negative count {c} for {self.family.universe.render(y)}")
            counted += c
        if self.total == -1:
            object.__setattr__(self, "total", counted)
        elif counted != self.total:
            raise FilterFuncError(f"counts sum to {counted}, expected total {self.total}")

    def __call__(self, y: SubsetMask) -> int:
        return self.counts.get(y, 0)


def _check_sum(total: float, what: str = "masses") -> None:
    deviation = total - 1.0
    # NaN fails this comparison too
    if not abs(deviation) <= SUM_TOLERANCE:
        raise SumNotOne(deviation, what)
    if deviation != 0.0:
        logger.warning("%s sum to 1 within tolerance (deviation %.3g)", what, deviation)


def build_mass(f: NeighbourhoodFamily,
               assignments: Iterable[Tuple[SubsetMask, float]]) -> MassFunction:
    """Validate (subset, mass) pairs against a family and wrap them."""
    values: Dict[SubsetMask, float] = {}
    render = f.universe.render
    for y, value in assignments:
        if y not in f:
            raise NotInFamily(f"{render(y)} is not a member of the family")
        value = float(value)
        if not math.isfinite(value):
            raise NonFiniteMass(f"mass {value} on {render(y)} is not a finite number")
        if value < 0.0:
            raise NegativeMass(f"mass {value} on {render(y)} is negative")
        values[y] = values.get(y, 0.0) + value
    mass = MassFunction(f, values)
    _check_sum(mass.total())
    return mass


def sampling_probability(algebra: NeighbourhoodFamily,
                         u: Optional[Universe] = None) -> ProbabilityMeasure:
    """Principle-of-indifference probability: atom A ↦ |A|/n."""
    atoms = algebra.require_atoms()
    n = (u or algebra.universe).n
    return ProbabilityMeasure(algebra, {atom: cardinality(atom) / n for atom in atoms})


def build_probability(algebra: NeighbourhoodFamily,
                      atom_probs: Mapping[SubsetMask, float]) -> ProbabilityMeasure:
    """Validate atom probabilities against an algebra."""
    atoms = algebra.require_atoms()
    render = algebra.universe.render
    total = 0.0
    for atom, value in atom_probs.items():
        if atom not in atoms:
            raise NotInFamily(f"{render(atom)} is not an atom of the algebra")
        if not math.isfinite(value):
            raise NonFiniteMass(f"probability {value} on {render(atom)} is not a finite number")
        if value < 0.0 or value > 1.0:
            raise NegativeMass(f"probability {value} on {render(atom)} is outside [0, 1]")
    for atom in atoms:
        total += atom_probs.get(atom, 0.0)
    _check_sum(total, "atom probabilities")
    return ProbabilityMeasure(algebra, dict(atom_probs))


def bayesian_mass(p: ProbabilityMeasure) -> MassFunction:
    """The mass function m_p: p on atoms, zero on every other member."""
    atoms = p.algebra.require_atoms()
    return MassFunction(p.algebra, {atom: p.measure(atom) for atom in atoms})


def measure_from_mass(m: MassFunction) -> ProbabilityMeasure:
    """Recover p from a Bayesian mass whose focal elements are atoms."""
    atoms = m.family.atoms
    if atoms is None:
        raise NoAtoms("a Bayesian mass needs a Boolean algebra")
    for y in m.focal_elements:
        if y not in atoms:
            raise NotInFamily(
                f"focal element {m.universe.render(y)} is not an atom; mass is not Bayesian")
    return build_probability(m.family, {atom: m(atom) for atom in atoms})


def estimate_mass(obs: ObservationCounts,
                  method: EstimationMethod = EstimationMethod.RELATIVE_FREQUENCY) -> MassFunction:
    """Estimate m̂ from observed pattern counts.

    The default is the relative frequency obs(X)/N_obs. ITEM_WEIGHTED applies
    obs(X)·|X|/n literally; the result is flagged ``normalized=False``.
    """
    if obs.total <= 0:
        raise ZeroObservations("cannot estimate a mass from zero observations")
    members = obs.family.members
    if method is EstimationMethod.ITEM_WEIGHTED:
        n = obs.family.universe.n
        logger.warning("Item-weighted estimator does not produce a normalized mass")
        values = {y: obs(y) * cardinality(y) / n for y in members if obs(y)}
        return MassFunction(obs.family, values, normalized=False)
    values = {y: obs(y) / obs.total for y in members if obs(y)}
    return MassFunction(obs.family, values)


def empty_mass(m: MassFunction) -> float:
    """m(∅), zero when ∅ is not a member."""
    return m(EMPTY)
