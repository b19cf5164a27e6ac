"""
The named-filter vocabulary shared by the CLI, the simulation and the service.

A name such as ``bel``, ``upper_k:2`` or ``lower_s:0.5`` resolves to a
NamedFilter. Mass filters wrap a FilterSpec and are linear in the mass;
structure filters (gamma, mu, alpha, cp_p) depend only on the algebra.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from . import filters, rough
from .errors import UnknownFilter
from .filters import FilterSpec, IndicatorWeight
from .indicators import IndicatorKind
from .mass import MassFunction, sampling_probability
from .universe import SubsetMask


class FilterKind(Enum):
    """Whether a filter depends on the mass or only on the structure."""
    MASS = "mass"
    STRUCTURE = "structure"


@dataclass(frozen=True)
class NamedFilter:
    """A vocabulary entry: its label, output columns and how to evaluate it."""
    label: str
    kind: FilterKind
    spec: Optional[FilterSpec] = None
    columns: Tuple[str, ...] = ()
    structure_fn: Optional[Callable[[MassFunction, SubsetMask], Tuple[float, ...]]] = None

    def __post_init__(self):
        if not self.columns:
            object.__setattr__(self, "columns", (self.label,))

    def validate(self, m: MassFunction) -> None:
        """Raise the filter's precondition error for this model, if any."""
        if self.spec is not None:
            filters.validate_spec(self.spec, m.family)
        else:
            m.family.require_atoms()

    def evaluate(self, m: MassFunction, e: SubsetMask) -> Tuple[float, ...]:
        """One value per output column."""
        if self.spec is not None:
            return (filters.eval_filter(m, self.spec, e),)
        return self.structure_fn(m, e)


_SIMPLE: Dict[str, FilterSpec] = {
    "bel": filters.BELIEF,
    "pl": filters.PLAUSIBILITY,
    "bel+": filters.BELIEF_PLUS,
    "bel_min": filters.BELIEF_MIN,
    "pl_min": filters.PLAUSIBILITY_MIN,
    "pp": filters.PIGNISTIC,
    "cp": filters.CONTEXTUAL,
}

_K_FAMILIES: Dict[str, Callable[[int], IndicatorKind]] = {
    "upper_k": IndicatorKind.upper_k,
    "lower_k": IndicatorKind.lower_k,
    "pl_k": IndicatorKind.upper_k_capped,
}

_S_FAMILIES: Dict[str, Callable[[str], IndicatorKind]] = {
    "upper_s": IndicatorKind.upper_s,
    "lower_s": IndicatorKind.lower_s,
}


def _gamma(m: MassFunction, e: SubsetMask) -> Tuple[float, ...]:
    return (rough.gamma(m.family, e),)


def _mu(m: MassFunction, e: SubsetMask) -> Tuple[float, ...]:
    result = rough.approximate(m.family, e)
    return result.mu_lower, result.mu_upper


def _alpha(m: MassFunction, e: SubsetMask) -> Tuple[float, ...]:
    return (rough.accuracy(m.family, e),)


def _cp_p(m: MassFunction, e: SubsetMask) -> Tuple[float, ...]:
    return (filters.contextual_prob(sampling_probability(m.family), e),)


_STRUCTURE = {
    "gamma": ((), _gamma),
    "mu": (("mu_lower", "mu_upper"), _mu),
    "alpha": ((), _alpha),
    "cp_p": ((), _cp_p),
}

VOCABULARY = (
    "bel", "pl", "bel+", "bel_min", "pl_min", "pp", "cp", "cp_p",
    "upper_k:<k>", "lower_k:<k>", "upper_s:<s>", "lower_s:<s>", "pl_k:<k>",
    "gamma", "mu", "alpha",
)


def parse_filter(name: str) -> NamedFilter:
    """Resolve a vocabulary name to a NamedFilter."""
    name = name.strip()
    if name in _SIMPLE:
        return NamedFilter(name, FilterKind.MASS, _SIMPLE[name])
    if name in _STRUCTURE:
        columns, fn = _STRUCTURE[name]
        return NamedFilter(name, FilterKind.STRUCTURE, columns=columns, structure_fn=fn)
    family, sep, param = name.partition(":")
    if sep and family in _K_FAMILIES:
        try:
            k = int(param)
        except ValueError as e:
            raise UnknownFilter(f"{name}: k must be an integer") from e
        return NamedFilter(name, FilterKind.MASS, IndicatorWeight(_K_FAMILIES[family](k)))
    if sep and family in _S_FAMILIES:
        try:
            kind = _S_FAMILIES[family](param)
        except (ValueError, ZeroDivisionError) as e:
            raise UnknownFilter(f"{name}: s must be a number in [0, 1]") from e
        return NamedFilter(name, FilterKind.MASS, IndicatorWeight(kind))
    raise UnknownFilter(
        f"unknown filter {name!r}; expected one of {', '.join(VOCABULARY)}")


def parse_filter_list(text: str) -> List[NamedFilter]:
    """Parse a comma-separated filter list, rejecting duplicates."""
    names = [part for part in (p.strip() for p in text.split(",")) if part]
    if not names:
        raise UnknownFilter("no filters given")
    parsed = []
    seen = set()
    for name in names:
        if name in seen:
            raise UnknownFilter(f"filter {name!r} listed twice")
        seen.add(name)
        parsed.append(parse_filter(name))
    return parsed
