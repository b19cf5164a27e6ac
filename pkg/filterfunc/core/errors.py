"""
Exceptions raised by the filterfunc library.

Every error derives from FilterFuncError (itself a ValueError) so callers can
catch the whole family; the CLI and the HTTP service map it to exit/status
codes.
"""

from typing import Optional


class FilterFuncError(ValueError):
    """Base class for all library errors."""


class EmptyUniverse(FilterFuncError):
    """A universe needs at least one element."""


class TooLarge(FilterFuncError):
    """A universe or algebra exceeds the supported size."""


class DuplicateLabel(FilterFuncError):
    """An element label appears twice in a universe."""


class NotAPartition(FilterFuncError):
    """Blocks overlap, leave a gap, or one of them is empty."""


class DuplicateMember(FilterFuncError):
    """A subset appears twice in a neighbourhood family."""


class OutOfUniverse(FilterFuncError):
    """A subset mask has bits beyond the universe size."""


class NoAtoms(FilterFuncError):
    """The operation needs a Boolean algebra but the family is not one."""


class NotAMember(FilterFuncError):
    """The subset is not a member of the family."""


class NotInFamily(FilterFuncError):
    """A mass was assigned to a subset outside the family."""


class NegativeMass(FilterFuncError):
    """A mass value is negative."""


class NonFiniteMass(FilterFuncError):
    """A mass or probability value is NaN or infinite."""


class SumNotOne(FilterFuncError):
    """Mass values do not sum to one."""

    def __init__(self, deviation: float, what: str = "masses"):
        self.deviation = deviation
        super().__init__(
            f"{what} sum to {1.0 + deviation:.12g}, deviation {deviation:+.12g} from 1")


class ZeroObservations(FilterFuncError):
    """Observation counts total zero."""


class BadNormalization(FilterFuncError):
    """A normalization constant is not strictly positive."""


class InvalidParameter(FilterFuncError):
    """An indicator or filter parameter is outside its range."""


class FilterRangeError(FilterFuncError):
    """A filter value left [0, 1], which means the mass was invalid."""


class EmptySample(FilterFuncError):
    """Summary statistics were requested for an empty sample."""


class UnknownFilter(FilterFuncError):
    """A filter name is not part of the vocabulary."""


class ConfigError(FilterFuncError):
    """The configuration is invalid or cannot be read."""


class ParseError(FilterFuncError):
    """A model file could not be parsed."""

    def __init__(self, line: Optional[int], reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")
