"""
Indicator functions deciding whether a member Y is a neighbourhood of X.

Every indicator is evaluated literally from its definition. The s-variants
compare |X ∩ Y| (or |Y|) against s·|X| with a strict inequality, done in
exact rational arithmetic so that e.g. s = 0.5 and |X| = 2 never misclassify.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidParameter
from .universe import SubsetMask, Universe, cardinality, is_subset


class IndicatorTag(Enum):
    """The indicator families."""
    UPPER = "upper"
    LOWER = "lower"
    NON_EMPTY = "non_empty"
    SUBSET = "subset"
    EQUALITY = "equality"
    UPPER_K = "upper_k"
    LOWER_K = "lower_k"
    UPPER_S = "upper_s"
    LOWER_S = "lower_s"
    # k capped at |X|: singletons keep the plain upper indicator.
    UPPER_K_CAPPED = "upper_k_capped"


_K_TAGS = {IndicatorTag.UPPER_K, IndicatorTag.LOWER_K, IndicatorTag.UPPER_K_CAPPED}
_S_TAGS = {IndicatorTag.UPPER_S, IndicatorTag.LOWER_S}


def as_fraction(s: Union[float, str, Fraction]) -> Fraction:
    """Exact rational for a coverage parameter.

    Floats go through their shortest decimal repr, so 0.1 becomes 1/10.
    """
    if isinstance(s, Fraction):
        return s
    if isinstance(s, float):
        return Fraction(repr(s))
    return Fraction(s)


@dataclass(frozen=True)
class IndicatorKind:
    """An indicator family with its k or s parameter."""
    tag: IndicatorTag
    k: Optional[int] = None
    s: Optional[Fraction] = None

    def __post_init__(self):
        if self.tag in _K_TAGS:
            if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 1:
                raise InvalidParameter(f"{self.tag.value} needs an integer k >= 1, got {self.k!r}")
        elif self.k is not None:
            raise InvalidParameter(f"{self.tag.value} takes no k parameter")
        if self.tag in _S_TAGS:
            if self.s is None:
                raise InvalidParameter(f"{self.tag.value} needs an s parameter")
            s = as_fraction(self.s)
            if not 0 <= s <= 1:
                raise InvalidParameter(f"{self.tag.value} needs s in [0, 1], got {self.s}")
            object.__setattr__(self, "s", s)
        elif self.s is not None:
            raise InvalidParameter(f"{self.tag.value} takes no s parameter")

    @classmethod
    def upper(cls) -> "IndicatorKind":
        return cls(IndicatorTag.UPPER)

    @classmethod
    def lower(cls) -> "IndicatorKind":
        return cls(IndicatorTag.LOWER)

    @classmethod
    def non_empty(cls) -> "IndicatorKind":
        return cls(IndicatorTag.NON_EMPTY)

    @classmethod
    def subset(cls) -> "IndicatorKind":
        return cls(IndicatorTag.SUBSET)

    @classmethod
    def equality(cls) -> "IndicatorKind":
        return cls(IndicatorTag.EQUALITY)

    @classmethod
    def upper_k(cls, k: int) -> "IndicatorKind":
        return cls(IndicatorTag.UPPER_K, k=k)

    @classmethod
    def lower_k(cls, k: int) -> "IndicatorKind":
        return cls(IndicatorTag.LOWER_K, k=k)

    @classmethod
    def upper_k_capped(cls, k: int) -> "IndicatorKind":
        return cls(IndicatorTag.UPPER_K_CAPPED, k=k)

    @classmethod
    def upper_s(cls, s: Union[float, str, Fraction]) -> "IndicatorKind":
        return cls(IndicatorTag.UPPER_S, s=as_fraction(s))

    @classmethod
    def lower_s(cls, s: Union[float, str, Fraction]) -> "IndicatorKind":
        return cls(IndicatorTag.LOWER_S, s=as_fraction(s))

    def validate_for(self, u: Universe) -> None:
        """k may not exceed the universe size."""
        if self.k is not None and self.k > u.n:
            raise InvalidParameter(
                f"{self.tag.value} has k={self.k} but the universe has {u.n} elements")

    def __str__(self) -> str:
        if self.k is not None:
            return f"{self.tag.value}(k={self.k})"
        if self.s is not None:
            return f"{self.tag.value}(s={self.s})"
        return self.tag.value


def _exceeds(count: int, s: Fraction, size: int) -> bool:
    """count > s·size, exactly."""
    return count * s.denominator > s.numerator * size


def eval_indicator(kind: IndicatorKind, x: SubsetMask, y: SubsetMask) -> int:
    """Evaluate the indicator on the pair (x, y); returns 0 or 1."""
    tag = kind.tag
    if tag is IndicatorTag.UPPER:
        hit = x & y != 0
    elif tag is IndicatorTag.LOWER:
        hit = is_subset(y, x)
    elif tag is IndicatorTag.NON_EMPTY:
        hit = y != 0
    elif tag is IndicatorTag.SUBSET:
        hit = is_subset(x, y)
    elif tag is IndicatorTag.EQUALITY:
        hit = x == y
    elif tag is IndicatorTag.UPPER_K:
        hit = cardinality(x & y) >= kind.k
    elif tag is IndicatorTag.LOWER_K:
        hit = is_subset(y, x) and cardinality(y) >= kind.k
    elif tag is IndicatorTag.UPPER_K_CAPPED:
        hit = x != 0 and cardinality(x & y) >= min(kind.k, cardinality(x))
    elif tag is IndicatorTag.UPPER_S:
        hit = x == y or _exceeds(cardinality(x & y), kind.s, cardinality(x))
    elif tag is IndicatorTag.LOWER_S:
        hit = x == y or (
            y != x and is_subset(y, x) and _exceeds(cardinality(y), kind.s, cardinality(x)))
    else:  # pragma: no cover - exhaustive over IndicatorTag
        raise InvalidParameter(f"unknown indicator {tag}")
    return 1 if hit else 0
