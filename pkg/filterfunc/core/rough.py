"""
Rough-set approximations over the atoms of a Boolean algebra.

All measures divide by the universe size n, not the family size.
"""

from dataclasses import dataclass

from .errors import NotAMember
from .universe import (EMPTY, NeighbourhoodFamily, SubsetMask, cardinality,
                       is_subset)


@dataclass(frozen=True)
class ApproximationResult:
    """Lower and upper approximation of an event with their measures."""
    lower: SubsetMask
    upper: SubsetMask
    mu_lower: float
    mu_upper: float


def lower_approximation(algebra: NeighbourhoodFamily, e: SubsetMask) -> SubsetMask:
    """Union of the atoms contained in e."""
    lower = EMPTY
    for atom in algebra.require_atoms():
        if is_subset(atom, e):
            lower |= atom
    return lower


def upper_approximation(algebra: NeighbourhoodFamily, e: SubsetMask) -> SubsetMask:
    """Union of the atoms meeting e."""
    upper = EMPTY
    for atom in algebra.require_atoms():
        if atom & e:
            upper |= atom
    return upper


def approximate(algebra: NeighbourhoodFamily, e: SubsetMask) -> ApproximationResult:
    u = algebra.universe
    u.check(e)
    lower = lower_approximation(algebra, e)
    upper = upper_approximation(algebra, e)
    return ApproximationResult(lower, upper, cardinality(lower) / u.n, cardinality(upper) / u.n)


def gamma(algebra: NeighbourhoodFamily, e: SubsetMask) -> float:
    """Approximation quality: share of Q classified correctly into e or Q∖e."""
    u = algebra.universe
    u.check(e)
    inside = lower_approximation(algebra, e)
    outside = lower_approximation(algebra, u.complement(e))
    return (cardinality(inside) + cardinality(outside)) / u.n


def accuracy(algebra: NeighbourhoodFamily, e: SubsetMask) -> float:
    """|low(e)| / |upp(e)|; 1 for the empty event, which is exactly definable."""
    result = approximate(algebra, e)
    if result.upper == EMPTY:
        return 1.0
    return cardinality(result.lower) / cardinality(result.upper)


def rough_membership(algebra: NeighbourhoodFamily, e: SubsetMask, element: int) -> float:
    """|[x] ∩ e| / |[x]| where [x] is the atom holding element index x."""
    u = algebra.universe
    u.check(e)
    if not 0 <= element < u.n:
        raise NotAMember(f"element index {element} is outside a universe of {u.n}")
    bit = 1 << element
    for atom in algebra.require_atoms():
        if atom & bit:
            return cardinality(atom & e) / cardinality(atom)
    raise NotAMember(f"element {u.labels[element]} lies in no atom")  # pragma: no cover


def is_definable(algebra: NeighbourhoodFamily, e: SubsetMask) -> bool:
    """True when e is a union of atoms."""
    return lower_approximation(algebra, e) == e
