"""
Finite universes, subsets as bitmasks and neighbourhood families.

A subset of the universe Q is stored as a plain int whose bit i is set when
element i belongs to the subset. Families of such masks are kept in the
canonical order (cardinality first, then lexicographic on element indices).
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (DuplicateLabel, DuplicateMember, EmptyUniverse, NoAtoms,
                     NotAMember, NotAPartition, OutOfUniverse, TooLarge)

logger = logging.getLogger(__name__)

SubsetMask = int

MAX_ELEMENTS = 64
# 2**20 members is far past anything a pure-Python sweep handles.
MAX_ALGEBRA_ATOMS = 20

EMPTY: SubsetMask = 0


def cardinality(mask: SubsetMask) -> int:
    """Number of elements in the subset."""
    return mask.bit_count()


def is_subset(x: SubsetMask, y: SubsetMask) -> bool:
    """True when x ⊆ y."""
    return x & ~y == 0


def element_indices(mask: SubsetMask) -> Tuple[int, ...]:
    """Sorted element indices of a mask."""
    indices = []
    i = 0
    while mask:
        if mask & 1:
            indices.append(i)
        mask >>= 1
        i += 1
    return tuple(indices)


def canonical_key(mask: SubsetMask) -> Tuple[int, Tuple[int, ...]]:
    """Sort key: cardinality ascending, then lexicographic element indices."""
    return cardinality(mask), element_indices(mask)


@dataclass(frozen=True)
class Universe:
    """An ordered, finite, nonempty set of labelled elements."""
    labels: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {label: i for i, label in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> SubsetMask:
        """The mask of Q itself."""
        return (1 << self.n) - 1

    def index(self, label: str) -> int:
        """Position of a label; KeyError if unknown."""
        return self._index[label]

    def mask(self, labels: Iterable[str]) -> SubsetMask:
        """Build a subset mask from element labels."""
        bits = 0
        for label in labels:
            bits |= 1 << self.index(label)
        return bits

    def labels_of(self, mask: SubsetMask) -> Tuple[str, ...]:
        return tuple(self.labels[i] for i in element_indices(mask))

    def render(self, mask: SubsetMask) -> str:
        """Render a subset as a brace-enclosed label list, e.g. ``{1,2}``."""
        return "{" + ",".join(self.labels_of(mask)) + "}"

    def complement(self, mask: SubsetMask) -> SubsetMask:
        return self.full & ~mask

    def check(self, mask: SubsetMask) -> SubsetMask:
        """Return mask unchanged, or raise if it has bits outside Q."""
        if mask < 0 or mask >> self.n:
            raise OutOfUniverse(
                f"subset mask {mask:#x} has elements outside a universe of {self.n}")
        return mask


def build_universe(labels: Sequence[str]) -> Universe:
    """Create a universe from unique element labels."""
    labels = tuple(str(label) for label in labels)
    if not labels:
        raise EmptyUniverse("a universe needs at least one element")
    if len(labels) > MAX_ELEMENTS:
        raise TooLarge(
            f"universe has {len(labels)} elements; at most {MAX_ELEMENTS} are supported")
    seen = set()
    for label in labels:
        if label in seen:
            raise DuplicateLabel(f"label {label!r} appears more than once")
        seen.add(label)
    return Universe(labels)


def enumerate_subsets(u: Universe, include_empty: bool = False) -> List[SubsetMask]:
    """All subsets of Q in canonical (cardinality, lexicographic) order."""
    subsets: List[SubsetMask] = [EMPTY] if include_empty else []
    for size in range(1, u.n + 1):
        for combo in combinations(range(u.n), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            subsets.append(mask)
    return subsets


def canonical_index(u: Universe, mask: SubsetMask) -> int:
    """Position of mask in enumerate_subsets(u, include_empty=True).

    ∅ is 0 and {first element} is 1, so for nonempty subsets this is the
    1-based index among the nonempty ones.
    """
    u.check(mask)
    size = cardinality(mask)
    index = sum(comb(u.n, j) for j in range(size))
    previous = -1
    for position, element in enumerate(element_indices(mask)):
        remaining = size - position - 1
        for skipped in range(previous + 1, element):
            index += comb(u.n - 1 - skipped, remaining)
        previous = element
    return index


@dataclass(frozen=True)
class NeighbourhoodFamily:
    """An ordered family of subsets of Q, optionally a Boolean algebra.

    ``atoms`` is set only when the members form a Boolean subalgebra of 2^Q.
    """
    universe: Universe
    members: Tuple[SubsetMask, ...]
    atoms: Optional[Tuple[SubsetMask, ...]] = None
    _member_set: FrozenSet[SubsetMask] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))

    @property
    def is_algebra(self) -> bool:
        return self.atoms is not None

    def __contains__(self, mask: object) -> bool:
        return mask in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def require_atoms(self) -> Tuple[SubsetMask, ...]:
        if self.atoms is None:
            raise NoAtoms("the neighbourhood family is not a Boolean algebra")
        return self.atoms

    def noa(self, y: SubsetMask) -> int:
        return noa(self, y)


def _canonical(masks: Iterable[SubsetMask]) -> Tuple[SubsetMask, ...]:
    return tuple(sorted(masks, key=canonical_key))


def build_algebra_from_partition(u: Universe,
                                 partition: Sequence[SubsetMask]) -> NeighbourhoodFamily:
    """Boolean algebra generated by a partition of Q; its atoms are the blocks."""
    covered = 0
    for block in partition:
        u.check(block)
        if block == EMPTY:
            raise NotAPartition("partition contains an empty block")
        if covered & block:
            raise NotAPartition(
                f"block {u.render(block)} overlaps an earlier block")
        covered |= block
    if covered != u.full:
        raise NotAPartition(
            f"blocks leave {u.render(u.full & ~covered)} uncovered")
    if len(partition) > MAX_ALGEBRA_ATOMS:
        raise TooLarge(
            f"{len(partition)} blocks; at most {MAX_ALGEBRA_ATOMS} are supported")

    unions = [EMPTY]
    for block in partition:
        unions += [existing | block for existing in unions]
    atoms = _canonical(partition)
    logger.debug("Built algebra with %d atoms, %d members", len(atoms), len(unions))
    return NeighbourhoodFamily(u, _canonical(unions), atoms)


def _algebra_atoms(u: Universe, members: Tuple[SubsetMask, ...]) -> Optional[Tuple[SubsetMask, ...]]:
    member_set = set(members)
    if EMPTY not in member_set or u.full not in member_set:
        return None
    for x in members:
        if u.complement(x) not in member_set:
            return None
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            if x | y not in member_set:
                return None
    nonempty = [x for x in members if x != EMPTY]
    atoms = [x for x in nonempty
             if not any(y != x and is_subset(y, x) for y in nonempty)]
    return _canonical(atoms)


def validate_family(u: Universe, members: Sequence[SubsetMask]) -> NeighbourhoodFamily:
    """Wrap members as a family; detect whether they form a Boolean algebra."""
    seen = set()
    for mask in members:
        u.check(mask)
        if mask in seen:
            raise DuplicateMember(f"subset {u.render(mask)} appears more than once")
        seen.add(mask)
    ordered = _canonical(members)
    atoms = _algebra_atoms(u, ordered)
    if atoms is None:
        logger.debug("Family of %d members is a general neighbourhood family", len(ordered))
    else:
        logger.debug("Family of %d members is an algebra with %d atoms",
                     len(ordered), len(atoms))
    return NeighbourhoodFamily(u, ordered, atoms)


def noa(f: NeighbourhoodFamily, y: SubsetMask) -> int:
    """Number of atoms of the algebra contained in member y."""
    atoms = f.require_atoms()
    if y not in f:
        raise NotAMember(f"{f.universe.render(y)} is not a member of the family")
    return sum(1 for atom in atoms if is_subset(atom, y))


class EventSelector(Enum):
    """Which events an evaluation or simulation sweeps over."""
    ALL = "all"
    NONEMPTY = "nonempty"
    SINGLETONS = "singletons"
    MEMBERS = "members"


def select_events(f: NeighbourhoodFamily, selector: EventSelector) -> List[SubsetMask]:
    """Events for a selector, in canonical order."""
    u = f.universe
    if selector is EventSelector.ALL:
        return enumerate_subsets(u, include_empty=True)
    if selector is EventSelector.NONEMPTY:
        return enumerate_subsets(u)
    if selector is EventSelector.SINGLETONS:
        return [1 << i for i in range(u.n)]
    return list(f.members)
