"""
Line-oriented model files describing a weighted knowledge structure.

    # Fixture A
    universe: 1 2 3
    state: 1 : 0.2
    state: 2 3 : 0.5
    state: 1 2 3 : 0.3

Directives:
- ``universe: <labels>`` must come first.
- ``partition: <block> | <block> | ...`` makes the family the Boolean
  algebra generated by the blocks; states must then be members of it.
- ``member: <labels>`` adds a zero-mass member to a general family.
- ``state: <labels> : <mass>`` assigns mass to a pattern; ``{}`` is ∅.

Labels are separated by whitespace or commas, optional braces are ignored.
'#' starts a comment; blank lines are skipped.
"""

import logging
import math
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Tuple

from filterfunc.core.errors import FilterFuncError, ParseError
from filterfunc.core.mass import MassFunction, build_mass, empty_mass
from filterfunc.core.universe import (EMPTY, NeighbourhoodFamily, SubsetMask,
                                      Universe, build_algebra_from_partition,
                                      build_universe, validate_family)

logger = logging.getLogger(__name__)

EMPTY_TOKENS = {"{}", "∅", "-"}


class Model(NamedTuple):
    """A parsed model: universe, neighbourhood family and mass function."""
    universe: Universe
    family: NeighbourhoodFamily
    mass: MassFunction


def _tokens(text: str) -> List[str]:
    text = text.strip()
    if text in EMPTY_TOKENS:
        return []
    return [t for t in text.replace("{", " ").replace("}", " ").replace(",", " ").split() if t]


def _subset(u: Universe, text: str, line: int) -> SubsetMask:
    mask = EMPTY
    for label in _tokens(text):
        try:
            bit = 1 << u.index(label)
        except KeyError:
            raise ParseError(line, f"unknown label {label!r}") from None
        if mask & bit:
            raise ParseError(line, f"label {label!r} repeated in one set")
        mask |= bit
    return mask


def parse_model_file(text: str) -> Model:
    """Parse and validate model-file text."""
    universe: Optional[Universe] = None
    partition: Optional[List[SubsetMask]] = None
    partition_line = 0
    members: Dict[SubsetMask, int] = {}
    states: List[Tuple[SubsetMask, float, int]] = []
    state_lines: Dict[SubsetMask, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        directive, sep, rest = content.partition(":")
        directive = directive.strip().lower()
        if not sep:
            raise ParseError(number, f"expected '<directive>: ...', got {content!r}")
        if directive == "universe":
            if universe is not None:
                raise ParseError(number, "universe declared twice")
            labels = _tokens(rest)
            reserved = [label for label in labels if label in EMPTY_TOKENS]
            if reserved:
                raise ParseError(number, f"{reserved[0]!r} denotes the empty set, not a label")
            try:
                universe = build_universe(labels)
            except FilterFuncError as e:
                raise ParseError(number, str(e)) from e
            continue
        if universe is None:
            raise ParseError(number, "the universe must be declared first")
        if directive == "partition":
            if partition is not None:
                raise ParseError(number, "partition declared twice")
            partition = [_subset(universe, block, number) for block in rest.split("|")]
            partition_line = number
        elif directive == "member":
            mask = _subset(universe, rest, number)
            if mask in members:
                raise ParseError(number, f"member {universe.render(mask)} listed twice")
            members[mask] = number
        elif directive == "state":
            pattern, sep, value = rest.rpartition(":")
            if not sep:
                raise ParseError(number, "expected 'state: <labels> : <mass>'")
            mask = _subset(universe, pattern, number)
            if mask in state_lines:
                raise ParseError(
                    number, f"state {universe.render(mask)} already given on line {state_lines[mask]}")
            try:
                mass = float(value)
            except ValueError:
                raise ParseError(number, f"mass {value.strip()!r} is not a number") from None
            if not math.isfinite(mass):
                raise ParseError(number, f"mass {value.strip()!r} is not a finite number")
            state_lines[mask] = number
            states.append((mask, mass, number))
        else:
            raise ParseError(number, f"unknown directive {directive!r}")

    if universe is None:
        raise ParseError(None, "no universe declared")
    if not states:
        raise ParseError(None, "no states declared")

    try:
        if partition is not None:
            family = build_algebra_from_partition(universe, partition)
        else:
            candidates = list(members)
            candidates += [mask for mask, _, _ in states if mask not in members]
            family = validate_family(universe, candidates)
    except FilterFuncError as e:
        raise ParseError(partition_line or None, str(e)) from e

    for mask, mass, number in states:
        if mask not in family:
            raise ParseError(number, f"{universe.render(mask)} is not a member of the algebra")
        if mass < 0.0:
            raise ParseError(number, f"mass {mass} on {universe.render(mask)} is negative")
    for mask, number in members.items():
        if mask not in family:
            raise ParseError(number, f"{universe.render(mask)} is not a member of the algebra")
    try:
        mass = build_mass(family, [(mask, value) for mask, value, _ in states])
    except FilterFuncError as e:
        raise ParseError(states[-1][2], str(e)) from e

    logger.info("Parsed model: %d elements, %d members (%s), %d focal elements",
                universe.n, len(family), "algebra" if family.is_algebra else "general",
                len(mass.focal_elements))
    if empty_mass(mass) > 0.0:
        logger.info("Open-world model: m(∅) = %.6g", empty_mass(mass))
    return Model(universe, family, mass)


def load_model(path) -> Model:
    """Read and parse a model file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(None, f"cannot read {path}: {e}") from e
    logger.debug("Loading model from %s", path)
    return parse_model_file(text)


def _labels(u: Universe, mask: SubsetMask) -> str:
    return " ".join(u.labels_of(mask)) if mask else "{}"


def render_model(model: Model) -> str:
    """Render a model back to the file format; parse(render(m)) == m."""
    u, family, mass = model
    lines = [f"universe: {' '.join(u.labels)}"]
    if family.is_algebra:
        lines.append("partition: " + " | ".join(_labels(u, a) for a in family.atoms))
        entries = [y for y in family.members if mass(y) > 0.0]
    else:
        entries = list(family.members)
    for y in entries:
        lines.append(f"state: {_labels(u, y)} : {mass(y)!r}")
    return "\n".join(lines) + "\n"
