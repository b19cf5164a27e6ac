import os
from pathlib import Path

import pytest

from filterfunc.core import (build_algebra_from_partition, build_mass,
                             build_universe, validate_family)

GOLDEN = Path(__file__).resolve().parent / "golden"


def subset(u, *labels):
    return u.mask(str(label) for label in labels)


@pytest.fixture
def fixture_a():
    """Q={1,2,3}; m({1})=0.2, m({2,3})=0.5, m(Q)=0.3 on a general family."""
    u = build_universe(["1", "2", "3"])
    family = validate_family(u, [subset(u, 1), subset(u, 2, 3), u.full])
    return build_mass(family, [(subset(u, 1), 0.2), (subset(u, 2, 3), 0.5), (u.full, 0.3)])


@pytest.fixture
def algebra_b():
    """Q={1,2,3,4} with atoms {1,2}, {3}, {4}."""
    u = build_universe(["1", "2", "3", "4"])
    return build_algebra_from_partition(u, [subset(u, 1, 2), subset(u, 3), subset(u, 4)])


@pytest.fixture
def fixture_c():
    """Q={1,2}, open world: m(∅)=0.1, m({1})=0.1, m({2})=0.2, m(Q)=0.6."""
    u = build_universe(["1", "2"])
    family = validate_family(u, [0, subset(u, 1), subset(u, 2), u.full])
    return build_mass(family, [(0, 0.1), (subset(u, 1), 0.1), (subset(u, 2), 0.2), (u.full, 0.6)])


@pytest.fixture
def golden():
    """Compare text with a committed file under tests/golden/.

    A missing file (or FILTERFUNC_UPDATE_GOLDEN=1) records the text and skips.
    """
    def check(name: str, text: str) -> None:
        path = GOLDEN / name
        if not path.exists() or os.getenv("FILTERFUNC_UPDATE_GOLDEN") == "1":
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
            pytest.skip(f"recorded {path}; commit it and rerun")
        with open(path, encoding="utf-8", newline="") as handle:
            assert text == handle.read()
    return check
