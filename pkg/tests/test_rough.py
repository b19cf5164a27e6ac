import numpy as np
import pytest

from filterfunc.core.errors import NoAtoms, NotAMember
from filterfunc.core.filters import belief, plausibility
from filterfunc.core.mass import bayesian_mass, sampling_probability
from filterfunc.core.rough import (accuracy, approximate, gamma,
                                   is_definable, rough_membership)
from filterfunc.core.universe import (EMPTY, build_algebra_from_partition,
                                      build_universe, enumerate_subsets)


def test_approximate_example(algebra_b):
    u = algebra_b.universe
    result = approximate(algebra_b, u.mask(["1", "3"]))
    assert result.lower == u.mask(["3"])
    assert result.upper == u.mask(["1", "2", "3"])
    assert result.mu_lower == 0.25
    assert result.mu_upper == 0.75


def test_approximate_extremes(algebra_b):
    u = algebra_b.universe
    full = approximate(algebra_b, u.full)
    assert full.lower == full.upper == u.full
    assert full.mu_lower == full.mu_upper == 1.0
    empty = approximate(algebra_b, EMPTY)
    assert empty.lower == empty.upper == EMPTY
    assert empty.mu_lower == empty.mu_upper == 0.0


def test_gamma_example(algebra_b):
    u = algebra_b.universe
    assert gamma(algebra_b, u.mask(["1", "3"])) == 0.5
    assert gamma(algebra_b, u.mask(["1", "2", "4"])) == 1.0


def test_gamma_total_boundary():
    u = build_universe(["1", "2", "3", "4"])
    algebra = build_algebra_from_partition(u, [u.mask(["1", "2"]), u.mask(["3", "4"])])
    assert gamma(algebra, u.mask(["1", "3"])) == 0.0


def test_needs_algebra(fixture_a):
    with pytest.raises(NoAtoms):
        approximate(fixture_a.family, fixture_a.universe.full)
    with pytest.raises(NoAtoms):
        gamma(fixture_a.family, fixture_a.universe.full)


def test_accuracy(algebra_b):
    u = algebra_b.universe
    assert accuracy(algebra_b, u.mask(["1", "3"])) == pytest.approx(1 / 3)
    assert accuracy(algebra_b, u.mask(["3", "4"])) == 1.0
    assert accuracy(algebra_b, EMPTY) == 1.0


def test_rough_membership(algebra_b):
    u = algebra_b.universe
    e = u.mask(["1", "3"])
    assert rough_membership(algebra_b, e, u.index("2")) == 0.5
    assert rough_membership(algebra_b, e, u.index("3")) == 1.0
    assert rough_membership(algebra_b, e, u.index("4")) == 0.0
    with pytest.raises(NotAMember):
        rough_membership(algebra_b, e, 7)


def _random_partition(n, rng):
    labels = rng.integers(0, n, size=n)
    blocks = {}
    for element, label in enumerate(labels):
        blocks[int(label)] = blocks.get(int(label), 0) | (1 << element)
    return list(blocks.values())


def test_filter_bridge_on_random_partitions():
    u = build_universe(["1", "2", "3", "4", "5"])
    rng = np.random.default_rng(5)
    for _ in range(50):
        algebra = build_algebra_from_partition(u, _random_partition(u.n, rng))
        m = bayesian_mass(sampling_probability(algebra))
        for e in enumerate_subsets(u, include_empty=True):
            result = approximate(algebra, e)
            assert result.mu_upper == pytest.approx(plausibility(m, e), abs=1e-12)
            assert result.mu_lower == pytest.approx(belief(m, e), abs=1e-12)
            complement = u.complement(e)
            assert gamma(algebra, e) == pytest.approx(
                belief(m, e) + belief(m, complement), abs=1e-12)
            assert gamma(algebra, e) == gamma(algebra, complement)
            assert result.lower & ~e == 0 and e & ~result.upper == 0
            assert result.mu_lower <= result.mu_upper


def test_definable_sets(algebra_b):
    for y in algebra_b.members:
        result = approximate(algebra_b, y)
        assert result.lower == result.upper == y
        assert is_definable(algebra_b, y)
    assert not is_definable(algebra_b, algebra_b.universe.mask(["1"]))
