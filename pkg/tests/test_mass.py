import logging
from itertools import product

import pytest

from filterfunc.core.errors import (NegativeMass, NoAtoms, NonFiniteMass,
                                    NotInFamily, SumNotOne, ZeroObservations)
from filterfunc.core.mass import (EstimationMethod, ObservationCounts,
                                  bayesian_mass, build_mass,
                                  build_probability, empty_mass,
                                  estimate_mass, measure_from_mass,
                                  sampling_probability)
from filterfunc.core.universe import (build_algebra_from_partition,
                                      build_universe, enumerate_subsets,
                                      validate_family)


def _fixture_a_family():
    u = build_universe(["1", "2", "3"])
    return validate_family(u, [u.mask(["1"]), u.mask(["2", "3"]), u.full])


def test_build_mass_fixture_a(fixture_a):
    u = fixture_a.universe
    assert fixture_a(u.mask(["2", "3"])) == 0.5
    assert fixture_a(u.mask(["1", "2"])) == 0.0
    assert fixture_a.focal_elements == (u.mask(["1"]), u.mask(["2", "3"]), u.full)


def test_build_mass_sum_not_one():
    family = _fixture_a_family()
    u = family.universe
    with pytest.raises(SumNotOne) as excinfo:
        build_mass(family, [(u.mask(["1"]), 0.2), (u.mask(["2", "3"]), 0.5), (u.full, 0.4)])
    assert excinfo.value.deviation == pytest.approx(0.1)


def test_build_mass_rejects_foreign_and_negative():
    family = _fixture_a_family()
    u = family.universe
    with pytest.raises(NotInFamily):
        build_mass(family, [(u.mask(["1", "2"]), 1.0)])
    with pytest.raises(NegativeMass):
        build_mass(family, [(u.mask(["1"]), -0.5), (u.full, 1.5)])


def test_build_mass_tolerates_rounding():
    family = _fixture_a_family()
    u = family.universe
    mass = build_mass(family, [(u.mask(["1"]), 0.1 + 0.2), (u.mask(["2", "3"]), 0.4),
                               (u.full, 0.3)])
    assert mass.total() == pytest.approx(1.0)


@pytest.mark.parametrize("bad", [float("nan"), float("inf")])
def test_build_mass_rejects_non_finite(bad):
    family = _fixture_a_family()
    u = family.universe
    with pytest.raises(NonFiniteMass):
        build_mass(family, [(u.mask(["1"]), bad), (u.full, 1.0)])


def test_build_probability_rejects_nan(algebra_b):
    u = algebra_b.universe
    with pytest.raises(NonFiniteMass):
        build_probability(algebra_b, {u.mask(["1", "2"]): float("nan"),
                                      u.mask(["3"]): 0.5, u.mask(["4"]): 0.5})


def test_in_tolerance_deviation_is_a_warning(caplog):
    family = _fixture_a_family()
    u = family.universe
    with caplog.at_level(logging.WARNING, logger="filterfunc.core.mass"):
        build_mass(family, [(u.mask(["1"]), 0.2), (u.mask(["2", "3"]), 0.5),
                            (u.full, 0.3 + 5e-10)])
    assert "within tolerance" in caplog.text


def test_sampling_probability(algebra_b):
    u = algebra_b.universe
    p = sampling_probability(algebra_b)
    assert p(u.mask(["1", "2"])) == 0.5
    assert p(u.mask(["3"])) == 0.25
    assert p(u.mask(["4"])) == 0.25
    assert p(u.full) == 1.0


def test_sampling_probability_uniform():
    u = build_universe(["1", "2"])
    algebra = validate_family(u, enumerate_subsets(u, include_empty=True))
    p = sampling_probability(algebra)
    assert [p(a) for a in algebra.atoms] == [0.5, 0.5]


def test_sampling_probability_needs_atoms():
    with pytest.raises(NoAtoms):
        sampling_probability(_fixture_a_family())


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_sampling_probability_is_additive(n):
    u = build_universe([str(i + 1) for i in range(n)])
    seen = set()
    for labels in product(range(n), repeat=n):
        blocks = {}
        for element, label in enumerate(labels):
            blocks[label] = blocks.get(label, 0) | (1 << element)
        partition = frozenset(blocks.values())
        if partition in seen:
            continue
        seen.add(partition)
        algebra = build_algebra_from_partition(u, sorted(partition))
        p = sampling_probability(algebra)
        assert p(u.full) == pytest.approx(1.0, abs=1e-12)
        for y1 in algebra.members:
            for y2 in algebra.members:
                if y1 & y2 == 0:
                    assert p(y1 | y2) == pytest.approx(p(y1) + p(y2), abs=1e-12)


def test_bayesian_mass(algebra_b):
    u = algebra_b.universe
    m = bayesian_mass(sampling_probability(algebra_b))
    assert m(u.mask(["1", "2"])) == 0.5
    assert m(u.mask(["3"])) == 0.25
    assert m(u.mask(["4"])) == 0.25
    assert m(u.mask(["3", "4"])) == 0.0
    assert m(u.full) == 0.0


def test_measure_from_mass_inverts_bayesian_mass(algebra_b):
    u = algebra_b.universe
    p = build_probability(algebra_b, {u.mask(["1", "2"]): 0.6, u.mask(["3"]): 0.3,
                                      u.mask(["4"]): 0.1})
    recovered = measure_from_mass(bayesian_mass(p))
    for y in algebra_b.members:
        assert recovered(y) == pytest.approx(p(y), abs=1e-15)


def test_measure_from_mass_rejects_non_bayesian(algebra_b):
    m = build_mass(algebra_b, [(algebra_b.universe.full, 1.0)])
    with pytest.raises(NotInFamily):
        measure_from_mass(m)


def test_build_probability_rejects_non_atoms(algebra_b):
    u = algebra_b.universe
    with pytest.raises(NotInFamily):
        build_probability(algebra_b, {u.mask(["3", "4"]): 1.0})


def test_estimate_mass_relative_frequency():
    family = _fixture_a_family()
    u = family.universe
    obs = ObservationCounts(family, {u.mask(["1"]): 10, u.mask(["2", "3"]): 25, u.full: 15})
    assert obs.total == 50
    m = estimate_mass(obs)
    assert (m(u.mask(["1"])), m(u.mask(["2", "3"])), m(u.full)) == (0.2, 0.5, 0.3)
    assert m.normalized


def test_estimate_mass_single_pattern():
    family = _fixture_a_family()
    u = family.universe
    m = estimate_mass(ObservationCounts(family, {u.full: 40}))
    assert m(u.full) == 1.0
    assert m.focal_elements == (u.full,)


def test_estimate_mass_zero_observations():
    with pytest.raises(ZeroObservations):
        estimate_mass(ObservationCounts(_fixture_a_family(), {}))


def test_observation_counts_validation():
    family = _fixture_a_family()
    u = family.universe
    with pytest.raises(NotInFamily):
        ObservationCounts(family, {u.mask(["1", "2"]): 3})
    with pytest.raises(NegativeMass):
        ObservationCounts(family, {u.full: -1})


def test_item_weighted_estimate_is_not_normalized(caplog):
    family = _fixture_a_family()
    u = family.universe
    obs = ObservationCounts(family, {u.mask(["1"]): 10, u.mask(["2", "3"]): 25, u.full: 15})
    with caplog.at_level(logging.WARNING):
        m = estimate_mass(obs, EstimationMethod.ITEM_WEIGHTED)
    assert not m.normalized
    assert m(u.full) == 15.0
    assert m(u.mask(["2", "3"])) == 25 * 2 / 3
    assert "does not produce a normalized mass" in caplog.text


def test_empty_mass(fixture_a, fixture_c):
    assert empty_mass(fixture_a) == 0.0
    assert empty_mass(fixture_c) == 0.1


def test_algebra_mass_on_non_member():
    u = build_universe(["1", "2", "3"])
    algebra = build_algebra_from_partition(u, [u.mask(["1", "2"]), u.mask(["3"])])
    with pytest.raises(NotInFamily):
        build_mass(algebra, [(u.mask(["1"]), 1.0)])
