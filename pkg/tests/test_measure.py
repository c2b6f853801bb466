import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logminorant import AtomicMassDistribution, DomainError, fit_growth_envelope, mu_rad
from logminorant.measure import order_of_measure, radial_profile

from conftest import random_measure


def brute_mu_rad(atoms, z, t):
    return sum(m for a, m in atoms if abs(a - z) <= t)


def test_construction_merges_equal_centers():
    mu = AtomicMassDistribution.from_atoms([(1, 0, 1.0), (0, 0, 2.0), (1, 0, 0.5)])
    assert len(mu) == 2
    assert mu.atoms() == [(0j, 2.0), (1 + 0j, 1.5)]


def test_construction_is_order_insensitive():
    a = AtomicMassDistribution.from_atoms([(1, 2, 1.0), (0, 1, 2.0)])
    b = AtomicMassDistribution.from_atoms([(0, 1, 2.0), (1, 2, 1.0)])
    assert a == b


@pytest.mark.parametrize("mass", [0.0, -1.0, float("nan"), float("inf")])
def test_construction_rejects_bad_masses(mass):
    with pytest.raises(DomainError):
        AtomicMassDistribution.from_atoms([(0, 0, mass)])


def test_arrays_are_read_only():
    mu = AtomicMassDistribution.from_atoms([(0, 0, 1.0)])
    with pytest.raises(ValueError):
        mu.masses[0] = 3.0


class TestMuRad:
    def test_atom_at_center_closed_disk(self):
        assert mu_rad(AtomicMassDistribution.from_atoms([(0, 0, 1)]), 0, 0) == 1

    def test_atom_outside(self):
        assert mu_rad(AtomicMassDistribution.from_atoms([(0, 0, 1)]), 0.5, 0.25) == 0

    def test_two_atoms_summation_oracle(self):
        atoms = [(0j, 1.0), (1 + 0j, 2.0)]
        mu = AtomicMassDistribution.from_atoms(atoms)
        assert mu_rad(mu, 0, 1) == brute_mu_rad(atoms, 0, 1) == 3

    def test_negative_radius(self):
        with pytest.raises(DomainError):
            mu_rad(AtomicMassDistribution.empty(), 0, -1e-9)

    def test_vectorized_matches_brute_force(self, rng):
        mu = random_measure(rng, n_max=30)
        z = complex(*rng.normal(size=2))
        t = rng.uniform(0, 3, 200)
        expected = [brute_mu_rad(mu.atoms(), z, ti) for ti in t]
        np.testing.assert_allclose(mu_rad(mu, z, t), expected, rtol=1e-14)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(0.01, 10)), max_size=15),
           st.floats(0, 10), st.floats(0, 10))
    def test_monotone(self, atoms, t1, t2):
        mu = AtomicMassDistribution.from_atoms(atoms)
        lo, hi = sorted((t1, t2))
        assert mu_rad(mu, 0.3 + 0.1j, lo) <= mu_rad(mu, 0.3 + 0.1j, hi)

    def test_right_continuous_at_jump(self):
        mu = AtomicMassDistribution.from_atoms([(3, 4, 2.0)])
        assert mu_rad(mu, 0, 5.0) == 2.0
        assert mu_rad(mu, 0, np.nextafter(5.0, 0)) == 0.0


def _regression_oracle(t, counts):
    slope, _ = np.polyfit(np.log(t), np.log1p(counts), 1)
    return slope


class TestOrderOfMeasure:
    def test_constant_profile_is_zero(self):
        t = np.geomspace(10, 1e4, 100)
        assert abs(order_of_measure(t, np.full(t.shape, 5.0))) <= 1e-12

    def test_linear_counting(self):
        mu = AtomicMassDistribution(np.arange(1, 10_001, dtype=float), np.ones(10_000))
        t, vals = radial_profile(mu, 10, 1e4)
        np.testing.assert_array_equal(vals, np.floor(t))
        est = order_of_measure(t, vals)
        assert est == pytest.approx(_regression_oracle(t, np.floor(t)), abs=1e-12)
        assert est == pytest.approx(1.0, abs=0.05)

    def test_square_root_counting(self):
        k = np.arange(1, 1001, dtype=float)
        mu = AtomicMassDistribution(k**2, np.ones(k.size))
        t, vals = radial_profile(mu, 1e2, 1e6)
        np.testing.assert_array_equal(vals, np.floor(np.sqrt(t) + 1e-9))
        assert order_of_measure(t, vals) == pytest.approx(0.5, abs=0.05)

    def test_empty_window(self):
        with pytest.raises(DomainError):
            order_of_measure([], [])

    def test_bad_window(self):
        with pytest.raises(DomainError):
            radial_profile(AtomicMassDistribution.empty(), 5, 5)


def _dyadic_measure(rng, n):
    # radii on a 1/64 lattice placed on the axes so |a| is exact
    radii = rng.integers(0, 64 * 4, n) / 64.0
    units = np.array([1, -1, 1j, -1j])[rng.integers(0, 4, n)]
    return AtomicMassDistribution(radii * units, 3.0 * (1.0 - rng.random(n)))


def dense_envelope_oracle(mu, l, step=1 / 1024, t_max=5.0):
    t = np.arange(0, t_max + step, step)
    counts = np.array([sum(m for a, m in mu.atoms() if abs(a) <= ti) for ti in t])
    return max(1.0, float(np.max(counts / (1 + t) ** l)))


class TestGrowthEnvelope:
    def test_three_atoms(self):
        mu = AtomicMassDistribution.from_atoms([(0, 0, 1), (1, 0, 1), (2, 0, 1)])
        assert fit_growth_envelope(mu, 1).C == 1.0
        assert dense_envelope_oracle(mu, 1) == 1.0

    def test_single_jump(self):
        assert fit_growth_envelope(AtomicMassDistribution.from_atoms([(0, 0, 5)]), 0).C == 5

    def test_empty(self):
        assert fit_growth_envelope(AtomicMassDistribution.empty(), 2.5).C == 1

    def test_matches_dense_scan(self, rng):
        for _ in range(5):
            mu = _dyadic_measure(rng, int(rng.integers(1, 30)))
            l = float(rng.uniform(0, 2))
            C = fit_growth_envelope(mu, l).C
            assert C == pytest.approx(dense_envelope_oracle(mu, l), rel=1e-12)

    def test_envelope_dominates(self, rng):
        mu = random_measure(rng, n_max=40, spread=5)
        env = fit_growth_envelope(mu, 0.7)
        t = rng.uniform(0, 20, 10_000)
        assert np.all(mu_rad(mu, 0, t) <= env(t) * (1 + 1e-12))
