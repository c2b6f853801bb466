import math

import numpy as np
import pytest

from logminorant import (
    AtomicMassDistribution,
    DomainError,
    LogPotentialFunction,
    PolynomialMinorant,
    atomize_measure,
    build_p,
    constant_radius,
    construct_minorant,
    evaluate,
    mu_rad,
    verify_means,
    verify_pointwise,
    verify_radial_growth,
)
from logminorant.means import disk_log_kernel

from conftest import random_measure, random_potential


def grid(n=100, half=2.0, shift=0.0123):
    x = np.linspace(-half, half, n) + shift
    X, Y = np.meshgrid(x, x + 0.0071)
    return (X + 1j * Y).ravel()


class TestConstruct:
    def test_difference_of_squares(self):
        u = LogPotentialFunction.from_atoms([(1, 0, 1), (-1, 0, 1)])
        f = construct_minorant(u, 2)
        np.testing.assert_allclose(f.coefficients(), math.exp(-0.5) * np.array([1, 0, -1]), atol=1e-15)
        assert f.log_abs(0) == pytest.approx(-0.5) and evaluate(u, 0) == 0

    def test_amplitude_and_multiplicity(self):
        f = construct_minorant(LogPotentialFunction.from_atoms([(0, 0, 2)], c0=3.0), 1)
        assert f.log_amplitude == 2 and f.zeros.atoms() == [(0j, 2.0)]

    def test_fractional_rejected(self):
        with pytest.raises(DomainError, match="atomize_measure"):
            construct_minorant(LogPotentialFunction.from_atoms([(0, 0, 1.5)]), 1)

    def test_polynomial_matches_log_form(self, rng):
        u = random_potential(rng, n_max=6, integer=True)
        f = construct_minorant(u, 1.3)
        z = rng.normal(size=50) + 1j * rng.normal(size=50)
        np.testing.assert_allclose(np.log(np.abs(np.polyval(f.coefficients(), z))), f.log_abs(z),
                                   rtol=1e-8, atol=1e-8)
        np.testing.assert_allclose(f.log_abs(z), evaluate(u, z) - 1 / 1.3, rtol=1e-13, atol=1e-13)


class TestAtomize:
    def test_hand_run(self):
        mu = AtomicMassDistribution.from_atoms([(1, 0, 0.5), (2, 0, 0.7), (3, 0, 0.8)])
        out = atomize_measure(mu)
        assert out.atoms() == [(2 + 0j, 1.0), (3 + 0j, 1.0)]

    def test_integer_fixed_point(self):
        mu = AtomicMassDistribution.from_atoms([(1, 0, 2.0), (0, 1, 3.0)])
        assert atomize_measure(mu) == mu

    def test_small_single(self):
        assert len(atomize_measure(AtomicMassDistribution.from_atoms([(0, 0, 0.3)]))) == 0

    def test_total_and_discrepancy(self, rng):
        for _ in range(100):
            mu = random_measure(rng, n_max=30, spread=3)
            nu = atomize_measure(mu)
            assert nu.total_mass == math.floor(math.fsum(mu.masses) + 1e-9)
            assert all(float(m).is_integer() for m in nu.masses)
            t = rng.uniform(0, 5, 1000)
            assert np.all(np.abs(mu_rad(nu, 0, t) - mu_rad(mu, 0, t)) <= 1 + 1e-12)


class TestVerify:
    def test_pointwise_integer(self, rng):
        u = random_potential(rng, integer=True)
        assert verify_pointwise(u, construct_minorant(u, 1), grid()).size == 0

    def test_pointwise_all_violated(self, rng):
        u = random_potential(rng, integer=True)
        f = PolynomialMinorant(u.c0 + 1, u.measure)
        g = grid(30)
        assert verify_pointwise(u, f, g).size == g.size

    def test_fractional_violations_localize(self, rng):
        mu = random_measure(rng, n_max=15)
        u = LogPotentialFunction(0.0, mu)
        f = construct_minorant(LogPotentialFunction(0.0, atomize_measure(mu)), 1)
        bad = verify_pointwise(u, f, grid(80))
        assert np.all(f.log_abs(bad) > evaluate(u, bad))
        # localization is reported rather than asserted
        p = build_p(constant_radius(1.0), mu, 1, 1, order=0.0)
        if bad.size:
            near = np.min(np.abs(bad[:, None] - mu.centers[None, :]), axis=1) <= p.sup
            print(f"violations {bad.size}, within sup p of an atom: {near.mean():.3f}")

    def test_means_integer(self, rng):
        u = random_potential(rng, integer=True)
        v = verify_means(u, construct_minorant(u, 1), constant_radius(0.5), grid(50))
        assert v.passed and v.minorant_violations == 0 and v.chain_violations == 0

    def test_means_closed_form(self):
        u = LogPotentialFunction.from_atoms([(0, 0, 1)])
        f = PolynomialMinorant(0.0, u.measure)
        assert disk_log_kernel(0.5, 1.0) == pytest.approx(-0.375)
        v = verify_means(u, f, constant_radius(1.0), [0.5])
        assert v.passed and v.worst_margin == pytest.approx(math.log(0.5) + 0.375, abs=1e-15)

    def test_chain_any_function(self, rng):
        u = random_potential(rng)
        f = PolynomialMinorant(u.c0 + 10, AtomicMassDistribution.empty())
        v = verify_means(u, f, constant_radius(0.8), grid(40))
        assert v.chain_violations == 0 and v.minorant_violations > 0 and not v.passed

    def test_radial_growth_integer(self, rng):
        u = random_potential(rng, integer=True)
        v = verify_radial_growth(u, construct_minorant(u, 1), constant_radius(1.0), [1, 2, 5, 10])
        assert v.passed

    def test_radial_growth_single_atom(self):
        u = LogPotentialFunction.from_atoms([(0, 0, 1)])
        f = PolynomialMinorant(0.0, u.measure)
        v = verify_radial_growth(u, f, constant_radius(1.0), [10])
        assert v.lhs[0] == pytest.approx(math.log(10)) and v.rhs[0] == pytest.approx(math.log(11))
        assert v.passed

    def test_radial_growth_origin(self):
        u = LogPotentialFunction.from_atoms([(0, 0, 1)])
        v = verify_radial_growth(u, construct_minorant(u, 1), constant_radius(1.0), [0.0])
        assert v.lhs[0] == -np.inf and v.passed
