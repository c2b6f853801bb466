import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from logminorant import (
    AtomicMassDistribution,
    LogPotentialFunction,
    MeanKind,
    circle_mean_exact,
    disk_mean_exact,
    evaluate,
    jensen_defect,
    mean_quadrature,
)
from logminorant.means import disk_log_kernel

from conftest import random_potential

LN_Z = LogPotentialFunction.from_atoms([(0, 0, 1)])
PAIR = LogPotentialFunction.from_atoms([(1, 0, 1), (-1, 0, 1)])


def quad_circle(u, z, rho):
    """Adaptive quadrature of the circle mean, split at atom angles."""
    f = lambda th: float(evaluate(u, z + rho * np.exp(1j * th)))
    pts = [float(np.mod(np.angle(a - z), 2 * np.pi)) for a in u.measure.centers
           if abs(abs(a - z) - rho) < 1e-9]
    val, _ = integrate.quad(f, 0, 2 * np.pi, points=pts or None, limit=400, epsabs=1e-12)
    return val / (2 * np.pi)


def quad_disk(u, z, rho):
    inner = lambda t: t * quad_circle(u, z, t)
    val, _ = integrate.quad(inner, 0, rho, limit=200, epsabs=1e-11,
                            points=sorted({abs(a - z) for a in u.measure.centers if abs(a - z) < rho}) or None)
    return 2 * val / rho**2


class TestCircleMean:
    def test_unit_circle_about_atom(self):
        assert circle_mean_exact(LN_Z, 0, 1) == 0

    def test_harmonic_center(self):
        assert circle_mean_exact(LN_Z, 2, 1) == pytest.approx(math.log(2), abs=1e-15)
        assert quad_circle(LN_Z, 2, 1) == pytest.approx(math.log(2), abs=1e-10)

    def test_atom_inside(self):
        assert circle_mean_exact(LN_Z, 0.5, 1) == 0
        assert quad_circle(LN_Z, 0.5, 1) == pytest.approx(0, abs=1e-10)

    def test_random_against_adaptive_quadrature(self, rng):
        for _ in range(5):
            u = random_potential(rng, n_max=5)
            z, rho = complex(*rng.normal(scale=0.5, size=2)), float(rng.uniform(0.2, 1))
            assert circle_mean_exact(u, z, rho) == pytest.approx(quad_circle(u, z, rho), abs=1e-8)

    def test_finite_at_atom(self):
        assert np.isfinite(circle_mean_exact(LN_Z, 0, 0.3))


class TestDiskMean:
    def test_about_atom(self):
        assert disk_mean_exact(LN_Z, 0, 1) == pytest.approx(-0.5, abs=1e-15)
        # (2/rho^2) int_0^rho t ln t dt
        val, _ = integrate.quad(lambda t: 2 * t * math.log(t), 0, 1)
        assert val == pytest.approx(-0.5, abs=1e-12)

    def test_harmonic(self):
        assert disk_mean_exact(LN_Z, 3, 1) == pytest.approx(math.log(3), abs=1e-15)

    def test_radius_e(self):
        assert disk_mean_exact(LN_Z, 0, math.e) == pytest.approx(0.5, abs=1e-15)

    def test_random_against_adaptive_quadrature(self, rng):
        for _ in range(3):
            u = random_potential(rng, n_max=3)
            z, rho = complex(*rng.normal(scale=0.5, size=2)), float(rng.uniform(0.2, 1))
            assert disk_mean_exact(u, z, rho) == pytest.approx(quad_disk(u, z, rho), abs=1e-7)

    def test_kernel_continuous_at_rho(self):
        rho = 0.7
        assert disk_log_kernel(np.nextafter(rho, 0), rho) == pytest.approx(math.log(rho), abs=1e-14)
        assert disk_log_kernel(rho, rho) == math.log(rho)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1e-6, 10), st.floats(1e-3, 5))
    def test_kernel_sandwich(self, s, rho):
        k = disk_log_kernel(s, rho)
        assert math.log(s) <= k <= math.log(max(s, rho))


class TestQuadrature:
    def test_circle_about_atom(self):
        assert mean_quadrature(LN_Z, 0, 1, MeanKind.CIRCLE, n=4096) == pytest.approx(0, abs=1e-6)

    def test_disk_about_atom(self):
        assert mean_quadrature(LN_Z, 0, 1, "disk", n=4096) == pytest.approx(-0.5, abs=1e-4)

    def test_pair_circle(self):
        val = mean_quadrature(PAIR, 0.3, 0.5, "circle", n=8192)
        assert val == pytest.approx(circle_mean_exact(PAIR, 0.3, 0.5), abs=1e-6)

    def test_node_on_atom_is_moved(self):
        u = LogPotentialFunction.from_atoms([(1, 0, 1)])
        val, moved = mean_quadrature(u, 0, 1, "circle", n=64, full_output=True)
        assert moved == 1 and np.isfinite(val)

    def test_n_minimum(self):
        from logminorant import DomainError
        with pytest.raises(DomainError):
            mean_quadrature(LN_Z, 0, 1, "circle", n=32)


class TestIdentities:
    def test_jensen_identity(self, rng):
        u = random_potential(rng)
        z = rng.normal(size=500) + 1j * rng.normal(size=500)
        rho = rng.uniform(0.05, 1, 500)
        lhs = circle_mean_exact(u, z, rho) - evaluate(u, z)
        rhs = jensen_defect(u.measure, z, rho)
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)

    def test_chain_is_exact(self, rng):
        u = random_potential(rng)
        z = rng.normal(size=2000) + 1j * rng.normal(size=2000)
        rho = rng.uniform(1e-3, 1, 2000)
        ev, dm, cm = evaluate(u, z), disk_mean_exact(u, z, rho), circle_mean_exact(u, z, rho)
        assert np.all(ev <= dm) and np.all(dm <= cm)

    def test_circle_below_boundary_sup(self, rng):
        u = random_potential(rng, n_max=8)
        for _ in range(20):
            z, rho = complex(*rng.normal(size=2)), float(rng.uniform(0.05, 1))
            theta = np.linspace(0, 2 * np.pi, 20_000, endpoint=False)
            sup = np.max(evaluate(u, z + rho * np.exp(1j * theta)))
            assert circle_mean_exact(u, z, rho) <= sup + 1e-9

    def test_harmonic_when_disk_empty(self):
        u = LogPotentialFunction(0.4, AtomicMassDistribution.from_atoms([(5, 0, 2.0), (0, 5, 1.5)]))
        for z in (0, 0.3 + 0.2j, -1j):
            assert circle_mean_exact(u, z, 1) == evaluate(u, z)
            assert disk_mean_exact(u, z, 1) == evaluate(u, z)
