import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logminorant import (
    AtomicMassDistribution,
    MultiplicityAuditError,
    RadiusAssignment,
    audit_multiplicity,
    besicovitch_select,
    find_bad_radius,
    mu_rad,
    multiplicity,
)
from logminorant.covering import multiplicities

from conftest import random_measure

ORIGIN = AtomicMassDistribution.from_atoms([(0, 0, 1)])


def scan_oracle(mu, z, p, d, n=200_001):
    """Smallest t on a fine grid with t^d <= p^d mu_rad(t), refined to the jump it sits on."""
    t = np.linspace(p / n, p, n)
    ok = t**d <= p**d * mu_rad(mu, z, t)
    if not ok.any():
        return None
    t0 = t[np.argmax(ok)]
    jumps = np.abs(mu.centers - z)
    return float(jumps[(jumps <= t0)].max())


class TestBadRadius:
    def test_near_atom(self):
        assert find_bad_radius(ORIGIN, 1e-3, 0.5, 1) == pytest.approx(1e-3, rel=1e-12)

    def test_no_atom_in_range(self):
        assert find_bad_radius(ORIGIN, 0.6, 0.5, 1) is None

    def test_inequality_fails_at_sole_jump(self):
        mu = AtomicMassDistribution.from_atoms([(0, 0, 0.1)])
        assert 0.2**2 > 0.25**2 * 0.1
        assert find_bad_radius(mu, 0.2, 0.25, 2) is None

    def test_empty(self):
        assert find_bad_radius(AtomicMassDistribution.empty(), 0, 1, 1) is None

    def test_atom_at_point(self):
        mu = AtomicMassDistribution.from_atoms([(0, 0, 1), (1e-9, 0, 1)])
        t = find_bad_radius(mu, 0, 0.5, 1)
        assert t == pytest.approx(1e-9)
        t = find_bad_radius(ORIGIN, 0, 0.5, 1)
        assert t == 0.5 * 2.0**-20
        assert t**1 <= 0.5 * mu_rad(ORIGIN, 0, t)

    def test_atom_at_point_small_mass(self):
        mu = AtomicMassDistribution.from_atoms([(0, 0, 1e-12)])
        t = find_bad_radius(mu, 0, 0.5, 2)
        assert 0 < t <= 0.5 and t**2 <= 0.25 * mu_rad(mu, 0, t) * (1 + 1e-12)

    def test_against_scan(self, rng):
        for _ in range(30):
            mu = random_measure(rng, n_max=15, spread=0.2, max_mass=2)
            z = complex(*rng.uniform(-0.2, 0.2, 2))
            p, d = float(rng.uniform(0.01, 0.3)), float(rng.uniform(0.3, 2))
            got = find_bad_radius(mu, z, p, d)
            want = scan_oracle(mu, z, p, d)
            if want is None:
                assert got is None
            else:
                assert got == pytest.approx(want, rel=1e-12)
                assert got <= p and got**d <= p**d * mu_rad(mu, z, got)


class TestSelect:
    def test_nested_small_disk_dropped(self):
        a = RadiusAssignment([0, 0.1, 3], [1.0, 1.0, 1.0])
        sel = besicovitch_select(a)
        np.testing.assert_array_equal(sel.points, [0, 3])
        assert all(multiplicity(sel, c) >= 1 for c in a.points)

    def test_single(self):
        a = RadiusAssignment([1j], [0.2])
        sel = besicovitch_select(a)
        assert len(sel) == 1 and sel.points[0] == 1j

    def test_empty(self):
        assert len(besicovitch_select(RadiusAssignment.from_entries([]))) == 0

    def test_random_square(self, rng):
        pts = rng.random(1000) + 1j * rng.random(1000)
        a = RadiusAssignment(pts, rng.uniform(0.01, 0.05, 1000))
        sel = besicovitch_select(a)
        # brute-force containment
        d = np.abs(pts[:, None] - sel.points[None, :]) <= sel.radii[None, :]
        assert d.any(axis=1).all()
        probes = rng.random(10_000) + 1j * rng.random(10_000)
        brute = (np.abs(probes[:, None] - sel.points[None, :]) <= sel.radii[None, :]).sum(axis=1)
        np.testing.assert_array_equal(multiplicities(sel, probes), brute)
        assert brute.max() <= 19

    def test_subset_and_nonincreasing(self, rng):
        pts = rng.normal(size=300) + 1j * rng.normal(size=300)
        a = RadiusAssignment(pts, rng.uniform(0.05, 0.5, 300))
        sel = besicovitch_select(a)
        assert set(sel.points.tolist()) <= set(pts.tolist())
        assert np.all(np.diff(sel.radii) <= 0)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.01, 1)), min_size=1, max_size=60))
    def test_covers_centers_property(self, entries):
        a = RadiusAssignment([complex(x, y) for x, y, _ in entries], [t for *_, t in entries])
        sel = besicovitch_select(a)
        assert np.all(multiplicities(sel, a.points) >= 1)


class TestMultiplicity:
    def test_empty_family(self):
        assert multiplicity(RadiusAssignment.from_entries([]), 0) == 0

    def test_concentric(self):
        assert multiplicity(RadiusAssignment([0, 0], [1, 2]), 0) == 2

    def test_five_through_origin(self):
        centers = 0.5 * np.exp(2j * np.pi * np.arange(5) / 5)
        fam = RadiusAssignment(centers, np.full(5, 0.5))
        assert multiplicity(fam, 0) == sum(abs(c) <= 0.5 for c in centers) == 5

    def test_audit_raises(self):
        fam = RadiusAssignment(np.zeros(25), np.ones(25))
        with pytest.raises(MultiplicityAuditError) as err:
            audit_multiplicity(fam, [0])
        assert err.value.multiplicity == 25

    def test_audit_returns_max(self):
        assert audit_multiplicity(RadiusAssignment([0, 0.5], [1, 1]), [0.25, 5]) == 2
