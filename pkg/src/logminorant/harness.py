"""Polynomial minorants of log-potentials and the checks they must pass."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .means import circle_mean_exact, disk_mean_exact
from .measure import AtomicMassDistribution, as_points
from .subharmonic import LogPotentialFunction, RadiusFunction, evaluate, radial_sup

__all__ = [
    "PolynomialMinorant",
    "construct_minorant",
    "atomize_measure",
    "verify_pointwise",
    "MeansVerdict",
    "verify_means",
    "GrowthVerdict",
    "verify_radial_growth",
    "EXACT_SLACK",
    "SAMPLED_SLACK",
]

# exact closed-form comparisons vs comparisons involving sampled suprema
EXACT_SLACK = 1e-12
SAMPLED_SLACK = 1e-6


@dataclass(frozen=True)
class PolynomialMinorant:
    """``ln|f(z)| = log_amplitude + sum_k nu_k ln|z - b_k|`` with integer ``nu_k``."""

    log_amplitude: float
    zeros: AtomicMassDistribution

    def __post_init__(self):
        if not all(float(m).is_integer() for m in self.zeros.masses):
            raise DomainError("zero multiplicities must be positive integers")

    def as_potential(self) -> LogPotentialFunction:
        return LogPotentialFunction(self.log_amplitude, self.zeros)

    def log_abs(self, z):
        return evaluate(self.as_potential(), z)

    def coefficients(self) -> np.ndarray:
        """Monomial coefficients (highest degree first) of ``f`` itself."""
        roots = np.repeat(self.zeros.centers, self.zeros.masses.astype(int))
        return math.exp(self.log_amplitude) * np.poly(roots) if roots.size else np.array(
            [math.exp(self.log_amplitude)])


def construct_minorant(u: LogPotentialFunction, d: float) -> PolynomialMinorant:
    """``f = e^{c0 - 1/d} prod (z - a_k)^{m_k}`` for integer-atomic ``u``.

    Then ``ln|f| = u - 1/d`` everywhere. Fractional masses must first go
    through :func:`atomize_measure`.
    """
    if not d > 0:
        raise DomainError("d must be positive")
    masses = u.measure.masses
    if not all(float(m).is_integer() for m in masses):
        raise DomainError(
            "construct_minorant needs integer masses; use atomize_measure for fractional measures"
        )
    return PolynomialMinorant(u.c0 - 1.0 / d, u.measure)


def atomize_measure(mu: AtomicMassDistribution) -> AtomicMassDistribution:
    """Round a measure to integer masses while tracking its counting function.

    Atoms are visited by ``(|a|, re, im)``. Integer parts stay in place;
    fractional parts are accumulated and a unit mass is dropped at the
    current atom each time the running sum reaches the next integer. The
    radial counting functions about the origin then differ by less than 1.
    """
    if len(mu) == 0:
        return mu
    order = np.lexsort((mu.centers.imag, mu.centers.real, np.abs(mu.centers)))
    centers, masses = mu.centers[order], mu.masses[order]
    floors = np.floor(masses)
    fracs = masses - floors
    out = floors.copy()
    deposited = 0
    for k in range(len(masses)):
        # fsum keeps the running total exact enough that 0.5+0.7+0.8 reaches 2
        units = math.floor(math.fsum(fracs[: k + 1])) - deposited
        if units > 0:
            out[k] += units
            deposited += units
    keep = out > 0
    return AtomicMassDistribution(centers[keep], out[keep])


def verify_pointwise(u: LogPotentialFunction, f: PolynomialMinorant, grid, slack: float = EXACT_SLACK):
    """Grid points where ``ln|f(z)| > u(z) + slack``."""
    pts = as_points(grid)
    lhs = f.log_abs(pts)
    rhs = evaluate(u, pts)
    with np.errstate(invalid="ignore"):
        bad = lhs > rhs + slack
    return pts[bad]


@dataclass(frozen=True)
class MeansVerdict:
    passed: bool
    n_points: int
    minorant_violations: int
    chain_violations: int
    worst_margin: float


def verify_means(u: LogPotentialFunction, f: PolynomialMinorant, r: RadiusFunction, grid,
                 slack: float = EXACT_SLACK) -> MeansVerdict:
    """Check ``ln|f| <= u^{disk r} <= u^{circle r}`` at each grid point."""
    pts = as_points(grid)
    rho = np.asarray(r(pts), dtype=float)
    lnf = f.log_abs(pts)
    disk = disk_mean_exact(u, pts, rho)
    circ = circle_mean_exact(u, pts, rho)
    minorant_bad = int(np.count_nonzero(lnf > disk + slack))
    chain_bad = int(np.count_nonzero(disk > circ + slack))
    with np.errstate(invalid="ignore"):
        margin = float(np.max(lnf - disk)) if pts.size else -np.inf
    return MeansVerdict(minorant_bad == 0 and chain_bad == 0, int(pts.size), minorant_bad,
                        chain_bad, margin)


@dataclass(frozen=True)
class GrowthVerdict:
    passed: bool
    radii: tuple
    lhs: tuple
    rhs: tuple


def verify_radial_growth(u: LogPotentialFunction, f: PolynomialMinorant, r: RadiusFunction, radii,
                         n_samples: int = 720, slack: float = SAMPLED_SLACK) -> GrowthVerdict:
    """Check ``M_{ln|f|}(R) <= M_u(R + M_r(R)) + slack`` for each ``R``."""
    lnf = f.as_potential()
    lhs, rhs, ok = [], [], True
    for R in radii:
        if not R >= 0:
            raise DomainError("radii must be non-negative")
        a = radial_sup(lnf, R, n_samples)
        b = radial_sup(u, R + r.circle_sup(R, n_samples), n_samples)
        lhs.append(a)
        rhs.append(b)
        ok &= bool(a == -np.inf or a <= b + slack)
    return GrowthVerdict(ok, tuple(float(R) for R in radii), tuple(lhs), tuple(rhs))
