"""Finite atomic mass distributions and their radial counting functions.

Points of the plane are represented as Python/numpy complex numbers
throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError

__all__ = [
    "AtomicMassDistribution",
    "GrowthEnvelope",
    "as_point",
    "as_points",
    "mu_rad",
    "radial_profile",
    "order_of_measure",
    "log_log_slope",
    "fit_growth_envelope",
]


def as_point(z) -> complex:
    """Coerce a scalar complex or an ``(re, im)`` pair to a finite complex."""
    if isinstance(z, (tuple, list)) and len(z) == 2:
        z = complex(float(z[0]), float(z[1]))
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise DomainError(f"point {z!r} is not finite")
    return z


def as_points(z) -> np.ndarray:
    """Coerce an array-like of points to a 1-D complex array."""
    arr = np.asarray(z)
    if arr.dtype.kind in "iuf" and arr.ndim == 2 and arr.shape[-1] == 2:
        arr = arr[:, 0] + 1j * arr[:, 1]
    arr = np.atleast_1d(arr.astype(complex))
    if not np.all(np.isfinite(arr)):
        raise DomainError("points must have finite coordinates")
    return arr.ravel()


@dataclass(frozen=True, eq=False)
class AtomicMassDistribution:
    """A positive measure with finitely many point masses.

    Equal centers are merged on construction; atoms are stored sorted by
    ``(|center|, re, im)`` so that two distributions with the same atoms
    compare equal regardless of input order.
    """

    centers: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        centers = np.atleast_1d(np.asarray(self.centers, dtype=complex)).ravel()
        masses = np.atleast_1d(np.asarray(self.masses, dtype=float)).ravel()
        if centers.shape != masses.shape:
            raise DomainError("centers and masses must have equal length")
        if not np.all(np.isfinite(centers)):
            raise DomainError("atom centers must be finite")
        if not np.all(np.isfinite(masses)) or np.any(masses <= 0):
            raise DomainError("atom masses must be positive and finite")
        if centers.size:
            order = np.lexsort((centers.imag, centers.real, np.abs(centers)))
            centers, masses = centers[order], masses[order]
            uniq, inverse = np.unique(centers, return_inverse=True)
            if uniq.size < centers.size:
                merged = np.zeros(uniq.size)
                np.add.at(merged, inverse, masses)
                order = np.lexsort((uniq.imag, uniq.real, np.abs(uniq)))
                centers, masses = uniq[order], merged[order]
        centers.setflags(write=False)
        masses.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def from_atoms(cls, atoms: Iterable) -> "AtomicMassDistribution":
        """Build from ``(center, mass)`` or ``(re, im, mass)`` tuples."""
        centers, masses = [], []
        for atom in atoms:
            if len(atom) == 3:
                centers.append(complex(atom[0], atom[1]))
                masses.append(atom[2])
            else:
                centers.append(as_point(atom[0]))
                masses.append(atom[1])
        return cls(np.array(centers, dtype=complex), np.array(masses, dtype=float))

    @classmethod
    def empty(cls) -> "AtomicMassDistribution":
        return cls(np.empty(0, dtype=complex), np.empty(0))

    def __len__(self):
        return self.centers.size

    def __eq__(self, other):
        if not isinstance(other, AtomicMassDistribution):
            return NotImplemented
        return np.array_equal(self.centers, other.centers) and np.array_equal(
            self.masses, other.masses
        )

    def __hash__(self):
        return hash((self.centers.tobytes(), self.masses.tobytes()))

    def __repr__(self):
        return f"AtomicMassDistribution(n_atoms={len(self)}, total={self.total_mass!r})"

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def atoms(self):
        """List of ``(center, mass)`` pairs in canonical order."""
        return list(zip(self.centers.tolist(), self.masses.tolist()))


def mu_rad(mu: AtomicMassDistribution, z=0j, t=0.0):
    """Mass of the closed disk of radius ``t`` about ``z``.

    ``t`` may be an array; the result then has the same shape.
    """
    z = as_point(z)
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or np.any(np.isnan(t_arr)):
        raise DomainError("radius t must be non-negative")
    if len(mu) == 0:
        out = np.zeros_like(t_arr)
        return float(out) if out.ndim == 0 else out
    dist = np.abs(mu.centers - z)
    order = np.argsort(dist, kind="stable")
    dist_sorted = dist[order]
    cum = np.concatenate(([0.0], np.cumsum(mu.masses[order])))
    idx = np.searchsorted(dist_sorted, t_arr, side="right")
    out = cum[idx]
    return float(out) if out.ndim == 0 else out


def radial_profile(mu: AtomicMassDistribution, t_min: float, t_max: float, n: int = 256):
    """Sample ``mu_rad(mu, 0, t)`` on a geometric grid over ``[t_min, t_max]``."""
    if not (t_max > t_min > 0):
        raise DomainError("window must satisfy t_max > t_min > 0")
    t = np.geomspace(t_min, t_max, n)
    return t, mu_rad(mu, 0j, t)


def log_log_slope(x, values) -> float:
    """Least-squares slope of ``ln(1 + values^+)`` against ``ln x``."""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    if x.size == 0 or x.shape != values.shape:
        raise DomainError("empty or mismatched window")
    if np.any(x <= 0):
        raise DomainError("window abscissae must be positive")
    if x.size < 2 or np.ptp(x) == 0:
        raise DomainError("window must contain at least two distinct abscissae")
    lx = np.log(x)
    ly = np.log1p(np.clip(values, 0.0, None))
    lx_c = lx - lx.mean()
    slope = float(np.dot(lx_c, ly - ly.mean()) / np.dot(lx_c, lx_c))
    # a constant profile must give exactly zero
    if np.ptp(ly) == 0:
        return 0.0
    return slope


def order_of_measure(t, values) -> float:
    """Windowed estimator of the order of a radial counting function.

    ``t`` and ``values`` sample the profile ``mu_rad`` over the caller's window.
    The result is the regression slope of ``ln(1 + mu_rad)`` on ``ln t``, clipped
    at zero; it stands in for the limsup, which finite data cannot determine.
    """
    values = np.asarray(values, dtype=float)
    if values.size and np.any(np.diff(values) < 0):
        raise DomainError("counting profile must be nondecreasing")
    return max(0.0, log_log_slope(t, values))


@dataclass(frozen=True)
class GrowthEnvelope:
    """Constants ``(C, l)`` with ``mu_rad(t) <= C (1 + t)**l`` for all ``t >= 0``."""

    C: float
    l: float

    def __call__(self, t):
        return self.C * (1.0 + np.asarray(t, dtype=float)) ** self.l


def fit_growth_envelope(mu: AtomicMassDistribution, l: float) -> GrowthEnvelope:
    """Least constant ``C >= 1`` making ``C (1+t)**l`` dominate ``mu_rad(0, t)``.

    The counting function is a right-continuous step function and ``(1+t)**l``
    is nondecreasing, so the supremum of the ratio is attained at ``t = 0`` or
    at one of the atom radii.
    """
    if not l >= 0:
        raise DomainError("exponent l must be non-negative")
    if len(mu) == 0:
        return GrowthEnvelope(1.0, float(l))
    radii = np.unique(np.concatenate(([0.0], np.abs(mu.centers))))
    ratios = mu_rad(mu, 0j, radii) / (1.0 + radii) ** l
    return GrowthEnvelope(max(1.0, float(ratios.max())), float(l))
