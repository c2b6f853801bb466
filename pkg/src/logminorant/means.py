"""Circle and disk means of log-potentials over variable radii.

The closed forms are exact; ``mean_quadrature`` evaluates the defining
integrals directly and exists to check them.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import DomainError
from .subharmonic import LogPotentialFunction

__all__ = [
    "MeanKind",
    "circle_mean_exact",
    "disk_mean_exact",
    "disk_log_kernel",
    "mean_quadrature",
]


class MeanKind(str, enum.Enum):
    CIRCLE = "circle"
    DISK = "disk"


def _distances(u, z, rho):
    zz = np.asarray(z, dtype=complex)
    rr = np.asarray(rho, dtype=float)
    if np.any(rr <= 0) or np.any(np.isnan(rr)):
        raise DomainError("radius must be positive")
    zz, rr = np.broadcast_arrays(zz, rr)
    s = np.abs(zz[..., None] - u.measure.centers)
    return s, rr[..., None], np.ndim(z) == 0 and np.ndim(rho) == 0


def circle_mean_exact(u: LogPotentialFunction, z, rho):
    """Mean of ``u`` over the circle ``|w - z| = rho``.

    Each atom contributes ``m ln max(|a - z|, rho)``, so the value is finite
    even at atom centers.
    """
    s, rr, scalar = _distances(u, z, rho)
    out = u.c0 + np.log(np.maximum(s, rr)) @ u.measure.masses
    return float(out) if scalar else out


def disk_log_kernel(s, rho):
    """Mean of ``ln|w - a|`` over the disk of radius ``rho`` about a point at distance ``s``."""
    s = np.asarray(s, dtype=float)
    rho = np.asarray(rho, dtype=float)
    inside = s < rho
    with np.errstate(divide="ignore"):
        outer = np.log(np.where(inside, rho, s))
    inner = np.log(rho) - 0.5 + s**2 / (2.0 * rho**2)
    return np.where(inside, inner, outer)


def disk_mean_exact(u: LogPotentialFunction, z, rho):
    """Mean of ``u`` over the closed disk ``|w - z| <= rho`` (area normalized)."""
    s, rr, scalar = _distances(u, z, rho)
    out = u.c0 + disk_log_kernel(s, rr) @ u.measure.masses
    return float(out) if scalar else out


def _circle_rule(u, z, t, n, offset, chunk=128):
    """Composite periodic rule on circles of radii ``t`` (array) about ``z``.

    Returns the per-radius means and the number of nodes nudged off atoms.
    """
    centers = u.measure.centers
    if centers.size == 0:
        return np.full(t.shape, float(u.c0)), 0
    means = np.empty(t.shape)
    moved = 0
    eps = np.finfo(float).eps * 2 * np.pi
    for lo in range(0, t.size, chunk):
        tt = t[lo:lo + chunk, None]
        theta = 2 * np.pi * (np.arange(n) + offset[lo:lo + chunk, None]) / n
        diff = (z + tt * np.exp(1j * theta))[..., None] - centers
        bad = (diff == 0).any(axis=-1)
        if bad.any():
            moved += int(np.count_nonzero(bad))
            theta = np.where(bad, theta + eps, theta)
            diff = (z + tt * np.exp(1j * theta))[..., None] - centers
        with np.errstate(divide="ignore"):
            logs = 0.5 * np.log(diff.real**2 + diff.imag**2)
        means[lo:lo + chunk] = (logs @ u.measure.masses).mean(axis=1)
    return u.c0 + means, moved


def mean_quadrature(
    u: LogPotentialFunction,
    z,
    rho: float,
    kind=MeanKind.CIRCLE,
    n: int = 4096,
    n_angular: int = 64,
    full_output: bool = False,
):
    """Evaluate the circle or disk mean of ``u`` by direct quadrature.

    Circle: the ``n``-node periodic trapezoid rule. Disk: the radial integral
    ``(2/rho**2) * int_0^rho t * circle_mean(t) dt`` by the ``n``-node midpoint
    rule, each inner circle mean by an ``n_angular``-node periodic rule whose
    phase is rotated from ring to ring. Nodes that coincide with an atom are
    moved by one machine-epsilon step in angle; with ``full_output`` the
    number of moved nodes is returned alongside the value.
    """
    kind = MeanKind(kind)
    if n < 64:
        raise DomainError("n must be at least 64")
    if not rho > 0:
        raise DomainError("radius must be positive")
    z = complex(z)
    if kind is MeanKind.CIRCLE:
        vals, moved = _circle_rule(u, z, np.array([float(rho)]), n, np.zeros(1))
        value = float(vals[0])
    else:
        h = rho / n
        t = (np.arange(n) + 0.5) * h
        offset = np.mod(np.arange(n) * 0.6180339887498949, 1.0)
        vals, moved = _circle_rule(u, z, t, n_angular, offset)
        value = float(2.0 / rho**2 * np.sum(t * vals) * h)
    return (value, moved) if full_output else value
