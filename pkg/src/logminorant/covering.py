"""Bad radii and Besicovitch-style subcover selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MultiplicityAuditError
from .measure import AtomicMassDistribution, as_point, as_points

__all__ = [
    "RadiusAssignment",
    "find_bad_radius",
    "besicovitch_select",
    "multiplicity",
    "multiplicities",
    "audit_multiplicity",
    "BESICOVITCH_BOUND",
]

BESICOVITCH_BOUND = 19
ATOM_AT_CENTER_FACTOR = 2.0**-20


@dataclass(frozen=True, eq=False)
class RadiusAssignment:
    """Points of the plane, each with a positive radius ``t``."""

    points: np.ndarray
    radii: np.ndarray

    def __post_init__(self):
        points = np.atleast_1d(np.array(self.points, dtype=complex)).ravel()
        radii = np.atleast_1d(np.array(self.radii, dtype=float)).ravel()
        if points.shape != radii.shape:
            raise ValueError("points and radii must have equal length")
        if np.any(~(radii > 0)):
            raise ValueError("radii must be positive")
        points.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "radii", radii)

    def __len__(self):
        return self.points.size

    @classmethod
    def from_entries(cls, entries):
        entries = list(entries)
        if not entries:
            return cls(np.empty(0, complex), np.empty(0))
        pts, ts = zip(*entries)
        return cls(np.array([as_point(p) for p in pts]), np.array(ts, dtype=float))


def find_bad_radius(mu: AtomicMassDistribution, z, p_z: float, d: float):
    """Smallest ``t`` in ``(0, p_z]`` with ``t**d <= p_z**d * mu_rad(mu, z, t)``.

    Returns ``None`` when no such radius exists, which certifies that the
    Jensen defect of ``mu`` at ``z`` over radius ``p_z`` is at most ``1/d``.

    The counting function is constant between consecutive atom distances, so
    only those distances need testing. If an atom sits at ``z`` itself every
    small ``t`` qualifies; the radius returned is then the smallest of
    ``p_z``, the nearest other atom distance, ``p_z * 2**-20`` and
    ``p_z * m0**(1/d)`` (the last keeps the inequality true for tiny masses).
    """
    z = as_point(z)
    if len(mu) == 0:
        return None
    dist = np.abs(mu.centers - z)
    order = np.argsort(dist, kind="stable")
    dist, masses = dist[order], mu.masses[order]
    cum = np.cumsum(masses)
    # group equal distances: counting function at a jump includes all of them
    last = np.r_[dist[1:] != dist[:-1], True]
    jumps, counts = dist[last], cum[last]
    if jumps[0] == 0.0:
        m0 = counts[0]
        candidates = [p_z, p_z * ATOM_AT_CENTER_FACTOR, p_z * m0 ** (1.0 / d)]
        if jumps.size > 1:
            candidates.append(jumps[1])
        return float(min(candidates))
    ok = (jumps <= p_z) & (jumps**d <= p_z**d * counts)
    if not ok.any():
        return None
    return float(jumps[np.argmax(ok)])


def besicovitch_select(assignment: RadiusAssignment) -> RadiusAssignment:
    """Greedy largest-first subfamily covering every input center.

    Disks are visited by decreasing radius (stable for ties); a disk is kept
    iff its center lies outside every closed disk kept so far. The result is
    returned in selection order, so its radii are non-increasing.
    """
    n = len(assignment)
    if n == 0:
        return assignment
    order = np.argsort(-assignment.radii, kind="stable")
    pts = assignment.points[order]
    rad = assignment.radii[order]
    sel_c = np.empty(n, dtype=complex)
    sel_r = np.empty(n)
    k = 0
    for c, t in zip(pts, rad):
        if k and np.any(np.abs(sel_c[:k] - c) <= sel_r[:k]):
            continue
        sel_c[k], sel_r[k] = c, t
        k += 1
    return RadiusAssignment(sel_c[:k], sel_r[:k])


def multiplicities(assignment: RadiusAssignment, probes) -> np.ndarray:
    """Number of closed disks of ``assignment`` containing each probe."""
    probes = as_points(probes) if np.size(probes) else np.empty(0, complex)
    out = np.zeros(probes.size, dtype=int)
    if len(assignment) == 0:
        return out
    step = max(1, 2**22 // max(1, len(assignment)))
    for lo in range(0, probes.size, step):
        block = probes[lo:lo + step, None]
        out[lo:lo + step] = np.count_nonzero(
            np.abs(block - assignment.points) <= assignment.radii, axis=1
        )
    return out


def multiplicity(assignment: RadiusAssignment, probe) -> int:
    """Number of closed disks of ``assignment`` containing ``probe``."""
    return int(multiplicities(assignment, [as_point(probe)])[0])


def audit_multiplicity(assignment: RadiusAssignment, probes, bound: int = BESICOVITCH_BOUND) -> int:
    """Maximum multiplicity over ``probes``; raises if it exceeds ``bound``."""
    probes = as_points(probes) if np.size(probes) else np.empty(0, complex)
    mult = multiplicities(assignment, probes)
    if mult.size == 0:
        return 0
    worst = int(mult.max())
    if worst > bound:
        raise MultiplicityAuditError(worst, bound, complex(probes[int(mult.argmax())]))
    return worst
