"""Exceptional sets of Jensen-defect type and their content bounds.

The defect of a measure at ``z`` over radius ``rho`` is
``int_0^rho mu_rad(z, t) / t dt``; a point is exceptional when the defect over
``p(z)`` exceeds ``1/d``. For a suitable explicit ``p`` the variable-radius
content of the exceptional set is bounded by ``60 * int (p**d)^{vee s} dmu``
and, in turn, by ``sup_S r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .content import DiskCover, cover_weight
from .covering import (
    BESICOVITCH_BOUND,
    RadiusAssignment,
    audit_multiplicity,
    besicovitch_select,
    find_bad_radius,
)
from .errors import DomainError, InternalContradiction
from .measure import (
    AtomicMassDistribution,
    as_points,
    fit_growth_envelope,
    order_of_measure,
    radial_profile,
)
from .subharmonic import RadiusFunction, check_radius_condition

__all__ = [
    "THEOREM1_FACTOR",
    "PFunction",
    "build_p",
    "audit_p",
    "default_order_window",
    "jensen_defect",
    "is_exceptional",
    "sup_over_disk_radial",
    "theorem_bound_rhs",
    "atoms_near",
    "ExceptionalSample",
    "exceptional_sample",
    "sample_search_region",
    "ExceptionalCheck",
    "exceptional_cover_and_check",
]

THEOREM1_FACTOR = 60.0
RTOL = 1e-12


def jensen_defect(mu: AtomicMassDistribution, z, rho):
    """``sum_{0 < |a_k - z| <= rho} m_k ln(rho / |a_k - z|)``, or ``+inf`` on an atom."""
    scalar = np.ndim(z) == 0 and np.ndim(rho) == 0
    zz = np.asarray(z, dtype=complex)
    rr = np.asarray(rho, dtype=float)
    if np.any(~(rr > 0)):
        raise DomainError("radius must be positive")
    zz, rr = np.broadcast_arrays(zz, rr)
    if len(mu) == 0:
        out = np.zeros(zz.shape)
    else:
        s = np.abs(zz[..., None] - mu.centers)
        r3 = rr[..., None]
        inside = (s > 0) & (s <= r3)
        with np.errstate(divide="ignore"):
            terms = np.where(inside, np.log(r3 / np.where(inside, s, 1.0)), 0.0)
        out = terms @ mu.masses
        out = np.where(np.any(s == 0, axis=-1), np.inf, out)
    return float(out) if scalar else out


@dataclass(frozen=True)
class PFunction:
    """``p(z) = scale * (4 + |z|)**(-P)`` with the constants it was built from."""

    scale: float
    P: float
    Q: float = float("nan")
    l: float = float("nan")
    C: float = float("nan")
    d: float = float("nan")
    from_build_p: bool = False

    def __call__(self, z):
        x = np.abs(np.asarray(z, dtype=complex))
        out = self.scale * (4.0 + x) ** (-self.P)
        return float(out) if out.ndim == 0 else out

    @property
    def sup(self) -> float:
        """``sup p = p(0)``."""
        return self.scale * 4.0 ** (-self.P)

    def provenance(self):
        return {"Q": self.Q, "l": self.l, "C": self.C, "d": self.d}


def sup_over_disk_radial(p: PFunction, power: float, z, s: float):
    """``max_{|w - z| <= s} p(w)**power``; exact because ``p`` decreases in ``|w|``."""
    if s < 0:
        raise DomainError("s must be non-negative")
    x = np.maximum(np.abs(np.asarray(z, dtype=complex)) - s, 0.0)
    out = p.scale**power * (4.0 + x) ** (-p.P * power)
    return float(out) if out.ndim == 0 else out


def default_order_window(mu: AtomicMassDistribution):
    """``(1, max(e, max|a_k|))``: the range a finite truncation can speak for."""
    rmax = float(np.abs(mu.centers).max()) if len(mu) else 0.0
    return (1.0, max(np.e, rmax))


def audit_p(p: PFunction, r: RadiusFunction, n: int = 10_000, seed: int = 0):
    """Check ``p <= (2+|z|)**(-Q) <= r`` and ``sup p <= 1/2`` at ``n`` points.

    Sample moduli are log-uniform over ``[1e-6, 1e6]`` (plus the origin).
    Returns the number of violations of each inequality.
    """
    rng = np.random.default_rng(seed)
    x = np.concatenate(([0.0], 10.0 ** rng.uniform(-6, 6, n - 1)))
    z = x * np.exp(2j * np.pi * rng.random(n))
    pz = p(z)
    mid = (2.0 + x) ** (-p.Q) if np.isfinite(p.Q) else pz
    return {
        "p_le_power": int(np.count_nonzero(pz > mid)),
        "power_le_r": int(np.count_nonzero(mid > r(z))),
        "p_le_r": int(np.count_nonzero(pz > r(z))),
        "sup_p_le_half": int(p.sup > 0.5) + int(np.count_nonzero(pz > 0.5)),
    }


def build_p(r: RadiusFunction, mu: AtomicMassDistribution, d: float, l: float,
            order: float | None = None, order_window=None, audit_points: int = 10_000) -> PFunction:
    """Explicit radius ``p`` for the finite-order content bound.

    ``Q`` is the least exponent with ``(2+|z|)**(-Q) <= r``, ``C`` the tight
    growth constant of ``mu`` for exponent ``l``; then
    ``P = Q + 1 + (Q + l + 1)/d`` and ``scale = (60 (l+1) C)**(-1/d)``.

    ``l`` must exceed the order of ``mu``. Pass ``order`` directly or an
    ``order_window`` over which it is estimated (default
    :func:`default_order_window`).
    """
    if not 0 < d <= 2:
        raise DomainError("d must lie in (0, 2]")
    check = check_radius_condition(r)
    if not check.passes:
        raise DomainError("radius function fails the logarithmic lower-bound condition")
    if order is None:
        window = order_window or default_order_window(mu)
        order = order_of_measure(*radial_profile(mu, *window))
    if not l > order or l < 0:
        raise DomainError(f"l = {l} must exceed the measured order {order:.6g}")
    Q = check.Q
    C = fit_growth_envelope(mu, l).C
    P = Q + 1.0 + (Q + l + 1.0) / d
    scale = (THEOREM1_FACTOR * (l + 1.0) * C) ** (-1.0 / d)
    p = PFunction(scale, P, Q, float(l), C, float(d), from_build_p=True)
    if audit_points:
        bad = audit_p(p, r, audit_points)
        if any(bad.values()):
            raise InternalContradiction(f"p-function audit failed: {bad}")
    return p


def _radius_values(p, z):
    if callable(p):
        return np.asarray(p(z), dtype=float)
    return np.full(np.shape(z), float(p))


def is_exceptional(mu: AtomicMassDistribution, z, p, d: float):
    """``jensen_defect(mu, z, p(z)) > 1/d`` (strict). ``p`` is callable or a constant."""
    if not 0 < d <= 2:
        raise DomainError("d must lie in (0, 2]")
    zz = np.asarray(z, dtype=complex)
    flag = jensen_defect(mu, zz, _radius_values(p, zz)) > 1.0 / d
    return bool(flag) if np.ndim(flag) == 0 else flag


def atoms_near(mu: AtomicMassDistribution, points, radius: float) -> np.ndarray:
    """Mask of atoms lying within ``radius`` of at least one of ``points``."""
    pts = as_points(points) if np.size(points) else np.empty(0, complex)
    if len(mu) == 0 or pts.size == 0:
        return np.zeros(len(mu), dtype=bool)
    tree = cKDTree(np.column_stack((pts.real, pts.imag)))
    dist, _ = tree.query(np.column_stack((mu.centers.real, mu.centers.imag)))
    near = dist <= radius * (1 + 1e-9)
    # confirm borderline hits exactly
    for k in np.flatnonzero(near & (dist > radius * (1 - 1e-9))):
        near[k] = bool(np.any(np.abs(pts - mu.centers[k]) <= radius))
    return near


def theorem_bound_rhs(mu: AtomicMassDistribution, p: PFunction, d: float, region_Ss) -> float:
    """``60 * sum_{a_k in S_s} m_k * sup_{|w - a_k| <= s} p(w)**d`` with ``s = sup p``.

    ``region_Ss`` is a boolean mask over the atoms of ``mu`` or a predicate
    evaluated on the atom centers.
    """
    if len(mu) == 0:
        return 0.0
    mask = region_Ss(mu.centers) if callable(region_Ss) else region_Ss
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        return 0.0
    vals = sup_over_disk_radial(p, d, mu.centers[mask], p.sup)
    return float(THEOREM1_FACTOR * np.dot(mu.masses[mask], np.atleast_1d(vals)))


@dataclass(frozen=True, eq=False)
class ExceptionalSample:
    """Sampled points flagged exceptional, with their defects.

    ``atom_centers`` and ``search_radius`` describe the search region, the
    union of closed disks of radius ``sup p`` about the atoms; the defect
    vanishes outside it.
    """

    points: np.ndarray
    defects: np.ndarray
    atom_centers: np.ndarray
    search_radius: float

    def in_search_region(self, z):
        zz = np.asarray(z, dtype=complex)
        if self.atom_centers.size == 0:
            return np.zeros(zz.shape, dtype=bool)
        return np.any(np.abs(zz[..., None] - self.atom_centers) <= self.search_radius, axis=-1)


def exceptional_sample(mu: AtomicMassDistribution, p, d: float, points) -> ExceptionalSample:
    """Evaluate defects on ``points`` and keep those that are exceptional."""
    pts = as_points(points) if np.size(points) else np.empty(0, complex)
    rho = _radius_values(p, pts)
    defects = jensen_defect(mu, pts, rho) if pts.size else np.empty(0)
    flag = defects > 1.0 / d
    s = p.sup if isinstance(p, PFunction) else float(np.max(rho, initial=0.0))
    return ExceptionalSample(pts[flag], defects[flag], mu.centers, s)


def sample_search_region(mu: AtomicMassDistribution, s: float, n_per_atom: int, rng,
                         min_fraction: float = 1e-6) -> np.ndarray:
    """Random points in the closed disks of radius ``s`` about the atoms.

    Distances from the atom are log-uniform in ``[min_fraction * s, s]`` so the
    sample resolves the logarithmic profile of the defect.
    """
    if len(mu) == 0 or n_per_atom <= 0:
        return np.empty(0, complex)
    k = len(mu) * n_per_atom
    rad = s * np.exp(rng.uniform(np.log(min_fraction), 0.0, k))
    ang = rng.uniform(0.0, 2 * np.pi, k)
    return np.repeat(mu.centers, n_per_atom) + rad * np.exp(1j * ang)


@dataclass(frozen=True, eq=False)
class ExceptionalCheck:
    sample: ExceptionalSample
    assignment: RadiusAssignment
    cover: DiskCover
    lhs_weight: float
    rhs_theorem1: float
    rhs_theorem2: float | None
    max_multiplicity: int
    transfer_valid: bool
    theorem1_ok: bool
    theorem2_ok: bool | None
    details: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.theorem1_ok and self.theorem2_ok is not False and self.transfer_valid


def exceptional_cover_and_check(mu: AtomicMassDistribution, p: PFunction, d: float, S,
                                r: RadiusFunction | None = None,
                                multiplicity_bound: int = BESICOVITCH_BOUND) -> ExceptionalCheck:
    """Cover the sampled exceptional set in ``S`` and compare with both bounds.

    ``S`` is a finite sample of the region of interest. Exceptional sample
    points get their smallest bad radius, the greedy Besicovitch selection is
    audited for multiplicity at the atoms and the flagged points, and the
    selected cover weight is compared with the 60-integral over the atoms
    within ``2 sup p`` of ``S`` (first bound) and with ``min(1, sup_S r)``
    (second bound, only when ``p`` came from :func:`build_p`).
    """
    if not 0 < d <= 2:
        raise DomainError("d must lie in (0, 2]")
    pts = as_points(S) if np.size(S) else np.empty(0, complex)
    sample = exceptional_sample(mu, p, d, pts)

    entries_t = np.empty(sample.points.size)
    pz = p(sample.points) if sample.points.size else np.empty(0)
    for i, z in enumerate(sample.points):
        t = find_bad_radius(mu, z, float(pz[i]), d)
        if t is None:
            raise InternalContradiction(
                f"exceptional point {complex(z)!r} (defect {sample.defects[i]!r}) has no bad radius"
            )
        entries_t[i] = t
    assignment = RadiusAssignment(sample.points, entries_t)
    selected = besicovitch_select(assignment)
    probes = np.concatenate((mu.centers, sample.points))
    worst = audit_multiplicity(selected, probes, multiplicity_bound)

    cover = DiskCover(selected.points, selected.radii, radius_bound=p)
    lhs = cover_weight(cover, d)
    s = p.sup
    near = atoms_near(mu, pts, 2.0 * s)
    rhs1 = theorem_bound_rhs(mu, p, d, near)
    theorem1_ok = lhs <= rhs1 * (1 + RTOL)

    rhs2 = None
    theorem2_ok = None
    transfer = True
    if r is not None:
        transfer = cover.respects(r)
        if p.from_build_p and pts.size:
            rhs2 = float(min(1.0, np.max(r(pts))))
            theorem2_ok = rhs1 <= rhs2 * (1 + RTOL)
    return ExceptionalCheck(
        sample=sample,
        assignment=selected,
        cover=cover,
        lhs_weight=lhs,
        rhs_theorem1=rhs1,
        rhs_theorem2=rhs2,
        max_multiplicity=worst,
        transfer_valid=transfer,
        theorem1_ok=bool(theorem1_ok),
        theorem2_ok=theorem2_ok,
        details={"n_sample": int(pts.size), "n_flagged": int(sample.points.size),
                 "n_atoms_in_Ss": int(near.sum()), "s": s},
    )
