"""Hausdorff content of variable radius: cover weights and greedy upper bounds."""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma, pi

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError
from .measure import as_points

__all__ = [
    "ball_coefficient",
    "DiskCover",
    "ContentValue",
    "cover_weight",
    "content_upper_bound",
    "admissible_radii",
]


def ball_coefficient(d: float) -> float:
    """``pi**(d/2) / Gamma(1 + d/2)``, the volume of the unit ``d``-ball.

    Equals 1 at ``d = 0``, 2 at ``d = 1`` and ``pi`` at ``d = 2``.
    """
    if d < 0:
        raise DomainError("dimension must be non-negative")
    return pi ** (d / 2) / gamma(1 + d / 2)


def admissible_radii(bound, points: np.ndarray) -> np.ndarray:
    """Evaluate a radius bound (callable or positive constant) at ``points``."""
    if callable(bound):
        radii = np.broadcast_to(np.asarray(bound(points), dtype=float), points.shape)
    else:
        radii = np.full(points.shape, float(bound))
    return np.array(radii, dtype=float)


@dataclass(frozen=True, eq=False)
class DiskCover:
    """A finite family of closed disks together with the radius bound they obey."""

    centers: np.ndarray
    radii: np.ndarray
    radius_bound: object = None

    def __post_init__(self):
        centers = np.atleast_1d(np.array(self.centers, dtype=complex)).ravel()
        radii = np.atleast_1d(np.array(self.radii, dtype=float)).ravel()
        if centers.shape != radii.shape:
            raise DomainError("centers and radii must have equal length")
        if np.any(radii <= 0):
            raise DomainError("disk radii must be positive")
        centers.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)

    def __len__(self):
        return self.centers.size

    @classmethod
    def empty(cls, radius_bound=None):
        return cls(np.empty(0, complex), np.empty(0), radius_bound)

    def respects(self, bound, rtol: float = 0.0) -> bool:
        """True when every radius is at most ``bound`` evaluated at its center."""
        if len(self) == 0:
            return True
        limit = admissible_radii(bound, self.centers)
        return bool(np.all(self.radii <= limit * (1 + rtol)))

    def covers(self, points) -> np.ndarray:
        """Boolean mask of ``points`` lying in at least one closed disk."""
        pts = as_points(points)
        if len(self) == 0:
            return np.zeros(pts.shape, dtype=bool)
        out = np.zeros(pts.shape, dtype=bool)
        for lo in range(0, pts.size, 4096):
            block = pts[lo:lo + 4096, None]
            out[lo:lo + 4096] = np.any(np.abs(block - self.centers) <= self.radii, axis=1)
        return out

    def concatenate(self, other: "DiskCover") -> "DiskCover":
        return DiskCover(
            np.concatenate((self.centers, other.centers)),
            np.concatenate((self.radii, other.radii)),
            self.radius_bound,
        )

    def to_records(self):
        """``[re, im, radius]`` triples for serialization."""
        return [[c.real, c.imag, r] for c, r in zip(self.centers.tolist(), self.radii.tolist())]


@dataclass(frozen=True)
class ContentValue:
    d: float
    weight: float


def cover_weight(cover: DiskCover, d: float) -> float:
    """``sum_k ball_coefficient(d) * r_k**d`` over the disks of ``cover``."""
    if not d > 0:
        raise DomainError("dimension d must be positive")
    if len(cover) == 0:
        return 0.0
    return float(ball_coefficient(d) * np.sum(cover.radii**d))


def content_upper_bound(points, d: float, r):
    """Greedy cover of a finite point set and its weight.

    Points are visited by decreasing admissible radius ``r(point)``, ties
    broken lexicographically by ``(re, im)``. Each point still uncovered
    becomes the center of a disk of the full admissible radius. The weight
    bounds the variable-radius content of the point set from above.

    Returns ``(ContentValue, DiskCover)``.
    """
    if not d > 0:
        raise DomainError("dimension d must be positive")
    pts = as_points(points) if np.size(points) else np.empty(0, complex)
    if pts.size == 0:
        return ContentValue(float(d), 0.0), DiskCover.empty(r)
    radii = admissible_radii(r, pts)
    if np.any(~(radii > 0)):
        raise DomainError("radius bound vanishes at a point of the set")
    order = np.lexsort((pts.imag, pts.real, -radii))
    pts, radii = pts[order], radii[order]
    tree = cKDTree(np.column_stack((pts.real, pts.imag)))
    covered = np.zeros(pts.size, dtype=bool)
    centers, chosen = [], []
    for i in range(pts.size):
        if covered[i]:
            continue
        c, rad = pts[i], radii[i]
        centers.append(c)
        chosen.append(rad)
        near = np.asarray(tree.query_ball_point((c.real, c.imag), rad * (1 + 1e-12)), dtype=int)
        covered[near[np.abs(pts[near] - c) <= rad]] = True
    cover = DiskCover(np.array(centers), np.array(chosen), r)
    return ContentValue(float(d), cover_weight(cover, d)), cover
