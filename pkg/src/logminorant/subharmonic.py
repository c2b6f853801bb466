"""Log-potentials, their radial growth, and admissible radius functions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .measure import AtomicMassDistribution, log_log_slope

__all__ = [
    "LogPotentialFunction",
    "evaluate",
    "radial_sup",
    "RadialGrowthFunction",
    "growth_function",
    "order_of_function",
    "RadiusFunction",
    "PowerRadius",
    "TabulatedRadius",
    "constant_radius",
    "RadiusCheck",
    "check_radius_condition",
]


@dataclass(frozen=True)
class LogPotentialFunction:
    """``u(z) = c0 + sum_k m_k ln|z - a_k|``; its Riesz measure is ``measure``."""

    c0: float
    measure: AtomicMassDistribution

    def __call__(self, z):
        return evaluate(self, z)

    @classmethod
    def from_atoms(cls, atoms, c0=0.0):
        return cls(float(c0), AtomicMassDistribution.from_atoms(atoms))


def evaluate(u: LogPotentialFunction, z):
    """Exact value of ``u`` at ``z``; ``-inf`` exactly at atom centers.

    Scalar in, float out; array in, array of the same shape out.
    """
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    mu = u.measure
    if len(mu) == 0:
        out = np.full(zz.shape, float(u.c0))
    else:
        diff = zz[..., None] - mu.centers
        with np.errstate(divide="ignore"):
            logs = np.log(np.abs(diff))
        out = u.c0 + logs @ mu.masses
    return float(out) if scalar else out


def _circle_values(u, R, theta):
    return evaluate(u, R * np.exp(1j * theta))


def radial_sup(u: LogPotentialFunction, R: float, n_samples: int = 720, refine: bool = True) -> float:
    """Estimate ``max_{|z|=R} u(z)`` by angular sampling plus local refinement."""
    if n_samples < 16:
        raise DomainError("n_samples must be at least 16")
    if R < 0:
        raise DomainError("R must be non-negative")
    if R == 0:
        return evaluate(u, 0j)
    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    vals = _circle_values(u, R, theta)
    k = int(np.argmax(vals))
    best = float(vals[k])
    if not refine or len(u.measure) == 0:
        return best
    h = 2 * np.pi / n_samples
    res = minimize_scalar(
        lambda th: -evaluate(u, R * np.exp(1j * th)),
        bounds=(theta[k] - h, theta[k] + h),
        method="bounded",
        options={"xatol": 1e-12},
    )
    if np.isfinite(res.fun):
        best = max(best, -float(res.fun))
    return best


class RadialGrowthFunction:
    """Callable profile ``R -> M(R)``, the circle supremum of a parent function."""

    def __init__(self, profile: Callable[[float], float], name: str = "M"):
        self._profile = profile
        self.name = name

    def __call__(self, R):
        if np.ndim(R) == 0:
            return float(self._profile(float(R)))
        return np.array([self._profile(float(r)) for r in np.ravel(R)]).reshape(np.shape(R))

    def __repr__(self):
        return f"RadialGrowthFunction({self.name})"


def growth_function(u: LogPotentialFunction, n_samples: int = 720, refine: bool = True):
    """The radial growth function ``M_u`` of a log-potential."""
    return RadialGrowthFunction(lambda R: radial_sup(u, R, n_samples, refine), name="M_u")


def order_of_function(M, window, n: int = 64) -> float:
    """Regression slope of ``ln(1 + M^+(R))`` on ``ln R`` over ``window``.

    ``window`` is either a pair ``(R_min, R_max)``, sampled geometrically with
    ``n`` points, or an explicit array of radii.
    """
    w = np.asarray(window, dtype=float)
    if w.size == 0:
        raise DomainError("empty window")
    if w.size == 2:
        lo, hi = w
        if not (hi > lo > 0):
            raise DomainError("window must satisfy R_max > R_min > 0")
        radii = np.geomspace(lo, hi, n)
    else:
        radii = w
    values = np.asarray(M(radii), dtype=float)
    return max(0.0, log_log_slope(radii, values))


# --- radius functions -------------------------------------------------------


class RadiusFunction:
    """Base class for admissible covering radii ``r: C -> (0, 1]``."""

    cap = 1.0

    def __call__(self, z):  # pragma: no cover - abstract
        raise NotImplementedError

    def circle_sup(self, R: float, n_samples: int = 720) -> float:
        """Sampled ``max_{|z|=R} r(z)``."""
        if R == 0:
            return float(self(0j))
        theta = 2 * np.pi * np.arange(n_samples) / n_samples
        return float(np.max(self(R * np.exp(1j * theta))))


@dataclass(frozen=True)
class PowerRadius(RadiusFunction):
    """``r(z) = min(1, kappa * (1 + |z|)**(-q))``."""

    kappa: float
    q: float = 0.0

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")
        if not self.q >= 0:
            raise DomainError("q must be non-negative")

    def __call__(self, z):
        x = np.abs(np.asarray(z, dtype=complex))
        out = np.minimum(1.0, self.kappa * (1.0 + x) ** (-self.q))
        return float(out) if out.ndim == 0 else out

    def circle_sup(self, R, n_samples=720):
        return float(self(R))

    def ratio(self, x):
        """``ln r / ln(2 + x)`` as a function of ``x = |z|``."""
        x = np.asarray(x, dtype=float)
        return np.log(self(x)) / np.log(2.0 + x)


def constant_radius(c: float) -> PowerRadius:
    if not 0 < c <= 1:
        raise DomainError("constant radius must lie in (0, 1]")
    return PowerRadius(kappa=float(c), q=0.0)


@dataclass(frozen=True, eq=False)
class TabulatedRadius(RadiusFunction):
    """Radius values on a rectangular grid, with a power tail outside it.

    Inside the grid box ``r(z)`` is the minimum of the four node values of the
    containing cell (a conservative lower interpolant). Outside the box
    ``r(z) = min(1, (1 + |z|)**(-tail_exponent))``.
    """

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray  # shape (len(ys), len(xs))
    tail_exponent: float = 0.0

    def __post_init__(self):
        xs = np.array(self.xs, dtype=float)
        ys = np.array(self.ys, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if xs.ndim != 1 or ys.ndim != 1 or xs.size < 2 or ys.size < 2:
            raise DomainError("grid axes must be 1-D with at least two nodes")
        if np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) <= 0):
            raise DomainError("grid axes must be strictly increasing")
        if values.shape != (ys.size, xs.size):
            raise DomainError("values must have shape (len(ys), len(xs))")
        if not np.all(values > 0):
            raise DomainError("tabulated radius values must be positive")
        for name, arr in (("xs", xs), ("ys", ys), ("values", np.minimum(values, 1.0))):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_function(cls, fn, box, nx=101, ny=101, tail_exponent=0.0):
        xmin, xmax, ymin, ymax = box
        xs = np.linspace(xmin, xmax, nx)
        ys = np.linspace(ymin, ymax, ny)
        X, Y = np.meshgrid(xs, ys)
        return cls(xs, ys, fn(X + 1j * Y), tail_exponent)

    @property
    def box(self):
        return (self.xs[0], self.xs[-1], self.ys[0], self.ys[-1])

    def cell_minima(self):
        v = self.values
        return np.minimum(np.minimum(v[:-1, :-1], v[1:, :-1]), np.minimum(v[:-1, 1:], v[1:, 1:]))

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        x, y = zz.real, zz.imag
        inside = (x >= self.xs[0]) & (x <= self.xs[-1]) & (y >= self.ys[0]) & (y <= self.ys[-1])
        out = np.minimum(1.0, (1.0 + np.abs(zz)) ** (-self.tail_exponent))
        if np.any(inside):
            i = np.clip(np.searchsorted(self.xs, x[inside], side="right") - 1, 0, self.xs.size - 2)
            j = np.clip(np.searchsorted(self.ys, y[inside], side="right") - 1, 0, self.ys.size - 2)
            out = np.array(out, dtype=float, copy=True)
            out[inside] = self.cell_minima()[j, i]
        return float(out) if np.ndim(out) == 0 else out


class RadiusCheck(NamedTuple):
    passes: bool
    Q: float
    inf_estimate: float
    envelope: dict | None = None


def _power_radius_sup_exponent(r: PowerRadius) -> float:
    """``sup_{x>=0} -ln r(x) / ln(2+x)`` for ``r = min(1, kappa (1+x)^-q)``."""
    q, lk = r.q, np.log(r.kappa)

    def g(x):
        return max(0.0, q * np.log1p(x) - lk) / np.log(2.0 + x)

    best = max(q, g(0.0))
    if lk < 0 and q > 0:
        # interior maximum in s = ln(1+x); g is smooth there since r < 1
        res = minimize_scalar(lambda s: -g(np.expm1(s)), bounds=(0.0, 60.0), method="bounded",
                              options={"xatol": 1e-12})
        best = max(best, -float(res.fun))
    return float(best)


def _tabulated_check(r: TabulatedRadius, tail_tol: float):
    xs, ys = r.xs, r.ys
    cm = r.cell_minima()
    # distance from the origin to each cell (closest point)
    cx = np.clip(0.0, xs[:-1], xs[1:])
    cy = np.clip(0.0, ys[:-1], ys[1:])
    dist = np.abs(cx[None, :] + 1j * cy[:, None])
    need = -np.log(cm) / np.log(2.0 + dist)
    Q_grid = float(max(0.0, need.max()))
    X, Y = np.meshgrid(xs, ys)
    absz = np.abs(X + 1j * Y)
    log_ratio = np.log(r.values) / np.log(2.0 + absz)
    inf_est = float(min(log_ratio.min(), -r.tail_exponent))

    # tail trend: local slope of the shell-wise worst -ln r against ln(2+|z|)
    # over the outer half of the box, relative to the larger of the grid and
    # declared tail exponents. Bounded for power-law decay, growing for faster.
    rmax = absz.max()
    edges = np.linspace(0.5 * rmax, rmax, 9)
    shell_x, shell_v = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mask = (absz >= lo) & (absz <= hi)
        if mask.any():
            shell_x.append(np.log(2.0 + absz[mask].max()))
            shell_v.append(-np.log(r.values[mask].min()))
    slope = float(np.polyfit(shell_x, shell_v, 1)[0]) if len(shell_x) >= 3 else 0.0
    ref = max(Q_grid, r.tail_exponent)
    ratio = slope / ref if ref > 1e-12 else 0.0
    passes = bool(np.isfinite(inf_est) and ratio <= tail_tol)

    inner = absz <= 0.5 * rmax
    envelope = {
        "c": float(r.values[inner].min()) if inner.any() else float(r.values.min()),
        "R": float(0.5 * rmax),
        "P": float(max(r.tail_exponent, Q_grid)),
        "tail_slope_ratio": ratio,
    }
    return RadiusCheck(passes, max(Q_grid, r.tail_exponent), inf_est, envelope)


def check_radius_condition(r: RadiusFunction, tail_tol: float = 1.5) -> RadiusCheck:
    """Audit ``inf_z ln r(z) / ln(2+|z|) > -inf`` and return the least ``Q``.

    ``Q`` is the least exponent with ``(2+|z|)**(-Q) <= r(z)`` everywhere. For a
    power radius both numbers are exact. For a tabulated radius they are exact
    for the cell-minimum interpolant, and ``passes`` additionally requires the
    decay across the outer half of the box to look like a power law: the
    slope of ``-ln r`` against ``ln(2+|z|)`` there, relative to the larger of
    ``Q`` on the grid and the declared tail exponent, must not exceed
    ``tail_tol``.
    """
    if isinstance(r, PowerRadius):
        Q = _power_radius_sup_exponent(r)
        return RadiusCheck(True, Q, -Q if Q else 0.0, {"kappa": r.kappa, "q": r.q})
    if isinstance(r, TabulatedRadius):
        return _tabulated_check(r, tail_tol)
    raise DomainError(f"unsupported radius function {type(r).__name__}")
