"""Section-area profiles and Schwarz symmetrization about an axis.

The symmetrized body is never meshed. Each slice ``{x . u = t}`` is replaced
by a centred (n-1)-ball of the same area, so the profile ``A(t)`` carries
everything downstream code needs.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.integrate import simpson

from .measures import cone_volume_measure, mass_at
from .polytope import Polytope, check_unit

DEFAULT_RESOLUTION = 2048
MIN_RESOLUTION = 16
CENTER_TOL = 1e-9


class PreconditionError(ValueError):
    """The body violates a hypothesis (for instance it is not centred)."""


def unit_ball_volume(k: int) -> float:
    if int(k) != k or k < 1:
        raise ValueError(f"ball dimension must be an integer >= 1, got {k}")
    return math.pi ** (k / 2) / math.gamma(k / 2 + 1)


@dataclass(frozen=True, eq=False)
class SliceProfile:
    """Samples of ``A(t)`` on ``[t_lo, t_hi]``, the section area along ``direction``.

    ``breakpoints`` are the levels where ``A`` may fail to be smooth. They
    must be sample points; quadrature treats each gap between consecutive
    breakpoints as its own Simpson panel.
    """
    dim: int
    direction: np.ndarray
    ts: np.ndarray
    areas: np.ndarray
    breakpoints: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        ts, areas = self.ts, self.areas
        if ts.ndim != 1 or ts.shape != areas.shape or len(ts) < 3:
            raise ValueError("need matching 1-d arrays with at least three samples")
        if not np.all(np.diff(ts) > 0):
            raise ValueError("sample levels must be strictly increasing")
        if (areas < 0).any() or not np.isfinite(areas).all():
            raise ValueError("areas must be finite and nonnegative")
        bp = np.unique(np.concatenate([[ts[0], ts[-1]], self.breakpoints]))
        idx = np.searchsorted(ts, bp)
        if (idx >= len(ts)).any() or not np.allclose(ts[idx], bp, rtol=0, atol=0):
            raise ValueError("every breakpoint must coincide with a sample level")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "_panels", idx)

    @property
    def t_lo(self) -> float:
        return float(self.ts[0])

    @property
    def t_hi(self) -> float:
        return float(self.ts[-1])

    @property
    def height(self) -> float:
        return self.t_hi - self.t_lo

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.ts.tolist(), self.areas.tolist()))

    @property
    def radii(self) -> np.ndarray:
        return (self.areas / unit_ball_volume(self.dim - 1)) ** (1.0 / (self.dim - 1))

    def _integrate(self, values: np.ndarray) -> float:
        total = 0.0
        p = self._panels
        for a, b in zip(p[:-1], p[1:]):
            total += simpson(values[a:b + 1], x=self.ts[a:b + 1])
        return float(total)

    def volume(self) -> float:
        return self._integrate(self.areas)

    def moment(self) -> float:
        """``integral of t A(t) dt``."""
        return self._integrate(self.ts * self.areas)

    def centroid_u(self) -> float:
        return self.moment() / self.volume()

    def area_at(self, t: float) -> float:
        return float(np.interp(t, self.ts, self.areas))

    def rows(self) -> list[tuple[float, float, float]]:
        return list(zip(self.ts.tolist(), self.areas.tolist(), self.radii.tolist()))

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "area", "radius"])
        for row in self.rows():
            w.writerow([repr(float(v)) for v in row])


def _panel_grid(breaks: np.ndarray, resolution: int) -> np.ndarray:
    # uniform nodes with an even number of steps inside every breakpoint gap,
    # so composite Simpson is exact on each polynomial piece up to degree 3
    span = breaks[-1] - breaks[0]
    parts = [breaks[:1]]
    for a, b in zip(breaks[:-1], breaks[1:]):
        m = max(2, 2 * math.ceil(resolution * (b - a) / (2 * span)))
        parts.append(np.linspace(a, b, m + 1)[1:])
    return np.concatenate(parts)


def _merge_levels(levels: np.ndarray, tol: float) -> np.ndarray:
    levels = np.sort(levels)
    keep = [levels[0]]
    for v in levels[1:]:
        if v - keep[-1] > tol:
            keep.append(v)
    keep[-1] = levels[-1]
    return np.asarray(keep)


def profile(P: Polytope, u, resolution: int = DEFAULT_RESOLUTION) -> SliceProfile:
    """Sample the section areas of ``P`` along ``u``, refining at every vertex level."""
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {MIN_RESOLUTION}")
    u = check_unit(u, P.dim)
    levels = P.vertices @ u
    breaks = _merge_levels(levels, 1e-9 * max(1.0, P.diameter))
    ts = _panel_grid(breaks, resolution)
    areas = P.slice_areas(u, ts)
    return SliceProfile(P.dim, u, ts, areas, breaks)


def profile_from_function(dim: int, area_fn: Callable[[np.ndarray], np.ndarray],
                          t_lo: float, t_hi: float, resolution: int = DEFAULT_RESOLUTION,
                          breakpoints: Sequence[float] = (), direction=None) -> SliceProfile:
    """Profile of a body of revolution given ``A(t)`` directly (no polytope behind it)."""
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {MIN_RESOLUTION}")
    if not t_lo < t_hi:
        raise ValueError("need t_lo < t_hi")
    inner = [b for b in breakpoints if t_lo < b < t_hi]
    breaks = np.unique(np.array([t_lo, *inner, t_hi], dtype=np.float64))
    ts = _panel_grid(breaks, resolution)
    areas = np.clip(np.asarray(area_fn(ts), dtype=np.float64), 0.0, None)
    if direction is None:
        direction = np.eye(dim)[-1]
    return SliceProfile(dim, check_unit(direction, dim), ts, areas, breaks)


def schwarz_radius(prof: SliceProfile, t: float) -> float:
    """Radius of the symmetrized slice at level ``t`` (areas interpolated linearly)."""
    slack = 1e-12 * max(1.0, abs(prof.t_lo), abs(prof.t_hi))
    if not prof.t_lo - slack <= t <= prof.t_hi + slack:
        raise ValueError(f"t={t} outside [{prof.t_lo}, {prof.t_hi}]")
    A = prof.area_at(min(max(t, prof.t_lo), prof.t_hi))
    return (A / unit_ball_volume(prof.dim - 1)) ** (1.0 / (prof.dim - 1))


@dataclass(frozen=True)
class Deviation:
    profile_value: float
    body_value: float
    abs_dev: float
    rel_dev: float


def _dev(a: float, b: float, scale: float) -> Deviation:
    a, b = float(a), float(b)
    d = abs(a - b)
    return Deviation(a, b, d, d / scale if scale > 0 else d)


@dataclass(frozen=True)
class Prop1Report:
    """Volume, axial centroid and endpoint masses: symmetrized profile against the body."""
    volume: Deviation
    centroid: Deviation     # relative deviation is measured against the diameter
    mass_plus: Deviation
    mass_minus: Deviation

    @property
    def max_rel(self) -> float:
        return max(self.volume.rel_dev, self.centroid.rel_dev,
                   self.mass_plus.rel_dev, self.mass_minus.rel_dev)

    def to_dict(self) -> dict:
        return {k: vars(getattr(self, k)) for k in ("volume", "centroid", "mass_plus", "mass_minus")}


def require_centered(P: Polytope, tol: float = CENTER_TOL) -> None:
    off = float(np.linalg.norm(P.centroid))
    if off > tol * P.diameter:
        raise PreconditionError(
            f"centroid is {off:.3e} from the origin (allowed {tol * P.diameter:.3e}); "
            "translate the body to its centroid first")


def verify_prop1(P: Polytope, u, resolution: int = DEFAULT_RESOLUTION,
                 prof: SliceProfile | None = None) -> Prop1Report:
    """Compare the symmetrized profile with ``P``; pass ``prof`` to reuse a profile along ``u``."""
    require_centered(P)
    u = check_unit(u, P.dim)
    if prof is None:
        prof = profile(P, u, resolution)
    V = P.volume
    n = P.dim
    mu = cone_volume_measure(P)
    vol = _dev(prof.volume(), V, V)
    c = prof.moment() / V
    cen = Deviation(c, 0.0, abs(c), abs(c) / P.diameter)
    plus = prof.t_hi * prof.areas[-1] / n
    minus = -prof.t_lo * prof.areas[0] / n
    m_plus, m_minus = mass_at(mu, u), mass_at(mu, -u)
    # endpoint masses are compared relative to themselves when a facet is there
    return Prop1Report(vol, cen, _dev(plus, m_plus, m_plus or V), _dev(minus, m_minus, m_minus or V))


class ConcavityDefect(NamedTuple):
    concavity: float
    linearity: float


def concavity_defect(prof: SliceProfile) -> ConcavityDefect:
    """How far ``r(t) = A(t)^(1/(n-1))`` (up to a constant) is from concave and from affine.

    ``concavity`` is the largest amount by which a sample falls below the chord
    through its two neighbours, divided by ``max r``. It is zero exactly when
    the sampled ``r`` is concave. ``linearity`` is the largest deviation of
    ``r`` from the chord through the two endpoints, divided by ``max r``.
    """
    r = prof.radii
    rmax = float(r.max())
    if rmax == 0:
        return ConcavityDefect(0.0, 0.0)
    t = prof.ts
    h1 = t[1:-1] - t[:-2]
    h2 = t[2:] - t[1:-1]
    chord = (h2 * r[:-2] + h1 * r[2:]) / (h1 + h2)
    conc = float(max(0.0, (chord - r[1:-1]).max()) / rmax)
    lam = (t - t[0]) / (t[-1] - t[0])
    line = (1 - lam) * r[0] + lam * r[-1]
    return ConcavityDefect(conc, float(np.abs(r - line).max() / rmax))
