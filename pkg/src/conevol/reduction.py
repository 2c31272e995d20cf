"""Replace a symmetrized profile by an equal-volume, centred truncated cone.

Two frustums share the volume of the profile: ``K0`` keeps the bottom slice
and ``K1`` keeps the top slice. Interpolating the top radius between them
gives a one-parameter family ``s -> K_s`` of equal-volume frustums. Its
centroid changes sign on [0, 1], so bisection finds a centred member. That
member has larger end caps than the profile, which bounds the profile's
end masses by the frustum's.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from .symmetrization import SliceProfile, unit_ball_volume
from .truncated_cone import psi

MAX_ITER = 200
REL_TOL = 1e-13
CLAIM_TOL = 1e-9


class InvariantViolation(RuntimeError):
    """A claimed inequality failed by more than the tolerance."""


@dataclass(frozen=True)
class FrustumSpec:
    dim: int
    h_lo: float
    h_hi: float
    r_lo: float
    r_hi: float

    def __post_init__(self):
        if not self.h_lo < self.h_hi:
            raise ValueError("need h_lo < h_hi")
        if self.r_lo < 0 or self.r_hi < 0 or (self.r_lo == 0 and self.r_hi == 0):
            raise ValueError("radii must be nonnegative and not both zero")

    @property
    def height(self) -> float:
        return self.h_hi - self.h_lo

    def cap_areas(self) -> tuple[float, float]:
        w = unit_ball_volume(self.dim - 1)
        return w * self.r_lo ** (self.dim - 1), w * self.r_hi ** (self.dim - 1)


def _weights(f: FrustumSpec) -> list[float]:
    # Bernstein coefficients of rho(tau)^(n-1) for rho = r_lo (1 - tau) + r_hi tau
    m = f.dim - 1
    return [f.r_lo ** (m - k) * f.r_hi ** k for k in range(m + 1)]


def frustum_volume(f: FrustumSpec) -> float:
    return _volume(f.dim, f.height, f.r_lo, f.r_hi)


def _volume(n: int, H: float, a: float, b: float) -> float:
    return unit_ball_volume(n - 1) * H * sum(a ** (n - 1 - k) * b ** k for k in range(n)) / n


def centroid_u(f: FrustumSpec) -> float:
    w = _weights(f)
    frac = sum((k + 1) * wk for k, wk in enumerate(w)) / ((f.dim + 1) * sum(w))
    return f.h_lo + f.height * frac


def _solve_radius(vol, target: float) -> float:
    """Radius ``r >= 0`` with ``vol(r) == target`` for an increasing ``vol``."""
    g = lambda r: vol(r) - target
    if g(0.0) >= 0:
        if g(0.0) > REL_TOL * 10 * target:
            raise InvariantViolation("volume target is below the zero-radius frustum")
        return 0.0
    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
    return bisect(g, 0.0, hi, xtol=1e-300, rtol=REL_TOL, maxiter=MAX_ITER, disp=False)


@dataclass(frozen=True)
class EndFrustums:
    volume: float
    K0: FrustumSpec
    K1: FrustumSpec

    @property
    def R0(self) -> float:
        return self.K0.r_hi

    @property
    def R1(self) -> float:
        return self.K1.r_lo


def build_d0_d1(prof: SliceProfile) -> EndFrustums:
    V = prof.volume()
    if not V > 0:
        raise ValueError("profile volume must be positive")
    r = prof.radii
    lo, hi, n = prof.t_lo, prof.t_hi, prof.dim
    r_lo, r_hi = float(r[0]), float(r[-1])
    H = hi - lo
    R0 = _solve_radius(lambda x: _volume(n, H, r_lo, x), V)
    R1 = _solve_radius(lambda x: _volume(n, H, x, r_hi), V)
    return EndFrustums(V, FrustumSpec(n, lo, hi, r_lo, R0), FrustumSpec(n, lo, hi, R1, r_hi))


def family_member(prof: SliceProfile, s: float, ends: EndFrustums | None = None) -> FrustumSpec:
    if not 0.0 <= s <= 1.0:
        raise ValueError("family parameter s must lie in [0, 1]")
    ends = ends or build_d0_d1(prof)
    if s == 0.0:
        return ends.K0
    if s == 1.0:
        return ends.K1
    K0, K1 = ends.K0, ends.K1
    top = (1.0 - s) * K0.r_hi + s * K1.r_hi
    bottom = _solve_radius(lambda x: _volume(K0.dim, K0.height, x, top), ends.volume)
    return FrustumSpec(K0.dim, K0.h_lo, K0.h_hi, bottom, top)


@dataclass(frozen=True)
class Balanced:
    s_star: float
    frustum: FrustumSpec
    residual: float
    degenerate: bool
    c0: float
    c1: float
    ends: EndFrustums

    def __iter__(self):
        # unpacks as (s_star, frustum)
        return iter((self.s_star, self.frustum))


def find_balanced(prof: SliceProfile) -> Balanced:
    ends = build_d0_d1(prof)
    H = prof.height
    tol = CLAIM_TOL * H
    c0, c1 = centroid_u(ends.K0), centroid_u(ends.K1)
    if c0 < -tol or c1 > tol:
        raise InvariantViolation(
            f"end-frustum centroids out of order: c(K0).u={c0:.3e}, c(K1).u={c1:.3e} (tol {tol:.1e})")
    scale = max(ends.R0, ends.R1, ends.K0.r_lo, ends.K1.r_hi)
    if abs(ends.R0 - ends.K1.r_hi) <= REL_TOL * 10 * scale:
        K = family_member(prof, 0.5, ends)
        return Balanced(0.5, K, centroid_u(K), True, c0, c1, ends)
    if abs(c0) <= tol:
        s = 0.0
    elif abs(c1) <= tol:
        s = 1.0
    else:
        g = lambda s: centroid_u(family_member(prof, s, ends))
        s = bisect(g, 0.0, 1.0, xtol=1e-16, rtol=REL_TOL, maxiter=MAX_ITER, disp=False)
    K = family_member(prof, s, ends)
    res = centroid_u(K)
    if abs(res) > tol:
        raise InvariantViolation(f"bisection left |c.u| = {abs(res):.3e} > {tol:.1e}")
    return Balanced(s, K, res, False, c0, c1, ends)


def frustum_xy(f: FrustumSpec) -> tuple[float, float]:
    """End-cap cone-volume masses over volume, measured from the frustum's own centroid."""
    V = frustum_volume(f)
    c = centroid_u(f)
    a_lo, a_hi = f.cap_areas()
    return (f.h_hi - c) * a_hi / (f.dim * V), (c - f.h_lo) * a_lo / (f.dim * V)


@dataclass(frozen=True)
class Comparison:
    x_profile: float
    y_profile: float
    x_frustum: float
    y_frustum: float
    psi_profile: float
    psi_frustum: float
    x_ok: bool
    y_ok: bool
    psi_ok: bool

    @property
    def ok(self) -> bool:
        return self.x_ok and self.y_ok and self.psi_ok

    def to_dict(self) -> dict:
        return dict(vars(self), ok=self.ok)


def compare(prof: SliceProfile, balanced, tol: float = CLAIM_TOL) -> Comparison:
    f = balanced.frustum if isinstance(balanced, Balanced) else balanced
    n = prof.dim
    V = prof.volume()
    xp = prof.t_hi * prof.areas[-1] / (n * V)
    yp = -prof.t_lo * prof.areas[0] / (n * V)
    xf, yf = frustum_xy(f)
    pp, pf = psi(xp, yp, n), psi(xf, yf, n)
    return Comparison(float(xp), float(yp), xf, yf, pp, pf,
                      xp <= xf + tol, yp <= yf + tol, pp <= pf + tol)


def frustum_ratio(f: FrustumSpec) -> float:
    """Big-to-small radius ratio, ``inf`` for a cone."""
    lo, hi = sorted((f.r_lo, f.r_hi))
    return math.inf if lo == 0 else hi / lo
