"""Closed forms for right truncated cones parameterised by the base-radius ratio t.

``t = 1`` is the right cylinder and ``t = inf`` the right circular cone; both
are legal parameter values. Every rational function of t is evaluated in one
of two overflow/cancellation-safe forms:

* ``t <= 2``: expand in ``s = t - 1``. The numerators of x and y and the
  factors of ``t^n - 1`` have nonnegative binomial coefficients in s, so no
  cancellation occurs and ``t = 1`` is exact;
* ``t > 2``: divide numerator and denominator by the top power of t and work
  in ``1/t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .exact_poly import build_FG

SERIES_SWITCH = 2.0


@dataclass(frozen=True)
class TruncatedConeParams:
    n: int
    ratio: float

    def __post_init__(self):
        _validate(self.n, self.ratio)


def _validate(n: int, t: float) -> None:
    if int(n) != n or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    if math.isnan(t) or t < 1:
        raise ValueError(f"radius ratio must satisfy t >= 1 (or inf), got {t}")


def _horner(coeffs, s: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


@lru_cache(maxsize=None)
def _series(n: int) -> dict[str, tuple[float, ...]]:
    # coefficients in s = t - 1, low order first, common s-powers removed
    C = math.comb
    tn1 = tuple(float(C(n, k)) for k in range(1, n + 1))              # (t^n - 1) / s
    xnum = tuple(float(C(n + 1, k)) for k in range(2, n + 2))         # (t^(n+1)-(n+1)t+n) / s^2
    ynum = tuple(float(n * C(n + 1, k) - (n + 1) * C(n, k)) for k in range(2, n + 2))
    bnum = tuple(float(n * C(n + 1, k) - 2 * C(n, k) - n * C(n - 1, k)) for k in range(2, n + 2))
    return {"tn1": tn1, "xnum": xnum, "ynum": ynum, "bnum": bnum}


def xy_of_ratio(n: int, t: float) -> tuple[float, float]:
    """Normalised cone-volume masses (x, y) of the big and small base of a centred frustum."""
    _validate(n, t)
    if math.isinf(t):
        return 1.0 / (n + 1), 0.0
    if t <= SERIES_SWITCH:
        s = t - 1.0
        sr = _series(n)
        den = (n + 1) * _horner(sr["tn1"], s) ** 2
        x = t ** (n - 1) * _horner(sr["xnum"], s) / den
        y = _horner(sr["ynum"], s) / den
        return x, y
    w = 1.0 / t
    wn = w ** n
    den = (n + 1) * (1.0 - wn) ** 2
    x = (1.0 - (n + 1) * wn + n * wn * w) / den
    y = (n * w ** (n - 1) - (n + 1) * wn + wn * wn) / den
    return x, y


def volume_and_centroid(n: int, t: float) -> tuple[float, float]:
    """``(V / omega_{n-1}, c . u)`` for the frustum between heights 1 and t with radius = height."""
    _validate(n, t)
    if t == 1 or math.isinf(t):
        raise ValueError("volume/centroid need 1 < t < inf (degenerate slab or unbounded cone)")
    lt = math.log(t)
    vol = math.expm1(n * lt) / n
    c = n * math.expm1((n + 1) * lt) / ((n + 1) * math.expm1(n * lt))
    return vol, c


def psi(x: float, y: float, n: int) -> float:
    return n * (x + y) + (n + 1) ** (n - 1) * abs(x - y) ** n


def psi_gradient(x: float, y: float, n: int) -> tuple[float, float]:
    d = x - y
    if d == 0:
        return float(n), float(n)
    g = n * (n + 1) ** (n - 1) * abs(d) ** (n - 1) * math.copysign(1.0, d)
    return n + g, n - g


@dataclass(frozen=True)
class RangeReport:
    n: int
    t: float
    x: float
    y: float
    x_slack: float
    y_slack: float
    sum_slack: float

    @property
    def x_ok(self) -> bool:
        return self.x_slack >= -1e-12

    @property
    def y_ok(self) -> bool:
        return self.y_slack >= -1e-12

    @property
    def sum_ok(self) -> bool:
        return self.sum_slack >= -1e-12

    @property
    def ok(self) -> bool:
        return self.x_ok and self.y_ok and self.sum_ok


def range_check(n: int, t: float) -> RangeReport:
    x, y = xy_of_ratio(n, t)
    return RangeReport(n, t, x, y, 1.0 / (n + 1) - x, 1.0 / (n + 1) - y, 1.0 / n - (x + y))


@lru_cache(maxsize=None)
def _fg_series(n: int) -> tuple[tuple[float, ...], tuple[float, ...], int]:
    FG = build_FG(n)
    F1 = FG["F"].taylor_shift(1).coeffs
    G1 = FG["G"].taylor_shift(1).coeffs
    a = next(i for i, c in enumerate(F1) if c)
    b = next(i for i, c in enumerate(G1) if c)
    return tuple(float(c) for c in F1[a:]), tuple(float(c) for c in G1[b:]), a - b


def key_ratio(n: int, t: float) -> float:
    """``F(t) / G(t)``; identically 1 for n = 2 and at least 1 for n >= 3."""
    _validate(n, t)
    if t <= 1:
        raise ValueError("key ratio is defined for t > 1 only (0/0 at t = 1)")
    if math.isinf(t):
        return 1.0
    if t <= SERIES_SWITCH:
        f, g, shift = _fg_series(n)
        s = t - 1.0
        return s ** shift * _horner(f, s) / _horner(g, s)
    w = 1.0 / t
    wn = w ** n
    F = (1.0 - wn) ** (2 * n) - n * n * (1.0 - w) ** 2 * w ** (n - 1) * (1.0 - wn) ** (2 * n - 2)
    G = (1.0 - n * w ** (n - 1) + n * wn * w - wn * wn) ** n
    return F / G


def _key_ratio_at_one(n: int) -> float:
    f, g, shift = _fg_series(n)
    if shift < 0:
        return math.inf
    return f[0] / g[0] if shift == 0 else 0.0


def ab_form(n: int, t: float) -> tuple[float, float, float]:
    """``(A, B, nA + (1-B)^n)``; the last equals ``(n+1) psi(x, y) - n``."""
    _validate(n, t)
    if t <= 1:
        raise ValueError("A/B form is defined for t > 1")
    if math.isinf(t):
        return 0.0, 0.0, 1.0
    if t <= SERIES_SWITCH:
        s = t - 1.0
        sr = _series(n)
        den = _horner(sr["tn1"], s) ** 2
        A = n * t ** (n - 1) / den
        B = _horner(sr["bnum"], s) / den
    else:
        w = 1.0 / t
        wn = w ** n
        den = (1.0 - wn) ** 2
        A = n * (1.0 - w) ** 2 * w ** (n - 1) / den
        B = (n * w ** (n - 1) - 2 * wn - n * wn * w + 2 * wn * wn) / den
    return A, B, n * A + (1.0 - B) ** n


def cone_table(n_list, t_grid) -> list[dict]:
    """Rows ``n, t, x, y, psi, key_ratio`` plus the three range slacks.

    Rows for ``t = 1`` and ``t = inf`` are always included. At ``t = 1`` the
    key ratio is reported as its limit from the right: 1 for n = 2 and
    ``inf`` for n >= 3, where F vanishes to lower order than G.
    """
    rows = []
    for n in n_list:
        ts = [1.0] + sorted(float(t) for t in t_grid if 1 < t < math.inf) + [math.inf]
        for t in ts:
            rr = range_check(n, t)
            kr = key_ratio(n, t) if t > 1 else _key_ratio_at_one(n)
            rows.append({
                "n": n, "t": t, "x": rr.x, "y": rr.y, "psi": psi(rr.x, rr.y, n),
                "key_ratio": kr, "x_bound_slack": rr.x_slack,
                "y_bound_slack": rr.y_slack, "sum_bound_slack": rr.sum_slack,
            })
    return rows
