import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from conevol import truncated_cone as tc
from conevol.exact_poly import build_FG


def frustum_oracle(n, t):
    """(x, y) of the frustum 1 <= h <= t with radius h, by direct quadrature."""
    V = quad(lambda h: h ** (n - 1), 1, t, epsabs=0, epsrel=1e-13)[0]
    c = quad(lambda h: h ** n, 1, t, epsabs=0, epsrel=1e-13)[0] / V
    # omega_{n-1} cancels between cap areas and volume
    return (t - c) * t ** (n - 1) / (n * V), (c - 1) / (n * V)


def exact_xy(n, t: Fraction):
    d = (n + 1) * (t**n - 1) ** 2
    return ((t ** (2 * n) - (n + 1) * t**n + n * t ** (n - 1)) / d,
            (n * t ** (n + 1) - (n + 1) * t**n + 1) / d)


def test_known_values():
    x, y = tc.xy_of_ratio(3, 2.0)
    assert x == pytest.approx(11 / 49, abs=1e-16) and y == pytest.approx(17 / 196, abs=1e-16)
    assert tc.psi(x, y, 3) == pytest.approx(183 / 196 + 16 * (27 / 196) ** 3, rel=1e-15)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8])
def test_limits(n):
    assert tc.xy_of_ratio(n, 1.0) == pytest.approx((1 / (2 * n), 1 / (2 * n)), abs=1e-16)
    assert tc.xy_of_ratio(n, math.inf) == (1 / (n + 1), 0.0)
    x, y = tc.xy_of_ratio(n, 1e8)
    assert x == pytest.approx(1 / (n + 1), abs=1e-7) and y == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("t", [1.1, 2.0, 5.0, 20.0])
def test_matches_quadrature_oracle(n, t):
    x, y = tc.xy_of_ratio(n, t)
    xo, yo = frustum_oracle(n, t)
    assert abs(x - xo) <= 1e-9 and abs(y - yo) <= 1e-9


@given(st.integers(2, 12), st.fractions(min_value=1, max_value=50, max_denominator=1000))
def test_matches_exact_rationals(n, t):
    if t == 1:
        return
    xe, ye = exact_xy(n, t)
    x, y = tc.xy_of_ratio(n, float(t))
    assert x == pytest.approx(float(xe), rel=1e-12, abs=1e-15)
    assert y == pytest.approx(float(ye), rel=1e-11, abs=1e-15)


@pytest.mark.parametrize("n", [3, 6])
def test_near_one_no_cancellation(n):
    # the s-series keeps full precision where the raw formula is 0/0
    for s in (1e-4, 1e-8, 1e-12):
        t = Fraction(1) + Fraction(s)
        xe, ye = exact_xy(n, t)
        x, y = tc.xy_of_ratio(n, float(t))
        assert x == pytest.approx(float(xe), rel=1e-12)
        assert y == pytest.approx(float(ye), rel=1e-12)


def test_continuity_across_series_switch():
    for n in (3, 7):
        a = tc.xy_of_ratio(n, np.nextafter(2.0, 0))
        b = tc.xy_of_ratio(n, np.nextafter(2.0, 3))
        assert a == pytest.approx(b, rel=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4, 10])
def test_range_bounds_hold(n):
    for t in np.geomspace(1.0, 1e6, 200):
        r = tc.range_check(n, float(t))
        assert r.ok, r
        assert tc.psi(r.x, r.y, n) <= 1 + 1e-12


def test_psi_strict_inside_for_n3():
    for t in np.geomspace(1.01, 100, 50):
        x, y = tc.xy_of_ratio(3, float(t))
        assert tc.psi(x, y, 3) < 1


def test_n2_psi_is_one():
    for t in (1.0, 1.5, 2.0, 10.0, math.inf):
        x, y = tc.xy_of_ratio(2, t)
        assert tc.psi(x, y, 2) == pytest.approx(1.0, abs=1e-14)


def test_volume_and_centroid():
    V, c = tc.volume_and_centroid(3, 2.0)
    assert V == pytest.approx(7 / 3) and c == pytest.approx(45 / 28)
    with pytest.raises(ValueError):
        tc.volume_and_centroid(3, 1.0)
    with pytest.raises(ValueError):
        tc.volume_and_centroid(3, math.inf)


def test_key_ratio_values():
    assert tc.key_ratio(3, 2.0) == pytest.approx(31213 / 19683, rel=1e-14)
    assert tc.key_ratio(3, math.inf) == 1.0
    assert tc.key_ratio(3, 1e12) == pytest.approx(1.0, abs=1e-10)
    for t in (1.001, 1.5, 2.0, 3.0, 1e3):
        assert tc.key_ratio(2, t) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        tc.key_ratio(3, 1.0)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_key_ratio_against_exact(n):
    FG = build_FG(n)
    for t in (Fraction(11, 10), Fraction(3, 2), Fraction(2), Fraction(7, 2), Fraction(40)):
        exact = FG["F"](t) / FG["G"](t)
        assert tc.key_ratio(n, float(t)) == pytest.approx(float(exact), rel=1e-11)


@pytest.mark.parametrize("n", [3, 5, 10])
def test_key_ratio_at_least_one(n):
    for t in np.geomspace(1.0001, 1e6, 300):
        assert tc.key_ratio(n, float(t)) >= 1 - 1e-12


def test_ab_form():
    A, B, lhs = tc.ab_form(3, 2.0)
    assert A == pytest.approx(12 / 49) and B == pytest.approx(22 / 49)
    assert lhs == pytest.approx(36 / 49 + (27 / 49) ** 3, rel=1e-14)
    with pytest.raises(ValueError):
        tc.ab_form(3, 1.0)


@pytest.mark.parametrize("n", [2, 3, 4, 7])
def test_ab_form_is_affine_in_psi(n):
    # nA + (1-B)^n = (n+1) psi(x, y) - n
    for t in (1.01, 1.5, 2.0, 2.5, 9.0, 1e4):
        x, y = tc.xy_of_ratio(n, t)
        assert tc.ab_form(n, t)[2] == pytest.approx((n + 1) * tc.psi(x, y, n) - n, abs=1e-12)
        assert tc.ab_form(n, t)[2] <= 1 + 1e-12


@pytest.mark.parametrize("n", [3, 4, 5])
def test_gradient_finite_differences(n):
    h = 1e-6
    grid = np.linspace(0, 1 / (n + 1), 20)
    for x in grid:
        for y in grid:
            gx, gy = tc.psi_gradient(x, y, n)
            fx = (tc.psi(x + h, y, n) - tc.psi(x - h, y, n)) / (2 * h)
            fy = (tc.psi(x, y + h, n) - tc.psi(x, y - h, n)) / (2 * h)
            # relative to |grad psi| (>= sqrt(2) n since gx + gy = 2n); single
            # components can vanish inside the box, e.g. gy at (1/5, 0) for n = 4
            scale = math.hypot(gx, gy)
            assert abs(gx - fx) <= 1e-6 * scale and abs(gy - fy) <= 1e-6 * scale


def test_gradient_on_diagonal():
    assert tc.psi_gradient(0.1, 0.1, 3) == (3.0, 3.0)


def test_params_validation():
    tc.TruncatedConeParams(3, math.inf)
    for bad in [(1, 2.0), (3, 0.5), (3, math.nan), (2.5, 2.0)]:
        with pytest.raises(ValueError):
            tc.TruncatedConeParams(*bad)


def test_cone_table_rows():
    rows = tc.cone_table([2, 3], [2.0])
    assert [(r["n"], r["t"]) for r in rows] == [(2, 1.0), (2, 2.0), (2, math.inf),
                                                (3, 1.0), (3, 2.0), (3, math.inf)]
    r32 = rows[4]
    assert r32["x"] == pytest.approx(11 / 49) and r32["psi"] == pytest.approx(0.97549915426, rel=1e-10)
    assert all(r["psi"] == pytest.approx(1.0) for r in rows if r["n"] == 2 or r["t"] in (1.0, math.inf))
    assert rows[3]["key_ratio"] == math.inf and rows[0]["key_ratio"] == 1.0
