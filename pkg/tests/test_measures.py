import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conevol import polytope as pc
from conevol.measures import (DiscreteMeasure, DomainError, cone_volume_measure,
                              lp_surface_measure, mass_at, subspace_concentration,
                              surface_area_measure)

from conftest import random_body


def test_cube_measures(cube3):
    sam = surface_area_measure(cube3)
    assert len(sam) == 6 and sam.total == pytest.approx(24.0)
    cv = cone_volume_measure(cube3)
    np.testing.assert_allclose(cv.masses, 4 / 3)
    assert cv.total == pytest.approx(8.0)


def test_tetra_lp_zero_is_n_times_cone_volume(tetra):
    lp0 = lp_surface_measure(tetra, 0.0)
    cv = cone_volume_measure(tetra)
    np.testing.assert_allclose(lp0.masses, 3 * cv.masses, rtol=1e-14)
    assert cv.total == pytest.approx(tetra.volume, rel=1e-14)
    # regular simplex: every facet carries a quarter of the volume
    np.testing.assert_allclose(cv.masses, tetra.volume / 4, rtol=1e-13)


def test_lp_one_is_surface_measure_even_off_center(cube3):
    P = cube3.translate([5.0, 0, 0])
    np.testing.assert_array_equal(lp_surface_measure(P, 1.0).masses, surface_area_measure(P).masses)


def test_off_center_domain_errors(cube3):
    P = cube3.translate([1.0, 0, 0])       # origin on the boundary
    with pytest.raises(DomainError):
        cone_volume_measure(P)
    with pytest.raises(DomainError):
        lp_surface_measure(P, 2.0)


def test_lp_closed_form(cube3):
    P = cube3.translate([0.5, 0, 0])
    lp = lp_surface_measure(P, 3.0)
    h = P.offsets
    np.testing.assert_allclose(lp.masses, h ** -2 * 4.0)


@given(st.integers(0, 10**6), st.sampled_from([3, 4, 5]))
def test_minkowski_closure_and_cone_volume_total(seed, dim):
    P = random_body(dim, seed)
    sam = surface_area_measure(P)
    assert sam.closure_residual() <= 1e-10 * sam.total
    assert cone_volume_measure(P).total == pytest.approx(P.volume, rel=1e-11)


def test_surface_area_matches_scipy_hull():
    from scipy.spatial import ConvexHull
    pts = np.random.default_rng(5).standard_normal((15, 3))
    P = pc.from_vertices(3, pts)
    assert surface_area_measure(P).total == pytest.approx(ConvexHull(pts).area, rel=1e-12)


def test_mass_at(cube3):
    cv = cone_volume_measure(cube3)
    assert mass_at(cv, [0, 0, 1.0]) == pytest.approx(4 / 3)
    assert mass_at(cv, np.ones(3) / math.sqrt(3)) == 0.0
    tiny = np.array([1e-10, 0, 1.0])
    assert mass_at(cv, tiny / np.linalg.norm(tiny)) == pytest.approx(4 / 3)


def test_mass_at_ambiguous():
    mu = DiscreteMeasure(2, np.array([[1.0, 0.0], [1.0, 1e-12]]), np.array([1.0, 2.0]))
    with pytest.raises(RuntimeError):
        mass_at(mu, [1.0, 0.0])


def test_measure_validation():
    with pytest.raises(ValueError):
        DiscreteMeasure(2, np.array([[1.0, 0.0]]), np.array([0.0]))
    with pytest.raises(ValueError):
        DiscreteMeasure(2, np.array([[1.0, 0.0]]), np.array([1.0, 2.0]))


def test_subspace_concentration_cube(cube3):
    cv = cone_volume_measure(cube3)
    line = subspace_concentration(cv, [[0, 0, 1.0]])
    assert line.ratio == pytest.approx(1 / 3) and line.bound == pytest.approx(1 / 3) and line.ok
    plane = subspace_concentration(cv, [[1.0, 0, 0], [0, 1.0, 0]])
    assert plane.ratio == pytest.approx(2 / 3) and plane.ok


def test_subspace_concentration_errors(cube3):
    cv = cone_volume_measure(cube3)
    with pytest.raises(ValueError):
        subspace_concentration(cv, [[1.0, 0, 0], [2.0, 0, 0]])
    with pytest.raises(ValueError):
        subspace_concentration(cv, np.eye(3))


def test_scaled_measure(cube3):
    assert cone_volume_measure(cube3).scaled(0.5).total == pytest.approx(4.0)
