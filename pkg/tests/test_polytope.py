import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from conevol import polytope as pc
from conevol.polytope import PolytopeError

from conftest import random_body, random_rotation


def cube_halfspaces(dim=3, half=1.0):
    out = []
    for i in range(dim):
        for s in (1.0, -1.0):
            nrm = np.zeros(dim)
            nrm[i] = s
            out.append((nrm, half))
    return out


# -- construction ------------------------------------------------------------------

def test_cube_from_halfspaces(backend):
    C = pc.from_halfspaces(3, cube_halfspaces())
    assert len(C.vertices) == 8 and len(C.facets) == 6
    assert C.volume == pytest.approx(8.0, rel=1e-14)
    C.check_invariants()


def test_redundant_halfspace_dropped(backend):
    hs = cube_halfspaces() + [(np.array([1.0, 0, 0]), 2.0)]
    C = pc.from_halfspaces(3, hs)
    assert len(C.facets) == 6


def test_tetrahedron_from_halfspaces_matches_vertices(tetra, backend):
    T = pc.from_halfspaces(3, [(f.normal, f.offset) for f in tetra.facets])
    assert len(T.vertices) == 4 and len(T.facets) == 4
    # oracle: each vertex solves the 3x3 system of the three facets missing it
    for v in T.vertices:
        assert np.min(np.linalg.norm(tetra.vertices - v, axis=1)) < 1e-12


def test_non_unit_normals_are_rescaled():
    hs = [(2 * n, 2 * h) for n, h in cube_halfspaces()]
    assert pc.from_halfspaces(3, hs).volume == pytest.approx(8.0)


def test_dict_halfspaces_accepted():
    hs = [{"normal": list(n), "offset": h} for n, h in cube_halfspaces()]
    assert pc.from_halfspaces(3, hs).volume == pytest.approx(8.0)


def test_unbounded_and_empty_rejected():
    with pytest.raises(PolytopeError, match="unbounded"):
        pc.from_halfspaces(3, cube_halfspaces()[:5] + [(np.array([1.0, 1, 0]), 1.0)])
    with pytest.raises(PolytopeError):
        hs = cube_halfspaces() + [(np.array([1.0, 0, 0]), -2.0)]
        pc.from_halfspaces(3, hs)


def test_from_vertices_drops_interior_points(backend):
    pts = np.vstack([pc.cube(3).vertices, np.zeros(3), [[0.5, 0.2, -0.1]]])
    C = pc.from_vertices(3, pts)
    assert len(C.vertices) == 8 and len(C.facets) == 6


def test_from_vertices_simplex_facets():
    rng = np.random.default_rng(3)
    P = pc.from_vertices(3, rng.standard_normal((4, 3)))
    assert len(P.facets) == 4
    for f in P.facets:
        others = [i for i in range(4) if i not in f.vertex_indices]
        assert len(others) == 1 and P.vertices[others[0]] @ f.normal < f.offset


def test_degenerate_points_rejected():
    pts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]], dtype=float)
    with pytest.raises(PolytopeError, match="affine rank 2"):
        pc.from_vertices(3, pts)


def test_too_many_points_rejected():
    with pytest.raises(PolytopeError):
        pc.from_vertices(3, np.random.default_rng(0).standard_normal((65, 3)))


# -- volume and centroid -----------------------------------------------------------

@pytest.mark.parametrize("dim", [3, 4, 5, 6])
def test_volume_matches_scipy_hull(dim, backend):
    rng = np.random.default_rng(dim)
    pts = rng.standard_normal((3 * dim, dim))
    P = pc.from_vertices(dim, pts)
    assert P.volume == pytest.approx(ConvexHull(pts).volume, rel=1e-10)
    assert len(P.vertices) == len(ConvexHull(pts).vertices)


def test_volume_monte_carlo():
    rng = np.random.default_rng(11)
    P = pc.from_vertices(3, rng.standard_normal((20, 3)))
    lo, hi = P.vertices.min(axis=0), P.vertices.max(axis=0)
    N = 10**6
    X = rng.uniform(lo, hi, (N, 3))
    hit = (X @ P.normals.T <= P.offsets).all(axis=1)
    box = float(np.prod(hi - lo))
    p = hit.mean()
    est, sigma = p * box, box * math.sqrt(p * (1 - p) / N)
    assert abs(P.volume - est) <= 3 * sigma


def test_canonical_volumes_and_centroids():
    assert pc.cube(3).volume == pytest.approx(8.0)
    S = pc.standard_simplex(3)
    assert S.volume == pytest.approx(1 / 6)
    np.testing.assert_allclose(S.centroid, [0.25] * 3, atol=1e-15)
    shifted = pc.cube(3).translate([1.0, 1.0, 1.0])
    np.testing.assert_allclose(shifted.centroid, [1.0, 1.0, 1.0], atol=1e-14)


def test_polygonal_frustum_centroid(backend):
    # 24-gon sections between heights 1 and 2 with radius = height: every section
    # is a similar polygon, so the axial centroid equals the round frustum's 45/28
    k = 24
    ang = 2 * np.pi * np.arange(k) / k
    ring = np.c_[np.cos(ang), np.sin(ang)]
    pts = np.vstack([np.c_[ring, np.ones(k)], np.c_[2 * ring, 2 * np.ones(k)]])
    P = pc.from_vertices(3, pts)
    assert P.centroid[2] == pytest.approx(45 / 28, rel=1e-12)
    assert P.volume == pytest.approx(ConvexHull(pts).volume, rel=1e-12)


def test_translate_to_centroid_centers(backend):
    P = random_body(4, 7)
    assert np.linalg.norm(P.centroid) <= 1e-12 * P.diameter


# -- support -----------------------------------------------------------------------

def test_support_values(cube3, tetra):
    assert cube3.support([1.0, 0, 0]) == 1.0
    assert cube3.support(np.ones(3) / math.sqrt(3)) == pytest.approx(math.sqrt(3))
    for f in tetra.facets:
        assert tetra.support(f.normal) == pytest.approx(f.offset, abs=1e-14)
        assert tetra.support(f.normal) == max(v @ f.normal for v in tetra.vertices)


def test_non_unit_direction_rejected(cube3):
    with pytest.raises(ValueError):
        cube3.support([1.0, 1.0, 0])


# -- slices ------------------------------------------------------------------------

def hull_slice_oracle(P, u, t):
    """Edge-intersection points projected into the plane, then a scipy hull."""
    V = P.vertices
    lv = V @ u
    pts = [V[i] for i in range(len(V)) if abs(lv[i] - t) < 1e-12]
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            if (lv[i] - t) * (lv[j] - t) < 0:
                lam = (t - lv[i]) / (lv[j] - lv[i])
                pts.append(V[i] + lam * (V[j] - V[i]))
    pts = np.array(pts)
    basis = np.linalg.svd(np.eye(len(u)) - np.outer(u, u))[0][:, : len(u) - 1]
    Q = pts @ basis
    if len(Q) < len(u) or np.linalg.matrix_rank(Q - Q.mean(0)) < len(u) - 1:
        return 0.0
    return ConvexHull(Q).volume


def test_cube_slices(cube3):
    assert cube3.slice_area([0, 0, 1.0], 0.0) == pytest.approx(4.0)
    assert cube3.slice_area([0, 0, 1.0], 2.0) == 0.0
    d = np.ones(3) / math.sqrt(3)
    # regular hexagon with side sqrt(2)
    assert cube3.slice_area(d, 0.0) == pytest.approx(3 * math.sqrt(3), rel=1e-13)
    assert cube3.slice_area(d, 0.0) == pytest.approx(hull_slice_oracle(cube3, d, 0.0), rel=1e-12)


def test_tangent_slice_returns_facet_area(cube3, tetra):
    assert cube3.slice_area([0, 0, 1.0], 1.0) == pytest.approx(4.0)
    assert cube3.slice_area([0, 0, 1.0], -1.0) == pytest.approx(4.0)
    f = tetra.facets[0]
    assert tetra.slice_area(f.normal, f.offset) == pytest.approx(tetra.facet_areas[0], rel=1e-12)
    # at a vertex the section is a point
    d = np.ones(3) / math.sqrt(3)
    assert cube3.slice_area(d, math.sqrt(3)) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("dim", [3, 4, 5])
def test_slices_match_hull_oracle(dim, backend):
    rng = np.random.default_rng(100 + dim)
    P = random_body(dim, 100 + dim)
    for _ in range(4):
        u = rng.standard_normal(dim)
        u /= np.linalg.norm(u)
        lo, hi = -P.support(-u), P.support(u)
        for t in rng.uniform(lo, hi, 5):
            assert P.slice_area(u, t) == pytest.approx(hull_slice_oracle(P, u, t), rel=1e-9)


# -- invariances -------------------------------------------------------------------

@given(st.integers(0, 10**6))
def test_volume_invariant_under_permutation_and_rigid_motion(seed):
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((12, 3))
    V0 = pc.from_vertices(3, pts).volume
    R = random_rotation(3, rng)
    moved = pts[rng.permutation(12)] @ R.T + rng.standard_normal(3)
    assert pc.from_vertices(3, moved).volume == pytest.approx(V0, rel=1e-9)


@given(st.integers(0, 10**6), st.integers(3, 5))
def test_generated_bodies_satisfy_invariants(seed, dim):
    P = random_body(dim, seed)
    P.check_invariants()
    assert P.volume > 0
    for v in P.vertices:
        assert P.contains(v, tol=1e-9 * (1 + np.linalg.norm(v)))


def test_scaled_and_rotated(cube3):
    assert cube3.scaled(2.0).volume == pytest.approx(64.0)
    R = random_rotation(3, np.random.default_rng(0))
    Q = cube3.rotated(R)
    Q.check_invariants()
    assert Q.volume == pytest.approx(8.0)
    with pytest.raises(ValueError):
        cube3.scaled(0.0)


def test_free_function_spellings(cube3):
    assert pc.volume(cube3) == cube3.volume
    assert pc.support(cube3, [1.0, 0, 0]) == 1.0
    assert pc.slice_area(cube3, [1.0, 0, 0], 0.5) == pytest.approx(4.0)
    np.testing.assert_allclose(pc.centroid(pc.translate_to_centroid(cube3.translate([3, 0, 0]))),
                               0, atol=1e-14)
