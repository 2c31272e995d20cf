"""Full-dimensional convex polytopes in vertex + facet form.

Construction is brute force over n-subsets (hull planes, halfspace vertex
enumeration), which is fine for n <= 6 and a few dozen points. Volume,
centroid and section areas all come from one simplex decomposition: every
facet is pulled-triangulated and coned to the vertex mean.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog

from . import kernels

TOL_UNIT = 1e-12
TOL_NORMAL_MERGE = 1e-9
MAX_HULL_POINTS = 64


class PolytopeError(ValueError):
    """Input does not describe a bounded, full-dimensional convex polytope."""


def tol_incidence(v) -> float:
    return 1e-9 * (1.0 + float(np.linalg.norm(v)))


def check_unit(u, dim: int | None = None) -> np.ndarray:
    u = np.asarray(u, dtype=np.float64)
    if u.ndim != 1 or (dim is not None and u.shape[0] != dim):
        raise ValueError(f"direction must be a vector of length {dim}, got shape {u.shape}")
    if abs(np.linalg.norm(u) - 1.0) > TOL_UNIT:
        raise ValueError(f"direction must be a unit vector (|u| = {np.linalg.norm(u):.17g})")
    return u


def affine_rank(points: np.ndarray, scale: float | None = None) -> int:
    points = np.asarray(points, dtype=np.float64)
    if len(points) <= 1:
        return 0
    centered = points - points.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    if scale is None:
        scale = max(1.0, float(np.abs(points).max()))
    return int((s > 1e-9 * scale).sum())


@dataclass(frozen=True, eq=False)
class Facet:
    normal: np.ndarray
    offset: float
    vertex_indices: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Polytope:
    dim: int
    vertices: np.ndarray
    facets: tuple[Facet, ...]
    name: str | None = field(default=None, compare=False)

    # -- decomposition --------------------------------------------------------
    @cached_property
    def normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets])

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.array([f.offset for f in self.facets])

    @cached_property
    def reference_point(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    @cached_property
    def facet_triangulations(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Pulling triangulation of each facet into (n-1)-simplices (vertex index tuples)."""
        facet_sets = [frozenset(f.vertex_indices) for f in self.facets]
        memo: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        scale = max(1.0, float(np.abs(self.vertices).max()))

        def tri(ids: tuple[int, ...], d: int) -> list[tuple[int, ...]]:
            if ids in memo:
                return memo[ids]
            if len(ids) == d + 1:
                memo[ids] = [ids]
                return memo[ids]
            apex = ids[0]
            ids_set = set(ids)
            subfaces = set()
            for fs in facet_sets:
                inter = ids_set & fs
                if apex in inter or len(inter) < d or len(inter) == len(ids):
                    continue
                sub = tuple(sorted(inter))
                if sub not in subfaces and affine_rank(self.vertices[list(sub)], scale) == d - 1:
                    subfaces.add(sub)
            out = [(apex,) + s for sf in sorted(subfaces) for s in tri(sf, d - 1)]
            memo[ids] = out
            return out

        return tuple(tuple(tri(tuple(sorted(f.vertex_indices)), self.dim - 1))
                     for f in self.facets)

    @cached_property
    def simplices(self) -> np.ndarray:
        """``(S, n+1, n)`` array of simplices: reference point + one facet simplex each."""
        c = self.reference_point
        out = [np.vstack([c, self.vertices[list(s)]])
               for tris in self.facet_triangulations for s in tris]
        return np.asarray(out)

    @cached_property
    def simplex_volumes(self) -> np.ndarray:
        S = self.simplices
        edges = S[:, 1:, :] - S[:, :1, :]
        return np.abs(np.linalg.det(edges)) / math.factorial(self.dim)

    @cached_property
    def volume(self) -> float:
        return float(self.simplex_volumes.sum())

    @cached_property
    def centroid(self) -> np.ndarray:
        w = self.simplex_volumes
        return (w[:, None] * self.simplices.mean(axis=1)).sum(axis=0) / w.sum()

    @cached_property
    def facet_areas(self) -> np.ndarray:
        n = self.dim
        areas = []
        for f, tris in zip(self.facets, self.facet_triangulations):
            a = 0.0
            for s in tris:
                pts = self.vertices[list(s)]
                mat = np.vstack([pts[1:] - pts[0], f.normal])
                a += abs(np.linalg.det(mat))
            areas.append(a / math.factorial(n - 1))
        return np.array(areas)

    @cached_property
    def diameter(self) -> float:
        V = self.vertices
        d = np.linalg.norm(V[:, None, :] - V[None, :, :], axis=-1)
        return float(d.max())

    # -- queries ----------------------------------------------------------------
    def support(self, u) -> float:
        u = check_unit(u, self.dim)
        return float((self.vertices @ u).max())

    def slice_areas(self, u, ts: Sequence[float]) -> np.ndarray:
        """Vectorized :func:`slice_area` over many levels along one direction."""
        u = check_unit(u, self.dim)
        ts = np.atleast_1d(np.asarray(ts, dtype=np.float64))
        lv = self.vertices @ u
        t_lo, t_hi = float(lv.min()), float(lv.max())
        tol = tol_incidence(self.vertices[np.argmax(np.abs(lv))])
        inside = (ts >= t_lo - tol) & (ts <= t_hi + tol)
        tt = np.clip(ts, t_lo, t_hi)
        sides = np.where(tt >= t_hi - tol, -1, 1).astype(np.int8)
        S = self.simplices
        levels = S @ u
        # vertices of a facet perpendicular to u must sit exactly on the extreme
        # level, or the one-sided limit there sees a sliver instead of the facet
        levels[np.abs(levels - t_hi) <= tol] = t_hi
        levels[np.abs(levels - t_lo) <= tol] = t_lo
        order = np.argsort(levels, axis=1, kind="stable")
        levels = np.take_along_axis(levels, order, axis=1)
        verts = np.take_along_axis(S, order[:, :, None], axis=1)
        out = np.zeros(len(ts))
        if inside.any():
            out[inside] = kernels.section_areas(verts, levels, u, tt[inside], sides[inside])
        return out

    def slice_area(self, u, t: float) -> float:
        return float(self.slice_areas(u, [t])[0])

    # -- rigid and affine moves -------------------------------------------------
    def translate(self, v) -> "Polytope":
        v = np.asarray(v, dtype=np.float64)
        facets = tuple(Facet(f.normal, float(f.offset + f.normal @ v), f.vertex_indices)
                       for f in self.facets)
        return Polytope(self.dim, self.vertices + v, facets, self.name)

    def translate_to_centroid(self) -> "Polytope":
        return self.translate(-self.centroid)

    def scaled(self, lam: float) -> "Polytope":
        if lam <= 0:
            raise ValueError("scale factor must be positive")
        facets = tuple(Facet(f.normal, f.offset * lam, f.vertex_indices) for f in self.facets)
        return Polytope(self.dim, self.vertices * lam, facets, self.name)

    def rotated(self, R) -> "Polytope":
        R = np.asarray(R, dtype=np.float64)
        facets = tuple(Facet(R @ f.normal, f.offset, f.vertex_indices) for f in self.facets)
        return Polytope(self.dim, self.vertices @ R.T, facets, self.name)

    def contains(self, x, tol: float = 0.0) -> bool:
        x = np.asarray(x, dtype=np.float64)
        return bool((self.normals @ x <= self.offsets + tol).all())

    def check_invariants(self) -> None:
        """Raise :class:`PolytopeError` if any structural invariant fails."""
        n = self.dim
        for f in self.facets:
            if abs(np.linalg.norm(f.normal) - 1.0) > TOL_UNIT:
                raise PolytopeError("facet normal is not unit")
            for i in f.vertex_indices:
                v = self.vertices[i]
                if abs(v @ f.normal - f.offset) > tol_incidence(v):
                    raise PolytopeError(f"vertex {i} not incident to its facet")
            if affine_rank(self.vertices[list(f.vertex_indices)]) != n - 1:
                raise PolytopeError("facet vertices do not span a hyperplane")
        slack = self.offsets[None, :] - self.vertices @ self.normals.T
        tols = 1e-9 * (1.0 + np.linalg.norm(self.vertices, axis=1))
        if (slack < -tols[:, None]).any():
            raise PolytopeError("a vertex violates a facet inequality")
        counts = (np.abs(slack) <= tols[:, None]).sum(axis=1)
        if (counts < n).any():
            raise PolytopeError("a vertex lies on fewer than n facets")
        c = self.reference_point
        if not (self.normals @ c < self.offsets - 1e-12).all():
            raise PolytopeError("vertex mean is not interior")


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _dedupe_points(points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    keep: list[np.ndarray] = []
    for p in points:
        if not any(np.linalg.norm(p - q) <= tol * (1 + np.linalg.norm(p)) for q in keep):
            keep.append(p)
    return np.array(keep)


def _merge_planes(normals: np.ndarray, offsets: np.ndarray) -> list[tuple[np.ndarray, float]]:
    kept: list[tuple[np.ndarray, float]] = []
    for nrm, off in zip(normals, offsets):
        tol = 1e-9 * (1.0 + abs(off))
        if not any(np.linalg.norm(nrm - k) <= TOL_NORMAL_MERGE and abs(off - o) <= tol
                   for k, o in kept):
            kept.append((nrm, float(off)))
    return kept


def _refit_plane(pts: np.ndarray, normal: np.ndarray) -> tuple[np.ndarray, float]:
    # least-squares hyperplane through all incident points, oriented like `normal`
    c = pts.mean(axis=0)
    _, _, vt = np.linalg.svd(pts - c)
    nrm = vt[-1]
    if nrm @ normal < 0:
        nrm = -nrm
    nrm = nrm / np.linalg.norm(nrm)
    return nrm, float(np.max(pts @ nrm))


def _assemble(dim: int, points: np.ndarray, planes: Iterable[tuple[np.ndarray, float]],
              name: str | None) -> Polytope:
    tols = 1e-9 * (1.0 + np.linalg.norm(points, axis=1))
    raw = []
    for nrm, off in planes:
        inc = np.flatnonzero(np.abs(points @ nrm - off) <= tols)
        if len(inc) >= dim and affine_rank(points[inc]) == dim - 1:
            raw.append((nrm, off, inc))
    # a point is a vertex iff the normals of the facets through it span R^n
    is_vertex = np.zeros(len(points), dtype=bool)
    for i in range(len(points)):
        ns = [nrm for nrm, _, inc in raw if i in inc]
        is_vertex[i] = len(ns) >= dim and np.linalg.matrix_rank(np.array(ns), tol=1e-9) == dim
    new_index = -np.ones(len(points), dtype=np.int64)
    new_index[is_vertex] = np.arange(is_vertex.sum())
    verts = points[is_vertex]
    facets = []
    for nrm, off, inc in raw:
        vids = tuple(int(new_index[i]) for i in inc if is_vertex[i])
        nrm2, off2 = _refit_plane(verts[list(vids)], nrm)
        facets.append(Facet(nrm2, off2, vids))
    P = Polytope(dim, verts, tuple(facets), name)
    return P


def from_vertices(dim: int, points, *, max_points: int = MAX_HULL_POINTS,
                  name: str | None = None) -> Polytope:
    """Convex hull of a small point set by brute-force supporting-plane search."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise PolytopeError(f"expected points of dimension {dim}, got shape {pts.shape}")
    if not np.isfinite(pts).all():
        raise PolytopeError("points must be finite")
    if len(pts) > max_points:
        raise PolytopeError(f"{len(pts)} points exceed the brute-force limit of {max_points}")
    pts = _dedupe_points(pts)
    rank = affine_rank(pts)
    if rank < dim:
        raise PolytopeError(f"points are degenerate: affine rank {rank} < {dim}")
    normals, offsets = kernels.hull_planes(pts)
    return _assemble(dim, pts, _merge_planes(normals, offsets), name)


def _is_bounded(A: np.ndarray) -> bool:
    # bounded iff the recession cone {d : A d <= 0} is {0}
    n = A.shape[1]
    if np.linalg.matrix_rank(A) < n:
        return False
    for i in range(n):
        for s in (1.0, -1.0):
            c = np.zeros(n)
            c[i] = -s
            res = linprog(c, A_ub=A, b_ub=np.zeros(len(A)), bounds=[(-1, 1)] * n,
                          method="highs")
            if res.status != 0 or -res.fun > 1e-9:
                return False
    return True


def from_halfspaces(dim: int, halfspaces, *, name: str | None = None) -> Polytope:
    """Intersection of ``normal . x <= offset`` halfspaces by vertex enumeration.

    Normals are rescaled to unit length (offsets with them). Redundant
    halfspaces whose contact set is not (n-1)-dimensional are dropped.
    """
    normals, offsets = [], []
    for item in halfspaces:
        nrm, off = (item["normal"], item["offset"]) if isinstance(item, dict) else item
        nrm = np.asarray(nrm, dtype=np.float64)
        if nrm.shape != (dim,):
            raise PolytopeError(f"halfspace normal must have length {dim}")
        norm = np.linalg.norm(nrm)
        if not np.isfinite(norm) or norm == 0 or not np.isfinite(off):
            raise PolytopeError("halfspace normals must be finite and nonzero")
        normals.append(nrm / norm)
        offsets.append(float(off) / norm)
    A, b = np.array(normals), np.array(offsets)
    if len(A) < dim + 1:
        raise PolytopeError(f"need at least {dim + 1} halfspaces for a bounded body in R^{dim}")
    if not _is_bounded(A):
        raise PolytopeError("halfspace intersection is unbounded")
    cand = kernels.halfspace_vertices(A, b)
    if len(cand) == 0:
        raise PolytopeError("halfspace intersection is empty")
    pts = _dedupe_points(cand)
    rank = affine_rank(pts)
    if rank < dim:
        raise PolytopeError(f"halfspace intersection has empty interior (affine rank {rank})")
    planes = _merge_planes(A, b)
    return _assemble(dim, pts, planes, name)


# ---------------------------------------------------------------------------
# free-function spellings
# ---------------------------------------------------------------------------

def support(P: Polytope, u) -> float:
    return P.support(u)


def volume(P: Polytope) -> float:
    return P.volume


def centroid(P: Polytope) -> np.ndarray:
    return P.centroid


def slice_area(P: Polytope, u, t: float) -> float:
    return P.slice_area(u, t)


def translate_to_centroid(P: Polytope) -> Polytope:
    return P.translate_to_centroid()


# ---------------------------------------------------------------------------
# canonical bodies
# ---------------------------------------------------------------------------

def cube(dim: int = 3, half: float = 1.0) -> Polytope:
    hs = []
    for i in range(dim):
        e = np.zeros(dim)
        e[i] = 1.0
        hs += [(e, half), (-e, half)]
    return from_halfspaces(dim, hs, name=f"cube{dim}")


def standard_simplex(dim: int = 3) -> Polytope:
    pts = np.vstack([np.zeros(dim), np.eye(dim)])
    return from_vertices(dim, pts, name=f"simplex{dim}")


def regular_simplex(dim: int = 3) -> Polytope:
    """Regular simplex centred at the origin with unit circumradius."""
    E = np.eye(dim + 1) - 1.0 / (dim + 1)
    # orthonormal basis of the hyperplane sum(x) = 0
    q, _ = np.linalg.qr(E)
    pts = E @ q[:, :dim]
    pts /= np.linalg.norm(pts[0])
    return from_vertices(dim, pts, name=f"regular-simplex{dim}")


def prism(base: np.ndarray, shift) -> Polytope:
    """``conv(B u (B + shift))`` for base points ``B`` in the hyperplane ``x_n = 0``."""
    base = np.asarray(base, dtype=np.float64)
    shift = np.asarray(shift, dtype=np.float64)
    return from_vertices(base.shape[1], np.vstack([base, base + shift]), name="prism")


def pyramid(base: np.ndarray, apex) -> Polytope:
    base = np.asarray(base, dtype=np.float64)
    return from_vertices(base.shape[1], np.vstack([base, np.asarray(apex, dtype=np.float64)]),
                         name="cone")


def cube_base(dim: int, half: float = 1.0) -> np.ndarray:
    """Vertices of the (dim-1)-cube ``[-half, half]^(dim-1) x {0}``."""
    corners = np.array(np.meshgrid(*[[-half, half]] * (dim - 1), indexing="ij"))
    corners = corners.reshape(dim - 1, -1).T
    return np.hstack([corners, np.zeros((len(corners), 1))])
