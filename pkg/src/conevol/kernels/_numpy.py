"""Vectorized numpy kernels; the reference path when numba is off or missing."""
from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from ._paths import path_table

_CHUNK = 20000


def _combos(k: int, r: int) -> np.ndarray:
    return np.fromiter((i for c in combinations(range(k), r) for i in c),
                       dtype=np.int64).reshape(-1, r)


def _cofactor_normals(edges: np.ndarray) -> np.ndarray:
    # edges: (C, n-1, n) -> generalized cross products (C, n)
    C, r, n = edges.shape
    out = np.empty((C, n))
    cols = np.arange(n)
    for j in range(n):
        sub = edges[:, :, cols != j]
        out[:, j] = (-1) ** j * (np.linalg.det(sub) if r else 1.0)
    return out


def hull_planes(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k, n = points.shape
    tol = 1e-9 * (1.0 + np.linalg.norm(points, axis=1))
    combos = _combos(k, n)
    normals_out, offsets_out = [], []
    for lo in range(0, len(combos), _CHUNK):
        cb = combos[lo:lo + _CHUNK]
        base = points[cb[:, 0]]
        edges = points[cb[:, 1:]] - base[:, None, :]
        nrm = _cofactor_normals(edges)
        norm = np.linalg.norm(nrm, axis=1)
        keep = norm > 1e-14
        nrm = nrm[keep] / norm[keep, None]
        off = np.einsum("ij,ij->i", nrm, base[keep])
        d = points @ nrm.T - off[None, :]
        above = (d > tol[:, None]).any(axis=0)
        below = (d < -tol[:, None]).any(axis=0)
        sel = above != below
        flip = np.where(above[sel], -1.0, 1.0)
        normals_out.append(nrm[sel] * flip[:, None])
        offsets_out.append(off[sel] * flip)
    if not normals_out:
        return np.zeros((0, n)), np.zeros(0)
    return np.vstack(normals_out), np.concatenate(offsets_out)


def halfspace_vertices(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    m, n = A.shape
    combos = _combos(m, n)
    found = []
    for lo in range(0, len(combos), _CHUNK):
        cb = combos[lo:lo + _CHUNK]
        sub = A[cb]
        rhs = b[cb]
        # reject near-singular systems the same way the compiled kernel does
        _, s, _ = np.linalg.svd(sub)
        ok = s[:, -1] > 1e-12
        if not ok.any():
            continue
        x = np.linalg.solve(sub[ok], rhs[ok][..., None])[..., 0]
        tol = 1e-9 * (1.0 + np.linalg.norm(x, axis=1))
        feas = ((x @ A.T - b[None, :]) <= tol[:, None]).all(axis=1)
        found.append(x[feas])
    if not found:
        return np.zeros((0, n))
    return np.vstack(found)


def section_areas(verts: np.ndarray, levels: np.ndarray, u: np.ndarray,
                  ts: np.ndarray, sides: np.ndarray) -> np.ndarray:
    S, n1, n = verts.shape
    paths, offsets = path_table(n)
    inv_fact = 1.0 / math.factorial(n - 1)
    out = np.zeros(len(ts))
    lo_lv, hi_lv = levels[:, 0], levels[:, -1]
    for q, (t, side) in enumerate(zip(ts, sides)):
        live = (lo_lv <= t) & (hi_lv >= t)
        if not live.any():
            continue
        V, L = verts[live], levels[live]
        below = (L <= t) if side > 0 else (L < t)
        kk = below.sum(axis=1)
        total = 0.0
        for k in range(1, n1):
            grp = kk == k
            if not grp.any():
                continue
            m = n1 - k
            Vg, Lg = V[grp], L[grp]
            ai, aj = Lg[:, :k, None], Lg[:, None, k:]
            lam = (t - ai) / (aj - ai)
            vi, vj = Vg[:, :k, None, :], Vg[:, None, k:, :]
            pts = (vi + lam[..., None] * (vj - vi)).reshape(len(Vg), k * m, n)
            for p in paths[offsets[k]:offsets[k + 1]]:
                edges = pts[:, p[1:], :] - pts[:, p[:1], :]
                mat = np.concatenate([edges, np.broadcast_to(u, (len(Vg), 1, n))], axis=1)
                total += np.abs(np.linalg.det(mat)).sum()
        out[q] = total * inv_fact
    return out
