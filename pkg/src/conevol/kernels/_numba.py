"""numba-compiled kernels. Signatures mirror :mod:`conevol.kernels._numpy`."""
from __future__ import annotations

import numpy as np
from numba import njit

from ._paths import path_table


@njit(cache=True)
def _det(a):
    # small dense determinant, Gaussian elimination with partial pivoting; mutates a
    n = a.shape[0]
    det = 1.0
    for c in range(n):
        p = c
        best = abs(a[c, c])
        for r in range(c + 1, n):
            v = abs(a[r, c])
            if v > best:
                best = v
                p = r
        if best == 0.0:
            return 0.0
        if p != c:
            for k in range(n):
                tmp = a[c, k]
                a[c, k] = a[p, k]
                a[p, k] = tmp
            det = -det
        piv = a[c, c]
        det *= piv
        for r in range(c + 1, n):
            f = a[r, c] / piv
            if f != 0.0:
                for k in range(c + 1, n):
                    a[r, k] -= f * a[c, k]
    return det


@njit(cache=True)
def _next_combination(idx, k):
    # advance idx (length r, strictly increasing, values < k) in lexicographic order
    r = idx.shape[0]
    i = r - 1
    while i >= 0 and idx[i] == k - r + i:
        i -= 1
    if i < 0:
        return False
    idx[i] += 1
    for j in range(i + 1, r):
        idx[j] = idx[j - 1] + 1
    return True


@njit(cache=True)
def _plane_normal(pts, idx, out):
    # generalized cross product of the n-1 edge vectors from pts[idx[0]]
    n = pts.shape[1]
    edges = np.empty((n - 1, n))
    for r in range(n - 1):
        for c in range(n):
            edges[r, c] = pts[idx[r + 1], c] - pts[idx[0], c]
    sub = np.empty((n - 1, n - 1))
    sign = 1.0
    for j in range(n):
        for r in range(n - 1):
            cc = 0
            for c in range(n):
                if c != j:
                    sub[r, cc] = edges[r, c]
                    cc += 1
        out[j] = sign * _det(sub)
        sign = -sign


@njit(cache=True)
def hull_planes(points):
    k, n = points.shape
    tol = np.empty(k)
    for i in range(k):
        s = 0.0
        for c in range(n):
            s += points[i, c] * points[i, c]
        tol[i] = 1e-9 * (1.0 + np.sqrt(s))
    cap = 64
    normals = np.empty((cap, n))
    offsets = np.empty(cap)
    count = 0
    idx = np.arange(n)
    nrm = np.empty(n)
    while True:
        _plane_normal(points, idx, nrm)
        norm = 0.0
        for c in range(n):
            norm += nrm[c] * nrm[c]
        norm = np.sqrt(norm)
        if norm > 1e-14:
            for c in range(n):
                nrm[c] /= norm
            off = 0.0
            for c in range(n):
                off += nrm[c] * points[idx[0], c]
            above = False
            below = False
            for i in range(k):
                d = -off
                for c in range(n):
                    d += nrm[c] * points[i, c]
                if d > tol[i]:
                    above = True
                elif d < -tol[i]:
                    below = True
                if above and below:
                    break
            if above != below:
                if count == cap:
                    cap *= 2
                    nn = np.empty((cap, n))
                    oo = np.empty(cap)
                    nn[:count] = normals[:count]
                    oo[:count] = offsets[:count]
                    normals = nn
                    offsets = oo
                s = -1.0 if above else 1.0
                for c in range(n):
                    normals[count, c] = s * nrm[c]
                offsets[count] = s * off
                count += 1
        if not _next_combination(idx, k):
            break
    return normals[:count].copy(), offsets[:count].copy()


@njit(cache=True)
def _solve(a, b, x):
    # in-place Gaussian elimination; returns False when singular
    n = a.shape[0]
    for c in range(n):
        p = c
        best = abs(a[c, c])
        for r in range(c + 1, n):
            v = abs(a[r, c])
            if v > best:
                best = v
                p = r
        if best < 1e-12:
            return False
        if p != c:
            for k in range(n):
                tmp = a[c, k]
                a[c, k] = a[p, k]
                a[p, k] = tmp
            tmp = b[c]
            b[c] = b[p]
            b[p] = tmp
        for r in range(c + 1, n):
            f = a[r, c] / a[c, c]
            for k in range(c, n):
                a[r, k] -= f * a[c, k]
            b[r] -= f * b[c]
    for r in range(n - 1, -1, -1):
        s = b[r]
        for k in range(r + 1, n):
            s -= a[r, k] * x[k]
        x[r] = s / a[r, r]
    return True


@njit(cache=True)
def halfspace_vertices(A, b):
    m, n = A.shape
    cap = 64
    out = np.empty((cap, n))
    count = 0
    idx = np.arange(n)
    sub = np.empty((n, n))
    rhs = np.empty(n)
    x = np.empty(n)
    while True:
        for r in range(n):
            for c in range(n):
                sub[r, c] = A[idx[r], c]
            rhs[r] = b[idx[r]]
        if _solve(sub, rhs, x):
            s = 0.0
            for c in range(n):
                s += x[c] * x[c]
            tol = 1e-9 * (1.0 + np.sqrt(s))
            ok = True
            for i in range(m):
                d = -b[i]
                for c in range(n):
                    d += A[i, c] * x[c]
                if d > tol:
                    ok = False
                    break
            if ok:
                if count == cap:
                    cap *= 2
                    nn = np.empty((cap, n))
                    nn[:count] = out[:count]
                    out = nn
                out[count] = x
                count += 1
        if not _next_combination(idx, m):
            break
    return out[:count].copy()


@njit(cache=True)
def _section_areas(verts, levels, u, ts, sides, paths, offsets, inv_fact):
    # verts/levels are per-simplex sorted by level
    S, n1, n = verts.shape
    T = ts.shape[0]
    out = np.zeros(T)
    pts = np.empty((n1 * n1, n))
    mat = np.empty((n, n))
    for q in range(T):
        t = ts[q]
        right = sides[q] > 0
        total = 0.0
        for s in range(S):
            if t < levels[s, 0] or t > levels[s, n]:
                continue
            k = 0
            for i in range(n1):
                if (levels[s, i] <= t) if right else (levels[s, i] < t):
                    k += 1
            if k == 0 or k == n1:
                continue
            m = n1 - k
            for i in range(k):
                ai = levels[s, i]
                for j in range(m):
                    aj = levels[s, k + j]
                    lam = (t - ai) / (aj - ai)
                    for c in range(n):
                        pts[i * m + j, c] = verts[s, i, c] + lam * (verts[s, k + j, c] - verts[s, i, c])
            for p in range(offsets[k], offsets[k + 1]):
                p0 = paths[p, 0]
                for r in range(n - 1):
                    pr = paths[p, r + 1]
                    for c in range(n):
                        mat[r, c] = pts[pr, c] - pts[p0, c]
                for c in range(n):
                    mat[n - 1, c] = u[c]
                total += abs(_det(mat))
        out[q] = total * inv_fact
    return out


def section_areas(verts, levels, u, ts, sides):
    n = verts.shape[2]
    paths, offsets = path_table(n)
    inv_fact = 1.0
    for k in range(2, n):
        inv_fact /= k
    return _section_areas(verts, levels, np.ascontiguousarray(u, dtype=np.float64),
                          np.ascontiguousarray(ts, dtype=np.float64),
                          np.ascontiguousarray(sides, dtype=np.int8),
                          paths, offsets, inv_fact)
