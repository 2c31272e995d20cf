"""Staircase triangulation tables for hyperplane sections of a simplex."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np


@lru_cache(maxsize=None)
def staircase_paths(k: int, m: int) -> np.ndarray:
    """Monotone lattice paths from (0, 0) to (k-1, m-1).

    A section of an n-simplex with ``k`` vertices below and ``m`` above the
    cutting hyperplane is combinatorially the product of a (k-1)- and an
    (m-1)-simplex; each path lists the ``k + m - 1`` section vertices of one
    maximal simplex of its staircase triangulation. Vertex ``(i, j)`` is encoded
    as ``i * m + j``.
    """
    steps = k + m - 2
    out = []
    for ups in combinations(range(steps), k - 1):
        i = j = 0
        path = [0]
        ups_set = set(ups)
        for s in range(steps):
            if s in ups_set:
                i += 1
            else:
                j += 1
            path.append(i * m + j)
        out.append(path)
    return np.asarray(out, dtype=np.int64)


@lru_cache(maxsize=None)
def path_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All paths for an n-simplex packed as (paths, offsets) indexed by k = #below."""
    chunks = [np.zeros((0, n), dtype=np.int64)]
    offsets = [0, 0]
    for k in range(1, n + 1):
        p = staircase_paths(k, n + 1 - k)
        chunks.append(p)
        offsets.append(offsets[-1] + len(p))
    offsets.append(offsets[-1])
    return np.ascontiguousarray(np.vstack(chunks)), np.asarray(offsets, dtype=np.int64)
