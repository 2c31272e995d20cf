"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The backend is chosen once at import from ``CONEVOL_BACKEND`` (``numba`` or
``numpy``); numba is the default when it imports. :func:`use_backend` switches
at runtime, which is how the tests and the benchmark compare both paths.
"""
from __future__ import annotations

import contextlib
import logging
import os

import numpy as np

from . import _numpy

log = logging.getLogger(__name__)

_BACKENDS = {"numpy": _numpy}
try:
    from . import _numba
    _BACKENDS["numba"] = _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    log.info("numba unavailable, using the numpy kernels")

_requested = os.environ.get("CONEVOL_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"CONEVOL_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
_active = _BACKENDS.get(_requested, _numpy)


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def backend_name() -> str:
    return "numba" if _active is _BACKENDS.get("numba") else "numpy"


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    _active = _BACKENDS[name]


@contextlib.contextmanager
def use_backend(name: str):
    prev = backend_name()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def hull_planes(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Supporting hyperplanes through every affinely independent n-subset of ``points``.

    Returns unmerged outward ``(normals, offsets)``: every point satisfies
    ``p . normal <= offset + 1e-9 (1 + |p|)``.
    """
    return _active.hull_planes(np.ascontiguousarray(points, dtype=np.float64))


def halfspace_vertices(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Feasible solutions of every nonsingular n-subset of ``A x = b`` (not deduplicated)."""
    return _active.halfspace_vertices(np.ascontiguousarray(A, dtype=np.float64),
                                      np.ascontiguousarray(b, dtype=np.float64))


def section_areas(verts: np.ndarray, levels: np.ndarray, u: np.ndarray,
                  ts: np.ndarray, sides: np.ndarray) -> np.ndarray:
    """Summed (n-1)-volume of ``{x . u = t}`` across a simplex decomposition.

    ``verts`` is ``(S, n+1, n)`` with each simplex's vertices sorted by
    ``levels = verts @ u``. ``sides[q] > 0`` takes the limit from above
    (vertices on the hyperplane count as below), otherwise from below. The
    one-sided convention keeps a hyperplane that contains a shared internal
    face from counting that face twice.
    """
    return _active.section_areas(np.ascontiguousarray(verts, dtype=np.float64),
                                 np.ascontiguousarray(levels, dtype=np.float64),
                                 np.asarray(u, dtype=np.float64),
                                 np.asarray(ts, dtype=np.float64),
                                 np.asarray(sides, dtype=np.int8))
