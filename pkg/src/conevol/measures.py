"""Discrete measures on the sphere attached to a polytope.

For a polytope every one of these measures is a finite sum of point masses at
the facet normals, so a measure is just a list of (direction, mass) atoms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polytope import Polytope, check_unit

TOL_ANGLE = 1e-8


class DomainError(ValueError):
    """The origin is not strictly inside the body where the measure needs it."""


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    dim: int
    directions: np.ndarray  # (k, n) unit vectors
    masses: np.ndarray      # (k,) positive

    def __post_init__(self):
        if len(self.directions) != len(self.masses):
            raise ValueError("directions and masses differ in length")
        if (self.masses <= 0).any():
            raise ValueError("atom masses must be strictly positive")

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def __len__(self) -> int:
        return len(self.masses)

    def atoms(self) -> list[tuple[np.ndarray, float]]:
        return [(d, float(m)) for d, m in zip(self.directions, self.masses)]

    def scaled(self, factor: float) -> "DiscreteMeasure":
        return DiscreteMeasure(self.dim, self.directions, self.masses * factor)

    def closure_residual(self) -> float:
        """``|sum mass * direction|``; zero for any surface area measure."""
        return float(np.linalg.norm(self.masses @ self.directions))


def _angle(a: np.ndarray, b: np.ndarray) -> float:
    # accurate for tiny angles, unlike arccos of the dot product
    return float(2.0 * np.arcsin(min(1.0, np.linalg.norm(a - b) / 2.0)))


def _require_interior_origin(P: Polytope) -> None:
    h = P.offsets
    if (h <= 0).any():
        i = int(np.argmin(h))
        raise DomainError(f"origin is not interior: facet {i} has support value {h[i]:.3g}")


def surface_area_measure(P: Polytope) -> DiscreteMeasure:
    return DiscreteMeasure(P.dim, P.normals.copy(), P.facet_areas.copy())


def lp_surface_measure(P: Polytope, p: float) -> DiscreteMeasure:
    """Facet mass ``h_i^(1-p) * area_i``; needs the origin inside unless ``p == 1``."""
    if p == 1:
        return surface_area_measure(P)
    _require_interior_origin(P)
    return DiscreteMeasure(P.dim, P.normals.copy(), P.offsets ** (1.0 - p) * P.facet_areas)


def cone_volume_measure(P: Polytope) -> DiscreteMeasure:
    """Facet mass ``h_i * area_i / n``: the volume of the cone from the origin over the facet."""
    _require_interior_origin(P)
    return DiscreteMeasure(P.dim, P.normals.copy(), P.offsets * P.facet_areas / P.dim)


def mass_at(mu: DiscreteMeasure, u, tol_angle: float = TOL_ANGLE) -> float:
    """Mass of the atom at direction ``u`` (zero when there is none)."""
    u = check_unit(u, mu.dim)
    hits = [i for i, d in enumerate(mu.directions) if _angle(d, u) <= tol_angle]
    if len(hits) > 1:
        raise RuntimeError(f"{len(hits)} atoms within {tol_angle} rad of the query direction")
    return float(mu.masses[hits[0]]) if hits else 0.0


@dataclass(frozen=True)
class SubspaceConcentration:
    ratio: float
    bound: float
    ok: bool


def subspace_concentration(mu: DiscreteMeasure, basis, tol_angle: float = TOL_ANGLE
                           ) -> SubspaceConcentration:
    """Fraction of total mass carried by ``span(basis)`` against ``dim(span) / n``."""
    B = np.atleast_2d(np.asarray(basis, dtype=np.float64))
    k = B.shape[0]
    if B.shape[1] != mu.dim:
        raise ValueError(f"basis vectors must have length {mu.dim}")
    if not 0 < k < mu.dim:
        raise ValueError("subspace dimension must be strictly between 0 and n")
    if np.linalg.matrix_rank(B, tol=1e-12) < k:
        raise ValueError("basis vectors are linearly dependent")
    Q, _ = np.linalg.qr(B.T)
    resid = mu.directions - (mu.directions @ Q) @ Q.T
    inside = np.linalg.norm(resid, axis=1) <= tol_angle
    ratio = float(mu.masses[inside].sum() / mu.total)
    bound = k / mu.dim
    return SubspaceConcentration(ratio, bound, ratio <= bound + 1e-9)
