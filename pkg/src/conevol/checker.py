"""Evaluate the refined cone-volume inequality along a direction and classify equality."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .measures import cone_volume_measure, mass_at, subspace_concentration
from .polytope import Polytope, check_unit
from .symmetrization import DEFAULT_RESOLUTION, concavity_defect, profile, require_centered
from .truncated_cone import psi as psi_value

log = logging.getLogger(__name__)

TOL_EQ = 1e-7
TOL_VIOLATE = 1e-7
TOL_LIN = 1e-6

STRICT = "Strict"
PRISM = "PrismEquality"
CONE = "ConeEquality"
VIOLATED = "Violated"


@dataclass(frozen=True, eq=False)
class ConditionReport:
    direction: np.ndarray
    x: float
    y: float
    psi: float
    slack: float
    scc_value: float
    classification: str
    dim: int

    @property
    def gap(self) -> float:
        return refinement_gap(self)

    def to_dict(self) -> dict:
        return {
            "direction": [float(c) for c in self.direction],
            "x": self.x, "y": self.y, "psi": self.psi, "slack": self.slack,
            "scc_value": self.scc_value, "gap": self.gap,
            "classification": self.classification,
        }


def refinement_gap(report: ConditionReport) -> float:
    """``(n+1)^(n-1) |x - y|^n``, the amount by which the refined bound is stronger."""
    n = report.dim
    return (n + 1) ** (n - 1) * abs(report.x - report.y) ** n


def classify_equality(P: Polytope, u, resolution: int = DEFAULT_RESOLUTION,
                      tol_lin: float = TOL_LIN) -> str:
    prof = profile(P, u, resolution)
    lin = concavity_defect(prof).linearity
    if lin <= tol_lin:
        r = prof.radii
        rmax = float(r.max())
        if abs(r[0] - r[-1]) <= tol_lin * rmax:
            return PRISM
        if (r[0] <= tol_lin * rmax) != (r[-1] <= tol_lin * rmax):
            return CONE
    log.warning("psi is numerically 1 along %s but the profile is neither constant nor a cone",
                np.array2string(np.asarray(u), precision=6))
    return STRICT


def check_direction(P: Polytope, u, *, tol_eq: float = TOL_EQ, tol_violate: float = TOL_VIOLATE,
                    resolution: int = DEFAULT_RESOLUTION, _mu=None) -> ConditionReport:
    require_centered(P)
    u = check_unit(u, P.dim)
    mu = _mu if _mu is not None else cone_volume_measure(P)
    V = P.volume
    x, y = mass_at(mu, u) / V, mass_at(mu, -u) / V
    n = P.dim
    p = psi_value(x, y, n)
    slack = 1.0 - p
    if slack < -tol_violate:
        cls = VIOLATED
    elif slack > tol_eq:
        cls = STRICT
    else:
        cls = classify_equality(P, u, resolution)
    return ConditionReport(u, x, y, p, slack, n * (x + y), cls, n)


def facet_axes(P: Polytope, tol_angle: float = 1e-8) -> list[np.ndarray]:
    """One representative per facet-normal axis ``{u, -u}``."""
    axes: list[np.ndarray] = []
    for nrm in P.normals:
        if any(np.linalg.norm(nrm - a) <= tol_angle or np.linalg.norm(nrm + a) <= tol_angle
               for a in axes):
            continue
        axes.append(nrm)
    return axes


def check_all_facets(P: Polytope, **kw) -> list[ConditionReport]:
    require_centered(P)
    mu = cone_volume_measure(P)
    reports = [check_direction(P, a, _mu=mu, **kw) for a in facet_axes(P)]
    return sorted(reports, key=lambda r: r.slack)


def scc_agrees(P: Polytope, report: ConditionReport, tol: float = 1e-9) -> bool:
    """The one-dimensional subspace concentration test agrees with ``scc_value <= 1``."""
    sc = subspace_concentration(cone_volume_measure(P), [report.direction])
    return abs(sc.ratio * P.dim - report.scc_value) <= tol
