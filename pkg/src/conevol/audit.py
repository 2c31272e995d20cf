"""Monte-Carlo audit: run every check on seeded random bodies and collect failures."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import generators as gen
from .checker import TOL_VIOLATE, VIOLATED, check_all_facets
from .io import PolytopeFile
from .measures import surface_area_measure
from .polytope import Polytope
from .reduction import InvariantViolation, compare, find_balanced
from .symmetrization import concavity_defect, profile, verify_prop1
from .truncated_cone import psi, xy_of_ratio

# thresholds a healthy run must meet
TOL_CLOSURE = 1e-10
TOL_CONCAVITY = 1e-8
TOL_PROP1_VOLUME = 1e-6
TOL_PROP1_CENTROID = 1e-6
TOL_PROP1_MASS = 1e-8
TOL_XY_FRUSTUM = 1e-9


@dataclass
class AuditConfig:
    dim: int = 3
    count: int = 100
    generator: str = "random-hull"
    seed: int = 0
    resolution: int = 2048
    amplitude: float = gen.DEFAULT_AMPLITUDE
    tol_violate: float = TOL_VIOLATE

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if not 3 <= self.dim <= 6:
            raise ValueError("audit dimension must be in 3..6")
        if self.generator not in gen.GENERATORS:
            raise ValueError(f"generator must be one of {gen.GENERATORS}")


@dataclass
class BodyResult:
    index: int
    min_slack: float
    max_scc: float
    closure: float = 0.0
    concavity: float = 0.0
    prop1_max_rel: float = 0.0
    reduction_ok: bool = True
    failures: list[str] = field(default_factory=list)
    body: dict | None = None


def audit_polytope(P: Polytope, rng: np.random.Generator, index: int, resolution: int,
                   tol_violate: float = TOL_VIOLATE) -> BodyResult:
    """All checks on one body: facet sweep, closure, symmetrization, reduction."""
    P = P.translate_to_centroid()
    fails: list[str] = []
    reports = check_all_facets(P, tol_violate=tol_violate, resolution=resolution)
    min_slack = min(r.slack for r in reports)
    max_scc = max(r.scc_value for r in reports)
    for r in reports:
        if r.classification == VIOLATED:
            fails.append(f"violated along {np.round(r.direction, 12).tolist()}: psi={r.psi!r}")
    if max_scc > 1 + tol_violate:
        fails.append(f"subspace concentration exceeded: {max_scc!r}")
    sam = surface_area_measure(P)
    closure = sam.closure_residual() / sam.total
    if closure > TOL_CLOSURE:
        fails.append(f"closure residual {closure:.3e}")

    u = P.normals[int(rng.integers(len(P.normals)))]
    prof = profile(P, u, resolution)
    p1 = verify_prop1(P, u, prof=prof)
    if p1.volume.rel_dev > TOL_PROP1_VOLUME:
        fails.append(f"profile volume off by {p1.volume.rel_dev:.3e}")
    if p1.centroid.rel_dev > TOL_PROP1_CENTROID:
        fails.append(f"profile centroid off by {p1.centroid.rel_dev:.3e} diameters")
    for d, lab in ((p1.mass_plus, "+u"), (p1.mass_minus, "-u")):
        if d.rel_dev > TOL_PROP1_MASS:
            fails.append(f"endpoint mass {lab} off by {d.rel_dev:.3e}")
    conc = concavity_defect(prof).concavity
    if conc > TOL_CONCAVITY:
        fails.append(f"concavity defect {conc:.3e}")
    red_ok = _reduction_checks(prof, fails)
    return BodyResult(index, float(min_slack), float(max_scc), closure, conc, p1.max_rel, red_ok,
                      fails, PolytopeFile.from_polytope(P).to_dict() if fails else None)


def _reduction_checks(prof, fails: list[str]) -> bool:
    try:
        bal = find_balanced(prof)
    except InvariantViolation as exc:
        fails.append(f"reduction: {exc}")
        return False
    cmp_ = compare(prof, bal)
    if not cmp_.ok:
        fails.append(f"reduction comparison failed: {cmp_.to_dict()}")
    if cmp_.psi_frustum > 1 + 1e-9:
        fails.append(f"balanced frustum has psi {cmp_.psi_frustum!r}")
    return cmp_.ok and cmp_.psi_frustum <= 1 + 1e-9


def audit_frustum(dim: int, rng: np.random.Generator, index: int, resolution: int) -> BodyResult:
    """Frustum generator: profile quadrature against the closed forms, then the reduction."""
    t = gen.random_frustum_ratio(rng)
    prof = gen.frustum_profile(dim, t, resolution)
    fails: list[str] = []
    V = prof.volume()
    xq = prof.t_hi * prof.areas[-1] / (dim * V)
    yq = -prof.t_lo * prof.areas[0] / (dim * V)
    x, y = xy_of_ratio(dim, t)
    if max(abs(xq - x), abs(yq - y)) > TOL_XY_FRUSTUM:
        fails.append(f"ratio {t!r}: quadrature ({xq!r}, {yq!r}) vs closed form ({x!r}, {y!r})")
    conc = concavity_defect(prof).concavity
    if conc > TOL_CONCAVITY:
        fails.append(f"concavity defect {conc:.3e}")
    red_ok = _reduction_checks(prof, fails)
    slack = 1.0 - psi(x, y, dim)
    return BodyResult(index, slack, dim * (x + y), 0.0, conc, abs(prof.centroid_u()) / prof.height,
                      red_ok, fails, {"dim": dim, "ratio": t} if fails else None)


def run_one(cfg: AuditConfig, index: int) -> BodyResult:
    rng = gen.rng_for(cfg.seed, index)
    if cfg.generator == "frustum":
        return audit_frustum(cfg.dim, rng, index, cfg.resolution)
    P = gen.make_polytope(cfg.generator, cfg.dim, rng, cfg.amplitude)
    return audit_polytope(P, rng, index, cfg.resolution, cfg.tol_violate)


def thread_count() -> int:
    raw = os.environ.get("CONEVOL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"CONEVOL_THREADS must be a positive integer, got {raw!r}") from None


def run_audit(cfg: AuditConfig, threads: int | None = None) -> dict:
    threads = threads or thread_count()
    idx = range(cfg.count)
    if threads == 1:
        results = [run_one(cfg, i) for i in idx]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda i: run_one(cfg, i), idx))
    results.sort(key=lambda r: r.index)
    failures = [{"config": asdict(cfg), "index": r.index, "reasons": r.failures, "body": r.body}
                for r in results if r.failures]
    return {
        "config": asdict(cfg),
        "bodies": len(results),
        "min_slack": min(r.min_slack for r in results),
        "max_scc_value": max(r.max_scc for r in results),
        "max_closure_residual": max(r.closure for r in results),
        "max_concavity_defect": max(r.concavity for r in results),
        "max_prop1_deviation": max(r.prop1_max_rel for r in results),
        "reduction_ok": all(r.reduction_ok for r in results),
        "failures": failures,
    }


def replay(record: dict) -> BodyResult:
    """Re-run one failure record; the stored config and index regenerate the same body."""
    return run_one(AuditConfig(**record["config"]), record["index"])
