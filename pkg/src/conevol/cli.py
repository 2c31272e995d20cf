"""Command-line front end.

Exit codes: 0 success, 1 usage/parse/precondition error, 2 condition
violation, 3 certificate failure.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import logging
import math
import sys
import time

import numpy as np

from . import audit as audit_mod
from . import checker, exact_poly, reduction, symmetrization, truncated_cone
from .io import ParseError, load_polytope
from .measures import DomainError, cone_volume_measure, lp_surface_measure, surface_area_measure
from .polytope import PolytopeError, check_unit

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_CERT = 0, 1, 2, 3
TOL_NAMES = ("tol_eq", "tol_violate", "tol_lin")

log = logging.getLogger("conevol")


class UsageError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def _emit(args, payload, rows: list[dict] | None = None) -> None:
    """JSON by default; CSV of ``rows`` when ``--output csv`` and the command has rows."""
    if args.output == "csv" and rows is not None:
        buf = _stdio.StringIO()
        if rows:
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(list(rows[0]))
            for r in rows:
                w.writerow([_fmt(v) for v in r.values()])
        sys.stdout.write(buf.getvalue())
    else:
        json.dump(payload, sys.stdout, indent=2, default=_json_default)
        sys.stdout.write("\n")


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, (np.bool_,)):
        return bool(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _tols(args) -> dict:
    out = {"tol_eq": checker.TOL_EQ, "tol_violate": checker.TOL_VIOLATE, "tol_lin": checker.TOL_LIN}
    for item in args.tol or []:
        name, _, val = item.partition("=")
        if name not in TOL_NAMES or not val:
            raise UsageError(f"--tol expects NAME=VALUE with NAME in {TOL_NAMES}, got {item!r}")
        try:
            out[name] = float(val)
        except ValueError:
            raise UsageError(f"--tol {name}: not a number: {val!r}") from None
    return out


def _load(args):
    P = load_polytope(args.file)
    if getattr(args, "center", False):
        P = P.translate_to_centroid()
    return P


def _direction(args, dim: int):
    if args.direction is None:
        return None
    v = np.asarray(args.direction, dtype=np.float64)
    if len(v) != dim:
        raise UsageError(f"--direction needs {dim} components")
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise UsageError("--direction must be nonzero")
    return check_unit(v / nrm, dim)


def _atoms(mu) -> list[dict]:
    return [{"direction": d.tolist(), "mass": m} for d, m in mu.atoms()]


# -- subcommands -----------------------------------------------------------------

def cmd_measure(args) -> int:
    P = _load(args)
    sam = surface_area_measure(P)
    out = {"dim": P.dim, "volume": P.volume,
           "surface": {"atoms": _atoms(sam), "total": sam.total},
           "closure_residual": sam.closure_residual()}
    lp = lp_surface_measure(P, args.p)
    out["lp"] = {"p": args.p, "atoms": _atoms(lp), "total": lp.total}
    cv = cone_volume_measure(P)
    out["cone_volume"] = {"atoms": _atoms(cv), "total": cv.total}
    rows = [{"measure": name, **{f"u{j}": c for j, c in enumerate(d)}, "mass": m}
            for name, mu in (("surface", sam), ("lp", lp), ("cone_volume", cv))
            for d, m in mu.atoms()]
    _emit(args, out, rows)
    return EXIT_OK


def cmd_check(args) -> int:
    P = _load(args)
    tol = _tols(args)
    kw = dict(tol_eq=tol["tol_eq"], tol_violate=tol["tol_violate"], resolution=args.resolution)
    u = _direction(args, P.dim)
    if u is not None:
        reports = [checker.check_direction(P, u, **kw)]
    else:
        reports = checker.check_all_facets(P, **kw)
        if args.all_directions:
            reports += _vacuous_reports(P, kw)
    dicts = [r.to_dict() for r in reports]
    rows = [{**{f"u{j}": c for j, c in enumerate(d["direction"])},
             **{k: v for k, v in d.items() if k != "direction"}} for d in dicts]
    _emit(args, {"reports": dicts}, rows)
    violated = any(r.classification == checker.VIOLATED for r in reports)
    return EXIT_VIOLATION if violated else EXIT_OK


def _vacuous_reports(P, kw) -> list:
    # coordinate axes that carry no facet on either side: psi is 0 there
    axes = checker.facet_axes(P)
    out = []
    for e in np.eye(P.dim):
        if any(abs(abs(float(e @ a)) - 1) <= 1e-12 for a in axes):
            continue
        out.append(checker.check_direction(P, e, **kw))
    return out


def cmd_symmetrize(args) -> int:
    P = _load(args)
    u = _direction(args, P.dim)
    if u is None:
        u = checker.facet_axes(P)[0]
    prof = symmetrization.profile(P, u, args.resolution)
    if args.output == "csv":
        prof.write_csv(sys.stdout)
        return EXIT_OK
    cd = symmetrization.concavity_defect(prof)
    out = {"direction": u.tolist(), "t_lo": prof.t_lo, "t_hi": prof.t_hi,
           "volume_profile": prof.volume(), "volume": P.volume,
           "concavity_defect": cd.concavity, "linearity_defect": cd.linearity,
           "breakpoints": prof.breakpoints.tolist(), "samples": len(prof.ts)}
    try:
        out["prop1"] = symmetrization.verify_prop1(P, u, prof=prof).to_dict()
    except symmetrization.PreconditionError as exc:
        out["prop1"] = {"skipped": str(exc)}
    _emit(args, out)
    return EXIT_OK


def cmd_cone_table(args) -> int:
    rows = truncated_cone.cone_table(args.n, args.t)
    if args.output is None:
        args.output = "csv"
    if args.output == "json":
        for r in rows:
            for k, v in r.items():
                if isinstance(v, float) and math.isinf(v):
                    r[k] = "inf"
        _emit(args, {"rows": rows})
    else:
        _emit(args, None, rows)
    return EXIT_OK


def cmd_reduce(args) -> int:
    P = _load(args)
    symmetrization.require_centered(P)
    u = _direction(args, P.dim)
    if u is None:
        u = checker.facet_axes(P)[0]
    prof = symmetrization.profile(P, u, args.resolution)
    bal = reduction.find_balanced(prof)
    cmp_ = reduction.compare(prof, bal)
    spec = lambda f: {"h_lo": f.h_lo, "h_hi": f.h_hi, "r_lo": f.r_lo, "r_hi": f.r_hi}
    out = {"direction": u.tolist(), "volume": prof.volume(),
           "K0": spec(bal.ends.K0), "K1": spec(bal.ends.K1),
           "c0": bal.c0, "c1": bal.c1, "s_star": bal.s_star, "degenerate": bal.degenerate,
           "balanced": spec(bal.frustum), "residual": bal.residual,
           "ratio": reduction.frustum_ratio(bal.frustum), "comparison": cmp_.to_dict()}
    if math.isinf(out["ratio"]):
        out["ratio"] = "inf"
    _emit(args, out)
    return EXIT_OK if cmp_.ok else EXIT_VIOLATION


def cmd_audit(args) -> int:
    if args.replay:
        with open(args.replay) as fh:
            data = json.load(fh)
        records = data["failures"] if isinstance(data, dict) and "failures" in data else data
        results = [vars(audit_mod.replay(rec)) for rec in records]
        _emit(args, {"replayed": results})
        return EXIT_VIOLATION if any(r["failures"] for r in results) else EXIT_OK
    tol = _tols(args)
    cfg = audit_mod.AuditConfig(args.dim, args.count, args.generator, args.seed, args.resolution,
                                args.amplitude, tol["tol_violate"])
    summary = audit_mod.run_audit(cfg)
    if args.failures_out and summary["failures"]:
        with open(args.failures_out, "w") as fh:
            json.dump({"failures": summary["failures"]}, fh, indent=2, default=_json_default)
    _emit(args, summary)
    return EXIT_VIOLATION if summary["failures"] else EXIT_OK


def cmd_verify_lemmas(args) -> int:
    if args.n_min < 3 and not (args.allow_n2 and args.n_min == 2):
        raise UsageError("--n-min must be at least 3 (use --allow-n2 to include n = 2)")
    if args.n_max < args.n_min:
        raise UsageError("--n-max must be >= --n-min")
    fault = _fault_hook(args.inject_p1_fault) if args.inject_p1_fault else None
    start = time.perf_counter()
    certs = []
    for n in range(args.n_min, args.n_max + 1):
        if n == 2:
            certs.append(exact_poly.n2_identity())
            continue
        lemma1_method = {"chain": "auto", "both": "auto"}.get(args.method, args.method)
        certs.extend(exact_poly.verify_lemma1(n, lemma1_method))
        certs.append(exact_poly.verify_lemma2(n, method=args.method, p1_fault=fault))
    elapsed = time.perf_counter() - start
    failed = [c for c in certs if not c.proven]
    out = {"certificates": [c.to_dict() for c in certs], "all_proven": not failed,
           "seconds": round(elapsed, 3)}
    _emit(args, out, [{"n": c.n, "target": c.target, "method": c.method, "status": c.status,
                       "stage": c.stage or ""} for c in certs])
    for c in failed:
        log.error("n=%d %s failed at stage %s: %s", c.n, c.target, c.stage, c.message)
    return EXIT_CERT if failed else EXIT_OK


def _fault_hook(spec: str):
    """``INDEX:DELTA`` adds DELTA to the INDEX-th coefficient of p1 (test hook)."""
    try:
        i, d = spec.split(":")
        i, d = int(i), int(d)
    except ValueError:
        raise UsageError("fault spec must look like INDEX:DELTA") from None

    def hook(terms):
        terms = list(terms)
        c, e = terms[i]
        terms[i] = (c + d, e)
        return terms
    return hook


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv"), default=None,
                        help="json (default) or csv; cone-table defaults to csv")
    common.add_argument("--resolution", type=int, default=symmetrization.DEFAULT_RESOLUTION)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", action="append", metavar="NAME=VALUE",
                        help=f"override a tolerance; NAME is one of {', '.join(TOL_NAMES)}")
    common.add_argument("-v", "--verbose", action="store_true")

    # global flags live on every subcommand so they may follow the subcommand name
    p = argparse.ArgumentParser(prog="conevol", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def body_cmd(name, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("file", help="polytope JSON (or OFF, vertices only)")
        sp.add_argument("--center", action="store_true", help="translate to the centroid first")
        return sp

    sp = body_cmd("measure", "surface, L_p and cone-volume measures")
    sp.add_argument("--p", type=float, default=0.0, help="L_p exponent (default 0)")
    sp.set_defaults(func=cmd_measure)

    sp = body_cmd("check", "evaluate the refined inequality on facet axes")
    sp.add_argument("--direction", type=float, nargs="+")
    sp.add_argument("--all-directions", action="store_true",
                    help="also report coordinate axes that carry no facet")
    sp.set_defaults(func=cmd_check)

    sp = body_cmd("symmetrize", "section-area profile and its checks")
    sp.add_argument("--direction", type=float, nargs="+")
    sp.set_defaults(func=cmd_symmetrize)

    sp = body_cmd("reduce", "equal-volume frustum reduction along a direction")
    sp.add_argument("--direction", type=float, nargs="+")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("cone-table", help="truncated-cone closed forms", parents=[common])
    sp.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5])
    sp.add_argument("--t", type=float, nargs="+", default=[1.1, 1.5, 2.0, 5.0, 20.0, 100.0])
    sp.set_defaults(func=cmd_cone_table)

    sp = sub.add_parser("audit", help="seeded Monte-Carlo audit", parents=[common])
    sp.add_argument("--dim", type=int, default=3)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--generator", choices=audit_mod.gen.GENERATORS, default="random-hull")
    sp.add_argument("--amplitude", type=float, default=audit_mod.gen.DEFAULT_AMPLITUDE)
    sp.add_argument("--failures-out", help="write failure records here for --replay")
    sp.add_argument("--replay", help="re-run the failure records in this file")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("verify-lemmas", help="exact polynomial certificates", parents=[common])
    sp.add_argument("--n-min", type=int, default=3)
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--method", choices=("chain", "sturm", "both"), default="both")
    sp.add_argument("--allow-n2", action="store_true")
    sp.add_argument("--inject-p1-fault", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify_lemmas)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.output is None and args.func is not cmd_cone_table:
        args.output = "json"
    try:
        return args.func(args)
    except BrokenPipeError:
        # downstream reader closed early (for example `| head`); not an error of ours
        sys.stdout = None
        return EXIT_OK
    except (UsageError, ParseError, PolytopeError, DomainError,
            symmetrization.PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # remaining ValueErrors come from argument validation (e.g. AuditConfig)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except reduction.InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
