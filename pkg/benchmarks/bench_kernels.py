"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row is the best wall time over ``--repeat`` runs after one warm-up call
(the warm-up also absorbs numba compilation). Results of the two backends are
compared before timing so a fast wrong kernel cannot slip through.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from conevol import kernels
from conevol import polytope as pc
from conevol.symmetrization import profile


def _cases():
    rng = np.random.default_rng(0)
    bodies = {d: pc.from_vertices(d, rng.standard_normal((4 * d, d))).translate_to_centroid()
              for d in (3, 4, 5)}
    cases = []
    for d in (3, 4, 5):
        pts = np.random.default_rng(d).standard_normal((4 * d, d))
        cases.append((f"hull dim {d} ({4 * d} pts)", lambda pts=pts, d=d: pc.from_vertices(d, pts).volume))
    for d in (3, 4):
        P = bodies[d]
        hs = [{"normal": n.tolist(), "offset": float(o)} for n, o in zip(P.normals, P.offsets)]
        cases.append((f"halfspaces dim {d} ({len(hs)} facets)",
                      lambda hs=hs, d=d: pc.from_halfspaces(d, hs).volume))
    for d in (3, 4, 5):
        P = bodies[d]
        cases.append((f"profile dim {d} res 2048",
                      lambda P=P: profile(P, P.normals[0], 2048).volume()))
    return cases


def _best(fn, repeat: int) -> tuple[float, float]:
    value = fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    print(f"{'case':34s}" + "".join(f"{b:>12s}" for b in backends) + "   speedup")
    for name, fn in _cases():
        times, values = [], []
        for b in backends:
            with kernels.use_backend(b):
                t, v = _best(fn, args.repeat)
            times.append(t)
            values.append(v)
        if not np.allclose(values, values[0], rtol=1e-10):
            raise SystemExit(f"{name}: backends disagree: {values}")
        ratio = times[-1] / times[0] if len(times) > 1 else 1.0
        print(f"{name:34s}" + "".join(f"{1e3 * t:10.2f}ms" for t in times) + f"   {ratio:6.1f}x")


if __name__ == "__main__":
    main()
