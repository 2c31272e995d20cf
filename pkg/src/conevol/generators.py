"""Seeded random bodies for the audit harness.

Every body is a pure function of ``(seed, index)`` through
``numpy.random.default_rng([seed, index])``, so audit rows can be replayed
one at a time and in any order.
"""
from __future__ import annotations

import math

import numpy as np

from . import polytope as pc
from .symmetrization import SliceProfile, profile_from_function, unit_ball_volume
from .truncated_cone import volume_and_centroid

GENERATORS = ("random-hull", "perturbed-prism", "perturbed-cone", "frustum")
DEFAULT_AMPLITUDE = 0.05


def rng_for(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def random_hull(dim: int, rng: np.random.Generator) -> pc.Polytope:
    """Hull of ``4 dim`` standard normal points."""
    return pc.from_vertices(dim, rng.standard_normal((4 * dim, dim)), name="random-hull")


def perturbed_prism(dim: int, rng: np.random.Generator, amplitude: float = DEFAULT_AMPLITUDE
                    ) -> pc.Polytope:
    pts = pc.cube(dim).vertices
    pts = pts + rng.uniform(-amplitude, amplitude, pts.shape)
    return pc.from_vertices(dim, pts, name="perturbed-prism")


def perturbed_cone(dim: int, rng: np.random.Generator, amplitude: float = DEFAULT_AMPLITUDE
                   ) -> pc.Polytope:
    apex = np.zeros(dim)
    apex[-1] = 2.0
    pts = np.vstack([pc.cube_base(dim), apex])
    pts = pts + rng.uniform(-amplitude, amplitude, pts.shape)
    return pc.from_vertices(dim, pts, name="perturbed-cone")


def frustum_profile(dim: int, ratio: float, resolution: int = 2048) -> SliceProfile:
    """Centred profile of the frustum ``1 <= h <= ratio`` with radius ``h``, big base on top."""
    _, c = volume_and_centroid(dim, ratio)
    w = unit_ball_volume(dim - 1)
    return profile_from_function(dim, lambda t: w * (t + c) ** (dim - 1),
                                 1.0 - c, ratio - c, resolution)


def random_frustum_ratio(rng: np.random.Generator) -> float:
    """Ratios spread log-uniformly over (1, 1000]."""
    return float(math.exp(rng.uniform(1e-3, math.log(1000.0))))


def make_polytope(generator: str, dim: int, rng: np.random.Generator,
                  amplitude: float = DEFAULT_AMPLITUDE) -> pc.Polytope:
    if generator == "random-hull":
        return random_hull(dim, rng)
    if generator == "perturbed-prism":
        return perturbed_prism(dim, rng, amplitude)
    if generator == "perturbed-cone":
        return perturbed_cone(dim, rng, amplitude)
    raise ValueError(f"no polytope generator named {generator!r}")
