"""Random root configurations for property suites.

Disk points are drawn area-uniformly (radius = sqrt(u), angle uniform) to
avoid center bias.  Generators work in double precision: the sampled roots
*define* the test polynomial, so they need no extra digits themselves.
"""

from __future__ import annotations

import cmath
import math
import random
from typing import List, Tuple


def disk_point(rng: random.Random) -> complex:
    r = math.sqrt(rng.random())
    theta = 2 * math.pi * rng.random()
    return cmath.rect(r, theta)


def disk_roots(rng: random.Random, degree: int, min_separation: float = 0.0) -> List[complex]:
    """``degree`` points in the unit disk, optionally pairwise separated."""
    for _ in range(200):
        roots = [disk_point(rng) for _ in range(degree)]
        if min_separation <= 0:
            return roots
        ok = all(abs(roots[i] - roots[j]) >= min_separation
                 for i in range(degree) for j in range(i + 1, degree))
        if ok:
            return roots
    raise RuntimeError("could not sample separated roots; lower min_separation")


def complex_instance(rng: random.Random, degree: int,
                     min_separation: float = 0.0) -> Tuple[List[complex], float]:
    """Roots plus a real beta in [0, 1].

    The configuration is rotated so the designated root lands on [0, 1],
    which is the normalization all the bound functions assume.
    """
    roots = disk_roots(rng, degree, min_separation)
    pivot = roots[0]
    if abs(pivot) > 0:
        u = pivot.conjugate() / abs(pivot)
        roots = [z * u for z in roots]
    beta = abs(pivot)
    roots[0] = beta
    return roots, beta


def real_rooted_instance(rng: random.Random, degree: int) -> Tuple[List[float], float, int]:
    """All-real roots in [-1, 1]; returns (sorted roots, beta, beta index)."""
    roots = sorted(rng.uniform(-1, 1) for _ in range(degree))
    k = rng.randrange(degree)
    return roots, roots[k], k


def collinear_instance(rng: random.Random, degree: int) -> Tuple[List[complex], complex]:
    """Roots on a random chord of the unit disk; beta is one of them."""
    theta = 2 * math.pi * rng.random()
    direction = cmath.rect(1.0, theta)
    offset = 0.9 * rng.random()
    foot = cmath.rect(offset, theta + math.pi / 2)
    half_chord = math.sqrt(max(0.0, 1 - offset * offset))
    roots = [foot + rng.uniform(-half_chord, half_chord) * direction
             for _ in range(degree)]
    return roots, roots[rng.randrange(degree)]


def real_quartic_instance(rng: random.Random) -> Tuple[List[float], List[complex], float]:
    """A real-coefficient quartic member: (real roots, conjugate pairs, beta).

    beta is always one of the real roots; conjugate pairs are kept as exact
    pairs so the coefficients come out exactly real.
    """
    if rng.random() < 0.5:
        reals = [rng.uniform(-1, 1) for _ in range(4)]
        pairs: List[complex] = []
    else:
        reals = [rng.uniform(-1, 1) for _ in range(2)]
        z = disk_point(rng)
        pairs = [complex(z.real, abs(z.imag))]
    beta = rng.choice(reals)
    return reals, pairs, beta
