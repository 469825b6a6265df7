"""Multi-start search for lower bounds on the extremal distance r_n(beta).

The objective d(P, beta) is maximized over the n-1 free roots (beta stays
fixed as a hard root) by derivative-free coordinate perturbation with
geometric step decay: the objective has min-distance kinks where the nearest
critical point switches, so gradient methods would need subgradients.  Inner
evaluations run in double precision via a companion-matrix eigensolve; the
winning configuration is re-verified at full working precision, so every
reported value is realized by a concrete verified member of S(beta).
"""

from __future__ import annotations

import cmath
import csv
import dataclasses
import math
import random
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from mpmath import mp

from . import metrics, poly, sampling
from .precision import PrecisionContext, context_for_degree

CONSTRAINTS = ("none", "real_rooted", "collinear", "real_coefficients")


@dataclasses.dataclass(frozen=True)
class SearchConfig:
    degree: int
    beta: float
    starts: int = 12
    max_steps: int = 160
    step_init: float = 0.25
    step_decay: float = 0.5
    min_step: float = 1e-7
    seed: int = 0
    constraint: str = "none"
    warm_start: Optional[tuple] = None

    def __post_init__(self):
        if self.degree < 2:
            raise ValueError("degree must be >= 2")
        if not 0 <= self.beta <= 1:
            raise ValueError("beta must lie in [0, 1]")
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.constraint not in CONSTRAINTS:
            raise ValueError(f"unknown constraint {self.constraint!r}")
        if not (0 < self.step_decay < 1) or self.step_init <= 0:
            raise ValueError("step sizes must be positive and decreasing")
        if self.warm_start is not None and len(self.warm_start) != self.degree - 1:
            raise ValueError("warm start must supply the n-1 free roots")


@dataclasses.dataclass(frozen=True)
class SearchRecord:
    """Best configuration found; best_d is a sound lower bound for r_n(beta)."""

    config: SearchConfig
    best_roots: tuple
    best_d: object
    evaluations: int
    per_start_bests: tuple


class _Space:
    """Parameter space for one constraint: encoding, projection, inits."""

    def __init__(self, dim: int, to_roots: Callable, project: Callable):
        self.dim = dim
        self.to_roots = to_roots
        self.project = project


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def _space_none(n: int, beta: float) -> _Space:
    def to_roots(params):
        return [complex(params[2 * i], params[2 * i + 1]) for i in range(n - 1)]

    def project(params):
        out = list(params)
        for i in range(n - 1):
            z = complex(out[2 * i], out[2 * i + 1])
            m = abs(z)
            if m > 1:
                z /= m
                out[2 * i], out[2 * i + 1] = z.real, z.imag
        return out

    return _Space(2 * (n - 1), to_roots, project)


def _space_real_rooted(n: int, beta: float) -> _Space:
    def to_roots(params):
        return [complex(t, 0.0) for t in params]

    def project(params):
        return [_clamp(t, -1.0, 1.0) for t in params]

    return _Space(n - 1, to_roots, project)


def _space_collinear(n: int, beta: float) -> _Space:
    # params = [theta, t_1 .. t_{n-1}]; roots = beta + t * e^(i theta).
    # The line must pass through beta because beta is itself a root.
    def feasible(theta):
        c = math.cos(theta)
        s = math.sin(theta)
        disc = math.sqrt(max(0.0, 1 - beta * beta * s * s))
        return -beta * c - disc, -beta * c + disc

    def to_roots(params):
        u = cmath.rect(1.0, params[0])
        return [beta + t * u for t in params[1:]]

    def project(params):
        out = list(params)
        lo, hi = feasible(out[0])
        out[1:] = [_clamp(t, lo, hi) for t in out[1:]]
        return out

    space = _Space(n, to_roots, project)
    space.feasible = feasible
    return space


def _quartic_structures(n: int) -> List[Tuple[int, int]]:
    """(real_count, pair_count) splittings of the n-1 free roots."""
    out = []
    for pairs in range((n - 1) // 2 + 1):
        out.append((n - 1 - 2 * pairs, pairs))
    return out


def _space_real_coefficients(n: int, beta: float, reals: int, pairs: int) -> _Space:
    def to_roots(params):
        roots = [complex(t, 0.0) for t in params[:reals]]
        for j in range(pairs):
            a, b = params[reals + 2 * j], params[reals + 2 * j + 1]
            roots.append(complex(a, b))
            roots.append(complex(a, -b))
        return roots

    def project(params):
        out = [_clamp(t, -1.0, 1.0) for t in params[:reals]]
        for j in range(pairs):
            a, b = params[reals + 2 * j], params[reals + 2 * j + 1]
            m = math.hypot(a, b)
            if m > 1:
                a, b = a / m, b / m
            out.extend([a, b])
        return out

    return _Space(reals + 2 * pairs, to_roots, project)


def _make_space(config: SearchConfig, start: int) -> _Space:
    n, beta = config.degree, config.beta
    if config.constraint == "none":
        return _space_none(n, beta)
    if config.constraint == "real_rooted":
        return _space_real_rooted(n, beta)
    if config.constraint == "collinear":
        return _space_collinear(n, beta)
    structures = _quartic_structures(n)
    reals, pairs = structures[start % len(structures)]
    return _space_real_coefficients(n, beta, reals, pairs)


def _params_from_roots(space: _Space, config: SearchConfig, roots: Sequence[complex]):
    """Encode explicit roots into the unconstrained space (warm starts)."""
    params = []
    for z in roots:
        params.extend([z.real, z.imag])
    return space.project(params)


def _initial_params(space: _Space, config: SearchConfig, start: int, rng: random.Random):
    """Initialization mix: warm start first, then the known extremal shapes
    (all free roots at -1; the roots-of-unity pattern), then random draws."""
    n, beta = config.degree, config.beta
    m = n - 1
    structured = start
    if config.warm_start is not None:
        if start == 0 and config.constraint == "none":
            return _params_from_roots(space, config, [complex(z) for z in config.warm_start])
        structured = start - 1
    if config.constraint == "none":
        if structured == 0:
            roots = [complex(-1.0, 0.0)] * m
        elif structured == 1:
            roots = [cmath.rect(1.0, 2 * math.pi * k / n) for k in range(1, n)]
        else:
            roots = [sampling.disk_point(rng) for _ in range(m)]
        params = []
        for z in roots:
            params.extend([z.real, z.imag])
        return space.project(params)
    if config.constraint == "real_rooted":
        if structured == 0:
            params = [-1.0] * m
        elif structured == 1:
            params = [-1 + 2 * k / max(m - 1, 1) for k in range(m)] if m > 1 else [1.0]
        else:
            params = [rng.uniform(-1, 1) for _ in range(m)]
        return space.project(params)
    if config.constraint == "collinear":
        if structured == 0:
            theta = 0.0
            lo, _ = space.feasible(theta)
            params = [theta] + [lo] * m
        elif structured == 1:
            theta = 0.0
            lo, hi = space.feasible(theta)
            params = [theta] + [lo + (hi - lo) * (k + 1) / (m + 1) for k in range(m)]
        else:
            theta = rng.uniform(0, math.pi)
            lo, hi = space.feasible(theta)
            params = [theta] + [rng.uniform(lo, hi) for _ in range(m)]
        return space.project(params)
    # real_coefficients: the structure (reals, pairs) cycles with the start index
    structures = _quartic_structures(n)
    reals, pairs = structures[start % len(structures)]
    if structured == 0:
        params = [-1.0] * reals + [-0.5, 0.5] * pairs
    else:
        params = [rng.uniform(-1, 1) for _ in range(reals)]
        for _ in range(pairs):
            z = sampling.disk_point(rng)
            params.extend([z.real, abs(z.imag)])
    return space.project(params)


def _distance_double(roots: Sequence[complex], beta: float) -> float:
    """d(P, beta) in double precision; -inf on numerical failure."""
    try:
        coeffs = np.poly(np.asarray(list(roots) + [beta], dtype=complex))
        crit = np.roots(np.polyder(coeffs))
        if crit.size == 0 or not np.all(np.isfinite(crit)):
            return -math.inf
        return float(np.min(np.abs(crit - beta)))
    except (ValueError, ArithmeticError, np.linalg.LinAlgError):
        return -math.inf


def _hill_climb(space: _Space, params, beta: float, config: SearchConfig):
    params = space.project(list(params))
    best = _distance_double(space.to_roots(params), beta)
    evals = 1
    step = config.step_init
    for _ in range(config.max_steps):
        improved = False
        for idx in range(space.dim):
            for delta in (step, -step):
                cand = list(params)
                cand[idx] += delta
                cand = space.project(cand)
                value = _distance_double(space.to_roots(cand), beta)
                evals += 1
                if value > best:
                    best, params = value, cand
                    improved = True
        if not improved:
            step *= config.step_decay
            if step < config.min_step:
                break
    return best, params, evals


def _verify_best(roots: Sequence[complex], config: SearchConfig,
                 ctx: PrecisionContext):
    """Re-evaluate the winner at working precision on a feasible configuration."""
    with ctx.workdps():
        clamped = []
        for z in roots:
            zm = mp.mpc(z)
            m = abs(zm)
            if m > 1:
                zm /= m
            clamped.append(zm)
        p = poly.from_roots(clamped + [mp.mpf(config.beta)], ctx)
        inst = metrics.distance(p, config.beta, ctx=ctx)
        return inst, tuple(clamped)


def estimate_rn(config: SearchConfig, ctx: Optional[PrecisionContext] = None) -> SearchRecord:
    """Best d(P, beta) found over ``config.starts`` independent hill climbs.

    Deterministic for a fixed config: each start derives its RNG from the
    seed, the start index and the grid coordinates, and the climbs themselves
    are exhaustive coordinate sweeps with no randomness.
    """
    ctx = ctx or context_for_degree(config.degree)
    per_start: List[float] = []
    best_value = -math.inf
    best_roots: List[complex] = []
    evaluations = 0
    for start in range(config.starts):
        rng = random.Random(f"{config.seed}|{config.degree}|{config.beta!r}|{start}")
        space = _make_space(config, start)
        params = _initial_params(space, config, start, rng)
        value, params, evals = _hill_climb(space, params, config.beta, config)
        evaluations += evals
        per_start.append(value)
        if value > best_value:
            best_value = value
            best_roots = space.to_roots(params)
    inst, verified_roots = _verify_best(best_roots, config, ctx)
    return SearchRecord(config, verified_roots, inst.d_value, evaluations,
                        tuple(per_start))


def bound_for(degree: int, constraint: str) -> metrics.BoundSpec:
    """The sharpest proven bound applicable to a sweep row."""
    if constraint == "real_rooted":
        from . import line_case
        value = line_case.allreal_bound(degree)
        return metrics.BoundSpec("allreal-max", lambda b, v=value: v)
    if constraint == "collinear":
        return metrics.line_bound()
    if constraint == "real_coefficients" and degree == 4:
        return metrics.real_quartic_bound()
    if degree == 2:
        return metrics.degree2_bound()
    if degree == 3:
        return metrics.degree3_bound()
    return metrics.conjecture_bound()


@dataclasses.dataclass(frozen=True)
class SweepRow:
    degree: int
    beta: float
    record: SearchRecord
    bound_name: str
    bound_value: object
    margin: object
    verdict: str

    @property
    def is_finding(self) -> bool:
        return self.verdict == metrics.BoundVerdict.VIOLATED.value


def sweep(degrees: Sequence[int], betas: Sequence[float], template: SearchConfig,
          warm_start: Optional[tuple] = None) -> List[SweepRow]:
    """Grid of search records; margins against the applicable proven bound.

    A negative margin for an unconstrained degree >= 5 row is a
    conjecture-relevant finding, reported in the row verdict rather than
    raised as an error.
    """
    rows = []
    for degree in degrees:
        for beta in betas:
            warm = warm_start if (warm_start is not None
                                  and len(warm_start) == degree - 1) else None
            config = dataclasses.replace(template, degree=degree, beta=float(beta),
                                         warm_start=warm)
            record = estimate_rn(config)
            spec = bound_for(degree, config.constraint)
            with mp.workdps(30):
                bound_value = mp.mpf(spec.eval(mp.mpf(beta)))
                margin = bound_value - record.best_d
                verdict = (metrics.BoundVerdict.HOLDS if margin >= -mp.mpf("1e-9")
                           else metrics.BoundVerdict.VIOLATED)
            rows.append(SweepRow(degree, float(beta), record, spec.name,
                                 bound_value, margin, verdict.value))
    return rows


def write_sweep_csv(rows: Sequence[SweepRow], path, digits: int = 30) -> None:
    """CSV with decimal strings at full precision."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["beta", "degree", "d_value", "bound_name", "bound_value",
                         "margin", "verdict", "starts", "evaluations", "seed"])
        for row in rows:
            writer.writerow([
                repr(row.beta), row.degree, mp.nstr(row.record.best_d, digits),
                row.bound_name, mp.nstr(row.bound_value, digits),
                mp.nstr(row.margin, digits), row.verdict,
                row.record.config.starts, row.record.evaluations,
                row.record.config.seed,
            ])
