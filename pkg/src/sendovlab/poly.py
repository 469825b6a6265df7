"""Arbitrary-precision monic complex polynomials and simultaneous root finding.

Polynomials are immutable: coefficients are stored constant-term first at the
precision of their :class:`~sendovlab.precision.PrecisionContext`, and the root
list used to build a polynomial is kept alongside the coefficients so that
evaluation near a root can use the better-conditioned product form.
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Sequence

import numpy as np
from mpmath import mp

from .precision import PrecisionContext, context_for_degree


class NonConvergenceError(RuntimeError):
    """Root refinement did not meet the convergence criteria.

    Carries the best iterates and their scaled residuals so callers can
    diagnose (or retry at higher precision) instead of silently trusting a
    half-converged answer.
    """

    def __init__(self, message: str, points=(), residuals=(), iterations: int = 0):
        super().__init__(message)
        self.points = tuple(points)
        self.residuals = tuple(residuals)
        self.iterations = iterations


@dataclasses.dataclass(frozen=True)
class Polynomial:
    """Complex polynomial with coefficients constant-term first.

    Public constructors always normalize to a monic polynomial; only
    :func:`derivative` produces the non-monic internal form (leading
    coefficient ``n``), which callers must divide by ``n`` if they need a
    monic polynomial.
    """

    coefficients: tuple
    ctx: PrecisionContext
    known_roots: Optional[tuple] = None

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __repr__(self):
        tail = ", from roots" if self.known_roots is not None else ""
        return f"Polynomial(degree={self.degree}{tail}, digits={self.ctx.significant_digits})"


@dataclasses.dataclass(frozen=True)
class CriticalSet:
    """Roots found by simultaneous iteration, with convergence metadata.

    For the derivative of a degree-n polynomial this holds the n-1 critical
    points counted with multiplicity.  Members of a near-coincident cluster
    are all reported at the cluster centroid; ``clusters`` records any
    centroid with multiplicity >= 2.
    """

    points: tuple
    residuals: tuple
    converged: bool
    clusters: tuple = ()
    iterations: int = 0

    def __len__(self):
        return len(self.points)


def _to_mpc(z):
    return mp.mpc(z)


def _mul_linear(coeffs, root):
    """Multiply ascending coefficient list by (z - root)."""
    out = [mp.mpc(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k] -= c * root
        out[k + 1] += c
    return out


def _mul(a, b):
    """Convolve two ascending coefficient lists."""
    out = [mp.mpc(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def from_roots(roots: Sequence, ctx: Optional[PrecisionContext] = None) -> Polynomial:
    """Monic polynomial with the given roots, expanded at context precision."""
    if len(roots) == 0:
        raise ValueError("from_roots requires at least one root")
    if ctx is None:
        ctx = context_for_degree(len(roots))
    with ctx.workdps():
        rr = tuple(_to_mpc(r) for r in roots)
        coeffs = [mp.mpc(1)]
        for r in rr:
            coeffs = _mul_linear(coeffs, r)
        return Polynomial(tuple(coeffs), ctx, known_roots=rr)


def from_coefficients(coefficients: Sequence, ctx: Optional[PrecisionContext] = None,
                      known_roots: Optional[Sequence] = None) -> Polynomial:
    """Polynomial from an ascending coefficient list, normalized to monic.

    When ``known_roots`` is supplied the expansion of the product form is
    checked against the normalized coefficients; a mismatch beyond the
    context tolerance is rejected.
    """
    coeffs = list(coefficients)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree >= 1")
    if ctx is None:
        ctx = context_for_degree(len(coeffs) - 1)
    with ctx.workdps():
        cc = [_to_mpc(c) for c in coeffs]
        lead = cc[-1]
        if lead != 1:
            cc = [c / lead for c in cc]
        roots = None
        if known_roots is not None:
            if len(known_roots) != len(cc) - 1:
                raise ValueError("known_roots length must equal the degree")
            roots = tuple(_to_mpc(r) for r in known_roots)
            expanded = from_roots(roots, ctx)
            eps = ctx.convergence_epsilon
            for a, b in zip(expanded.coefficients, cc):
                if abs(a - b) > eps * (abs(b) + 1):
                    raise ValueError(
                        "known_roots do not reproduce the coefficients at context precision"
                    )
        return Polynomial(tuple(cc), ctx, known_roots=roots)


def from_quadratic_factors(linear_roots: Sequence, quad_coeffs: Sequence,
                           ctx: Optional[PrecisionContext] = None) -> Polynomial:
    """Product of (z - r) linear factors and unit-constant quadratics z^2 + c z + 1.

    Each quadratic coefficient must satisfy |c| <= 2, which puts that factor's
    conjugate root pair exactly on the unit circle; larger values would push
    roots outside the closed unit disk and are rejected.
    """
    degree = len(linear_roots) + 2 * len(quad_coeffs)
    if degree < 1:
        raise ValueError("at least one factor is required")
    if ctx is None:
        ctx = context_for_degree(degree)
    with ctx.workdps():
        roots = []
        coeffs = [mp.mpc(1)]
        for r in linear_roots:
            r = _to_mpc(r)
            roots.append(r)
            coeffs = _mul_linear(coeffs, r)
        for c in quad_coeffs:
            c = mp.mpf(c)
            if abs(c) > 2:
                raise ValueError(f"quadratic coefficient {c} has |c| > 2; "
                                 "factor roots would leave the unit circle")
            # roots (-c +- sqrt(c^2-4))/2, a conjugate pair of modulus 1
            disc = mp.sqrt(mp.mpc(c * c - 4))
            roots.append((-c + disc) / 2)
            roots.append((-c - disc) / 2)
            coeffs = _mul(coeffs, [mp.mpc(1), mp.mpc(c), mp.mpc(1)])
        return Polynomial(tuple(coeffs), ctx, known_roots=tuple(roots))


def derivative(p: Polynomial) -> Polynomial:
    """Coefficient-wise derivative; the result keeps leading coefficient n."""
    if p.degree < 1:
        raise ValueError("derivative requires degree >= 1")
    with p.ctx.workdps():
        coeffs = tuple(k * c for k, c in enumerate(p.coefficients) if k > 0)
        return Polynomial(coeffs, p.ctx)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    """Coefficient-wise sum on the internal representation (no normalization)."""
    ctx = p.ctx if p.ctx.dps >= q.ctx.dps else q.ctx
    with ctx.workdps():
        n = max(len(p.coefficients), len(q.coefficients))
        out = [mp.mpc(0)] * n
        for k, c in enumerate(p.coefficients):
            out[k] += c
        for k, c in enumerate(q.coefficients):
            out[k] += c
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return Polynomial(tuple(out), ctx)


def rotate(p: Polynomial, factor) -> Polynomial:
    """Polynomial whose roots are the originals multiplied by ``factor``.

    For |factor| = 1 this is the rigid rotation used to move a non-real beta
    onto the interval [0, 1]; it keeps the polynomial monic.
    """
    with p.ctx.workdps():
        u = _to_mpc(factor)
        n = p.degree
        coeffs = tuple(c * u ** (n - k) for k, c in enumerate(p.coefficients))
        roots = None
        if p.known_roots is not None:
            roots = tuple(r * u for r in p.known_roots)
        return Polynomial(coeffs, p.ctx, known_roots=roots)


def evaluate_horner(p: Polynomial, z):
    """Horner evaluation at context precision."""
    with p.ctx.workdps():
        z = _to_mpc(z)
        acc = mp.mpc(p.coefficients[-1])
        for c in reversed(p.coefficients[:-1]):
            acc = acc * z + c
        return acc


def evaluate_product(p: Polynomial, z):
    """Product-form evaluation; requires known_roots."""
    if p.known_roots is None:
        raise ValueError("product-form evaluation requires known_roots")
    with p.ctx.workdps():
        z = _to_mpc(z)
        acc = mp.mpc(p.leading)
        for r in p.known_roots:
            acc *= z - r
        return acc


def evaluate(p: Polynomial, z):
    """Evaluate P(z); uses the product form when the roots are known."""
    if p.known_roots is not None:
        return evaluate_product(p, z)
    return evaluate_horner(p, z)


def _horner_pair(coeffs, z):
    """(P(z), P'(z)) in one pass over ascending coefficients."""
    acc = coeffs[-1]
    der = mp.mpc(0)
    for c in reversed(coeffs[:-1]):
        der = der * z + acc
        acc = acc * z + c
    return acc, der


def _initial_guesses(coeffs, degree):
    """Starting points for the simultaneous iteration.

    A double-precision companion-matrix eigensolve is accurate enough to put
    every guess in the basin of its root for the degrees handled here; the
    uniformly-spread circle is the fallback for very high degree or overflow.
    """
    if degree <= 64:
        try:
            arr = np.array([complex(c) for c in reversed(coeffs)], dtype=complex)
            if np.all(np.isfinite(arr)):
                guesses = np.roots(arr)
                if len(guesses) == degree and np.all(np.isfinite(guesses)):
                    return [mp.mpc(g) for g in guesses]
        except (ValueError, ArithmeticError, np.linalg.LinAlgError):
            pass
    radius = 1 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
    return [radius * mp.exp(mp.mpc(0, 2 * mp.pi * k / degree + mp.mpf(1) / 2))
            for k in range(degree)]


def _scaled_residual(coeffs, z, lead_abs, degree):
    val, _ = _horner_pair(coeffs, z)
    return abs(val) / (lead_abs * max(mp.mpf(1), abs(z)) ** degree)


def _find_clusters(points, threshold):
    """Group indices whose iterates sit within ``threshold`` of each other."""
    n = len(points)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(points[i] - points[j]) < threshold:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def find_roots(p: Polynomial, ctx: Optional[PrecisionContext] = None) -> CriticalSet:
    """All roots of ``p`` with multiplicity, by Aberth-Ehrlich simultaneous iteration.

    All roots are refined together (no deflation, which would accumulate error
    across the ~50 unit-circle roots of the degree-52 construction).  A root
    counts as converged when its scaled residual |P(z)| / (|lc| max(1,|z|)^n)
    and its last correction are both below the context epsilon; members of a
    tight cluster (a numerically multiple root) are exempted from the
    correction test, which no finite working precision lets them meet, and are
    reported at the cluster centroid with aggregate multiplicity.

    Non-convergence is never silent: the returned set carries
    ``converged=False`` together with the best iterates and residuals.
    """
    if ctx is None:
        ctx = p.ctx
    n = p.degree
    if n < 1:
        raise ValueError("find_roots requires degree >= 1")
    with ctx.workdps():
        coeffs = [_to_mpc(c) for c in p.coefficients]
        lead_abs = abs(coeffs[-1])
        eps = ctx.convergence_epsilon

        if n == 1:
            root = -coeffs[0] / coeffs[1]
            res = _scaled_residual(coeffs, root, lead_abs, n)
            return CriticalSet((root,), (res,), True, (), 1)

        z = _initial_guesses(coeffs, n)
        corrections = [mp.inf] * n
        tiny = mp.mpf(10) ** (-2 * ctx.dps)
        iterations = 0
        converged = False
        cluster_groups: list = []

        for iterations in range(1, ctx.max_iterations + 1):
            for i in range(n):
                val, der = _horner_pair(coeffs, z[i])
                if val == 0:
                    corrections[i] = mp.mpf(0)
                    continue
                if der == 0:
                    # sitting on a critical point of the map: nudge off it
                    z[i] += eps * (1 + abs(z[i]))
                    corrections[i] = mp.inf
                    continue
                newton = val / der
                s = mp.mpc(0)
                for j in range(n):
                    if j == i:
                        continue
                    diff = z[i] - z[j]
                    if abs(diff) < tiny:
                        diff = mp.mpc(tiny)
                    s += 1 / diff
                denom = 1 - newton * s
                w = newton if denom == 0 else newton / denom
                z[i] -= w
                corrections[i] = abs(w)

            residuals = [_scaled_residual(coeffs, zi, lead_abs, n) for zi in z]
            if all(r < eps for r in residuals):
                pending = [i for i in range(n) if corrections[i] >= eps]
                if not pending:
                    converged = True
                else:
                    cluster_groups = _find_clusters(z, ctx.cluster_threshold)
                    clustered = set()
                    for g in cluster_groups:
                        clustered.update(g)
                    converged = all(i in clustered for i in pending)
                if converged:
                    break

        cluster_groups = _find_clusters(z, ctx.cluster_threshold)
        clusters = []
        for g in cluster_groups:
            centroid = sum(z[i] for i in g) / len(g)
            for i in g:
                z[i] = centroid
            clusters.append((centroid, len(g)))
        residuals = [_scaled_residual(coeffs, zi, lead_abs, n) for zi in z]

        return CriticalSet(tuple(z), tuple(residuals), converged,
                           tuple(clusters), iterations)


def roots_of(p: Polynomial, ctx: Optional[PrecisionContext] = None):
    """The polynomial's roots: known exactly from construction, or computed.

    Returns a tuple of points.  Raises :class:`NonConvergenceError` when the
    roots have to be computed and the iteration does not converge.
    """
    if p.known_roots is not None:
        return p.known_roots
    found = find_roots(p, ctx)
    if not found.converged:
        raise NonConvergenceError(
            f"root finding did not converge after {found.iterations} iterations",
            points=found.points, residuals=found.residuals,
            iterations=found.iterations)
    return found.points
