"""Real-rooted and collinear-root machinery.

Covers Rolle interlacing of roots and critical points, the all-real bound
max(2/n, 1/sqrt(n)), the product identity n * prod|beta - zeta_i| = |P'(beta)|
at a root beta, and the rigid normalization that moves collinear roots onto
the real interval [-1, 1] without changing d(P, beta).
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Tuple

from mpmath import mp

from . import poly
from .precision import DEFAULT_CONTEXT, PrecisionContext


@dataclasses.dataclass(frozen=True)
class InterlacingWitness:
    """Sorted roots and critical points with the Rolle ordering verified."""

    sorted_roots: tuple
    sorted_critical: tuple
    k: Optional[int]
    interlaced: bool


def _real_parts_checked(points, tol, what: str):
    bad = max(abs(z.imag) for z in points)
    if bad > tol:
        raise ValueError(f"{what} are not all real: largest imaginary part {mp.nstr(bad, 5)}")
    return sorted(z.real for z in points)


def verify_interlacing(p: poly.Polynomial, beta=None,
                       ctx: Optional[PrecisionContext] = None) -> InterlacingWitness:
    """Check z_1 <= zeta_1 <= z_2 <= ... <= zeta_{n-1} <= z_n for real-rooted P.

    Rolle's theorem guarantees this ordering, so a non-interlaced result on a
    genuinely real-rooted polynomial indicates a root-finder defect, not a
    mathematical possibility.  Multiple roots produce ties, which count as
    interlacing; comparisons carry slack at the root-finder tolerance.
    """
    ctx = ctx or p.ctx
    with ctx.workdps():
        tol = ctx.cluster_threshold
        roots = _real_parts_checked(poly.roots_of(p, ctx), tol, "roots")
        crit_set = poly.find_roots(poly.derivative(p), ctx)
        if not crit_set.converged:
            raise poly.NonConvergenceError("critical point iteration did not converge",
                                           points=crit_set.points,
                                           residuals=crit_set.residuals,
                                           iterations=crit_set.iterations)
        crit = _real_parts_checked(crit_set.points, tol, "critical points")
        interlaced = True
        for i, z in enumerate(crit):
            if not (roots[i] - tol <= z <= roots[i + 1] + tol):
                interlaced = False
                break
        k = None
        if beta is not None:
            b = mp.mpf(beta)
            k = min(range(len(roots)), key=lambda i: abs(roots[i] - b))
            if abs(roots[k] - b) > tol:
                raise ValueError(f"beta={beta} is not a root")
        return InterlacingWitness(tuple(roots), tuple(crit), k, interlaced)


def allreal_bound(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """max(2/n, 1/sqrt(n)); 2/n dominates for n <= 4, 1/sqrt(n) for n >= 4."""
    if n < 2:
        raise ValueError("degree must be >= 2")
    with ctx.workdps():
        return max(mp.mpf(2) / n, 1 / mp.sqrt(n))


def check_product_identity(p: poly.Polynomial, beta,
                           ctx: Optional[PrecisionContext] = None) -> Tuple:
    """Both sides of n * prod|beta - zeta_i| = prod_{i != k} |beta - z_i|.

    Valid for any monic P with a root at beta (index k); returns (lhs, rhs)
    so callers can assert equality at their own tolerance.
    """
    ctx = ctx or p.ctx
    if not p.is_monic:
        raise ValueError("product identity requires a monic polynomial")
    with ctx.workdps():
        b = mp.mpc(beta)
        roots = poly.roots_of(p, ctx)
        k = min(range(len(roots)), key=lambda i: abs(roots[i] - b))
        if abs(roots[k] - b) > ctx.disk_tolerance:
            raise ValueError(f"beta={beta} is not a root")
        crit = poly.find_roots(poly.derivative(p), ctx)
        if not crit.converged:
            raise poly.NonConvergenceError("critical point iteration did not converge",
                                           points=crit.points, residuals=crit.residuals,
                                           iterations=crit.iterations)
        n = p.degree
        lhs = mp.mpf(n)
        for z in crit.points:
            lhs *= abs(b - z)
        rhs = mp.mpf(1)
        for i, z in enumerate(roots):
            if i != k:
                rhs *= abs(b - z)
        return lhs, rhs


def normalize_collinear(p: poly.Polynomial, beta, collinearity_tolerance="1e-12",
                        ctx: Optional[PrecisionContext] = None):
    """Rigidly map collinear roots onto [-1, 1]; returns (P', beta').

    The line is fitted by total least squares (principal axis of the root
    cloud).  The map is a rotation plus translation -- no scaling -- so all
    pairwise distances, and in particular d(P, beta), are unchanged.  The
    midpoint of the extreme projections goes to 0, which keeps every image
    inside [-1, 1] because a chord of the unit disk has length at most 2.
    """
    ctx = ctx or p.ctx
    with ctx.workdps():
        tol = mp.mpf(collinearity_tolerance)
        b = mp.mpc(beta)
        roots = poly.roots_of(p, ctx)
        if min(abs(r - b) for r in roots) > ctx.disk_tolerance:
            raise ValueError(f"beta={beta} is not a root")
        n = len(roots)
        cx = sum(r.real for r in roots) / n
        cy = sum(r.imag for r in roots) / n
        sxx = sum((r.real - cx) ** 2 for r in roots)
        syy = sum((r.imag - cy) ** 2 for r in roots)
        sxy = sum((r.real - cx) * (r.imag - cy) for r in roots)
        if sxx + syy < tol * tol:
            # all roots coincide: collinear by convention, any direction works
            theta = mp.mpf(0)
        else:
            theta = mp.atan2(2 * sxy, sxx - syy) / 2
        direction = mp.exp(mp.mpc(0, theta))
        center = mp.mpc(cx, cy)
        proj = [(r - center) / direction for r in roots]
        worst = max(abs(t.imag) for t in proj)
        if worst > tol:
            raise ValueError(f"roots are not collinear: max line distance {mp.nstr(worst, 5)} "
                             f"exceeds tolerance {mp.nstr(tol, 3)}")
        ts = [t.real for t in proj]
        mid = (max(ts) + min(ts)) / 2
        new_roots = [t - mid for t in ts]
        beta_t = ((b - center) / direction).real - mid
        return poly.from_roots(new_roots, ctx), beta_t
