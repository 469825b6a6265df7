"""Core definitions: membership in S(beta), the distance d(P, beta), and bounds.

S(beta) is the set of polynomials of degree >= 2 with all roots in the closed
unit disk and at least one root at beta; d(P, beta) is the distance from beta
to the nearest critical point.  Membership testing inflates the disk by a
small tolerance because computed roots are inexact.
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Callable, Optional

from mpmath import mp

from . import poly
from .precision import DEFAULT_CONTEXT, PrecisionContext


class BoundVerdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"


@dataclasses.dataclass(frozen=True)
class SendovInstance:
    """A (P, beta) pair with membership status and, once computed, d(P, beta).

    Instances are normalized: a non-real beta is rotated onto [0, 1] together
    with all roots (``rotation`` records the unit factor applied).  The
    distance fields stay ``None`` until :func:`critical_distance` fills them.
    """

    polynomial: poly.Polynomial
    beta: object
    membership_verified: bool
    disk_tolerance: object
    rotation: object = 1
    max_root_modulus: object = None
    d_value: object = None
    nearest_critical_point: object = None
    critical: Optional[poly.CriticalSet] = None

    @property
    def degree(self) -> int:
        return self.polynomial.degree


@dataclasses.dataclass(frozen=True)
class BoundSpec:
    """A named bound beta -> value with an applicability predicate."""

    name: str
    eval: Callable
    applicability: Optional[Callable[[SendovInstance], bool]] = None

    def applies_to(self, inst: SendovInstance) -> bool:
        return self.applicability is None or self.applicability(inst)


@dataclasses.dataclass(frozen=True)
class BoundCheck:
    bound_name: str
    beta: object
    d_value: object
    bound_value: object
    margin: object
    verdict: BoundVerdict


def check_membership(p: poly.Polynomial, beta, disk_tolerance=None,
                     ctx: Optional[PrecisionContext] = None) -> SendovInstance:
    """Verify that ``p`` belongs to S(beta); beta is rotated onto [0, 1].

    Refuses (raises :class:`~sendovlab.poly.NonConvergenceError`) when the
    roots have to be computed and the iteration fails, rather than classifying
    from bad data.
    """
    ctx = ctx or p.ctx
    with ctx.workdps():
        tol = mp.mpf(disk_tolerance) if disk_tolerance is not None else ctx.disk_tolerance
        beta = mp.mpc(beta)
        rotation = mp.mpc(1)
        if abs(beta.imag) > tol and abs(beta) > 0:
            rotation = mp.conj(beta) / abs(beta)
            p = poly.rotate(p, rotation)
            beta = mp.mpc(abs(beta))
        roots = poly.roots_of(p, ctx)
        max_mod = max(abs(r) for r in roots)
        nearest = min(abs(r - beta) for r in roots)
        verified = p.degree >= 2 and max_mod <= 1 + tol and nearest <= tol
        return SendovInstance(p, beta, verified, tol, rotation, max_mod)


def critical_distance(inst: SendovInstance,
                      ctx: Optional[PrecisionContext] = None) -> SendovInstance:
    """Fill in d(P, beta) and the nearest critical point.

    Near-coincident critical points have already been merged to their cluster
    centroid by the root finder; ties in the minimum distance are broken by
    the lexicographically smallest point (real part, then imaginary part), so
    any tie yields the same d value.
    """
    if not inst.membership_verified:
        raise ValueError("critical_distance requires a verified member of S(beta)")
    ctx = ctx or inst.polynomial.ctx
    with ctx.workdps():
        crit = poly.find_roots(poly.derivative(inst.polynomial), ctx)
        if not crit.converged:
            raise poly.NonConvergenceError(
                "critical point computation did not converge",
                points=crit.points, residuals=crit.residuals,
                iterations=crit.iterations)
        beta = mp.mpc(inst.beta)
        d = min(abs(beta - z) for z in crit.points)
        eps = ctx.convergence_epsilon
        candidates = [z for z in crit.points if abs(beta - z) <= d + eps]
        nearest = min(candidates, key=lambda z: (z.real, z.imag))
        return dataclasses.replace(inst, d_value=d, nearest_critical_point=nearest,
                                   critical=crit)


def distance(p: poly.Polynomial, beta, disk_tolerance=None,
             ctx: Optional[PrecisionContext] = None) -> SendovInstance:
    """Membership check followed by the distance computation."""
    inst = check_membership(p, beta, disk_tolerance, ctx)
    if not inst.membership_verified:
        raise ValueError(
            f"polynomial is not a member of S({beta}): "
            f"max root modulus {mp.nstr(inst.max_root_modulus, 8)}, "
            f"disk tolerance {mp.nstr(inst.disk_tolerance, 3)}")
    return critical_distance(inst, ctx)


def _as_unit_beta(beta, ctx):
    with ctx.workdps():
        b = mp.mpf(beta) if not isinstance(beta, str) else mp.mpf(beta)
        if b < 0 or b > 1:
            raise ValueError(f"beta must lie in [0, 1], got {beta}")
        return b


def bound_quadratic(beta, c=None, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """The quadratic refinement 1 - c*beta*(1-beta); c defaults to 3/10."""
    with ctx.workdps():
        b = _as_unit_beta(beta, ctx)
        cc = mp.mpf(3) / 10 if c is None else mp.mpf(c)
        return 1 - cc * b * (1 - b)


def r2_formula(beta, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Exact degree-2 extremal distance (1 + beta) / 2."""
    with ctx.workdps():
        b = _as_unit_beta(beta, ctx)
        return (1 + b) / 2


def r3_formula(beta, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Exact degree-3 extremal distance [3*beta + sqrt(12 - 3*beta^2)] / 6."""
    with ctx.workdps():
        b = _as_unit_beta(beta, ctx)
        return (3 * b + mp.sqrt(12 - 3 * b * b)) / 6


def rn_at_zero(n: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Exact extremal distance at beta = 0 for degree n: (1/n)^(1/(n-1))."""
    if n < 2:
        raise ValueError("degree must be >= 2")
    with ctx.workdps():
        return (mp.mpf(1) / n) ** (mp.mpf(1) / (n - 1))


def r5_expansion(beta, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Two-term expansion of the degree-5 extremal distance near beta = 1.

    1 - (3/10)(1-beta) + (1/200)(1-beta)^2; the cubic remainder is not
    modeled, so this is only meaningful close to 1.
    """
    with ctx.workdps():
        b = _as_unit_beta(beta, ctx)
        t = 1 - b
        return 1 - mp.mpf(3) / 10 * t + t * t / 200


def check_bound(inst: SendovInstance, bound: BoundSpec,
                ctx: Optional[PrecisionContext] = None) -> BoundCheck:
    """Compare a computed d(P, beta) against a bound function."""
    if inst.d_value is None:
        raise ValueError("check_bound requires critical_distance to have run")
    ctx = ctx or inst.polynomial.ctx
    with ctx.workdps():
        beta = mp.mpc(inst.beta).real
        if not bound.applies_to(inst):
            return BoundCheck(bound.name, beta, inst.d_value, None, None,
                              BoundVerdict.NOT_APPLICABLE)
        value = mp.mpf(bound.eval(beta))
        margin = value - inst.d_value
        verdict = BoundVerdict.HOLDS if margin >= -inst.disk_tolerance else BoundVerdict.VIOLATED
        return BoundCheck(bound.name, beta, inst.d_value, value, margin, verdict)


def _is_real_coefficients(inst: SendovInstance) -> bool:
    tol = inst.disk_tolerance
    return all(abs(c.imag) <= tol for c in inst.polynomial.coefficients)


def conjecture_bound() -> BoundSpec:
    return BoundSpec("conjecture-3/10", lambda b: bound_quadratic(b))


def degree2_bound() -> BoundSpec:
    return BoundSpec("degree2-1/2", lambda b: bound_quadratic(b, c="0.5"),
                     applicability=lambda inst: inst.degree == 2)


def degree3_bound() -> BoundSpec:
    return BoundSpec("degree3-1/3", lambda b: bound_quadratic(b, c=mp.mpf(1) / 3),
                     applicability=lambda inst: inst.degree == 3)


def line_bound() -> BoundSpec:
    """Bound for members whose roots all lie on one line."""
    return BoundSpec("line-1/2", lambda b: bound_quadratic(b, c="0.5"))


def real_quartic_bound() -> BoundSpec:
    return BoundSpec("real-quartic-1/3", lambda b: bound_quadratic(b, c=mp.mpf(1) / 3),
                     applicability=lambda inst: inst.degree == 4 and _is_real_coefficients(inst))


def standard_bounds() -> tuple:
    return (conjecture_bound(), degree2_bound(), degree3_bound(),
            line_bound(), real_quartic_bound())
