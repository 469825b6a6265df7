"""Real quartic bounds and the construction of P from prescribed critical points.

A polynomial with prescribed critical points zeta_1..zeta_{n-1} and a root at
beta is recovered as P(z) = n * integral from beta to z of prod(w - zeta_i) dw,
integrated term-by-term on the expanded coefficients (the integrand is a
polynomial, so this is exact up to rounding).

The module also carries the nonreal quartic exhibit: a degree-4 member of
S(0.674) showing that the derivative bound |P'(beta)| <= (1+beta)^2, valid for
real quartics with d > (1+beta)/2, can fail once the coefficients go complex.
"""

from __future__ import annotations

import dataclasses
from typing import Optional, Sequence

from mpmath import mp

from . import metrics, poly
from .precision import DEFAULT_CONTEXT, PrecisionContext

# The nonreal exhibit: beta and the prescribed critical points (one simple,
# one double).  Kept as decimal strings so every context parses them exactly.
EXHIBIT_BETA = "0.674"
EXHIBIT_CRITICAL_POINTS = (("-0.24", "0.38"), ("-0.13", "-0.25"), ("-0.13", "-0.25"))

# Reference values for the exhibit, derived at 50 significant digits.
EXHIBIT_DISTANCE = "0.84197"
EXHIBIT_DERIVATIVE_MODULUS = "2.80687"


@dataclasses.dataclass(frozen=True)
class CriticalPrescription:
    """Degree, root location beta, and the n-1 wanted critical points."""

    beta: object
    critical_points: tuple
    degree: int

    def __post_init__(self):
        if len(self.critical_points) != self.degree - 1:
            raise ValueError(
                f"need exactly {self.degree - 1} critical points for degree "
                f"{self.degree}, got {len(self.critical_points)}")


@dataclasses.dataclass(frozen=True)
class QuarticDerivativeCheck:
    """Outcome of the guarded derivative-modulus bound for a real quartic.

    The bound |P'(beta)| <= (1+beta)^2 is only asserted when
    d(P, beta) > (1+beta)/2; otherwise the record is marked not applicable.
    """

    beta: object
    d_value: object
    threshold: object
    derivative_modulus: object
    bound: object
    applicable: bool
    holds: Optional[bool]

    def as_dict(self) -> dict:
        return _record_dict(self)


@dataclasses.dataclass(frozen=True)
class QuarticDistanceCheck:
    """Outcome of d(P, beta) <= 1 - beta(1-beta)/3 for a real quartic.

    When d > (1+beta)/2, the product chain 4*d^3 <= |P'(beta)| <= (1+beta)^2
    is verified as well (``chain_holds`` stays None otherwise).
    """

    beta: object
    d_value: object
    bound: object
    holds: bool
    chain_lhs: object
    derivative_modulus: object
    chain_bound: object
    chain_holds: Optional[bool]

    def as_dict(self) -> dict:
        return _record_dict(self)


def _record_dict(record) -> dict:
    out = {}
    for f in dataclasses.fields(record):
        v = getattr(record, f.name)
        if isinstance(v, (type(mp.mpf(0)), type(mp.mpc(0)))):
            v = mp.nstr(v, 20)
        out[f.name] = v
    return out


def from_critical_points(spec: CriticalPrescription,
                         ctx: Optional[PrecisionContext] = None) -> poly.Polynomial:
    """Monic P of the prescribed degree with P(beta) = 0 and the given P' roots."""
    n = spec.degree
    if ctx is None:
        ctx = DEFAULT_CONTEXT
    with ctx.workdps():
        dcoeffs = [mp.mpc(1)]
        for z in spec.critical_points:
            dcoeffs = poly._mul_linear(dcoeffs, mp.mpc(z))
        dcoeffs = [n * c for c in dcoeffs]
        anti = [mp.mpc(0)] + [c / (k + 1) for k, c in enumerate(dcoeffs)]
        beta = mp.mpc(spec.beta)
        acc = anti[-1]
        for c in reversed(anti[:-1]):
            acc = acc * beta + c
        anti[0] = -acc
        return poly.Polynomial(tuple(anti), ctx)


def real_quartic_from_roots(real_roots: Sequence[float], conj_pairs: Sequence[complex],
                            ctx: Optional[PrecisionContext] = None) -> poly.Polynomial:
    """Quartic with exactly real coefficients from real roots and conjugate pairs.

    Each pair (a, b) contributes the real factor z^2 - 2a z + (a^2 + b^2), so
    no imaginary dust appears in the coefficients.
    """
    if len(real_roots) + 2 * len(conj_pairs) != 4:
        raise ValueError("need 4 roots in total")
    if ctx is None:
        ctx = DEFAULT_CONTEXT
    with ctx.workdps():
        coeffs = [mp.mpc(1)]
        roots = []
        for r in real_roots:
            r = mp.mpf(r)
            roots.append(mp.mpc(r))
            coeffs = poly._mul_linear(coeffs, mp.mpc(r))
        for z in conj_pairs:
            a, b = mp.mpf(z.real), mp.mpf(z.imag)
            roots.append(mp.mpc(a, b))
            roots.append(mp.mpc(a, -b))
            coeffs = poly._mul(coeffs, [mp.mpc(a * a + b * b), mp.mpc(-2 * a), mp.mpc(1)])
        return poly.Polynomial(tuple(coeffs), ctx, known_roots=tuple(roots))


def _require_real_quartic(p: poly.Polynomial, ctx):
    if p.degree != 4:
        raise ValueError(f"expected degree 4, got {p.degree}")
    worst = max(abs(c.imag) for c in p.coefficients)
    if worst > ctx.disk_tolerance:
        raise ValueError(f"coefficients are not real (imag up to {mp.nstr(worst, 5)})")


def check_derivative_bound(p: poly.Polynomial, beta,
                           ctx: Optional[PrecisionContext] = None) -> QuarticDerivativeCheck:
    """Evaluate the guarded bound |P'(beta)| <= (1+beta)^2 for a real quartic."""
    ctx = ctx or p.ctx
    with ctx.workdps():
        _require_real_quartic(p, ctx)
        b = mp.mpf(beta)
        inst = metrics.distance(p, b, ctx=ctx)
        deriv_mod = abs(poly.evaluate(poly.derivative(p), b))
        threshold = (1 + b) / 2
        bound = (1 + b) ** 2
        applicable = inst.d_value > threshold
        holds = bool(deriv_mod <= bound + ctx.disk_tolerance) if applicable else None
        return QuarticDerivativeCheck(b, inst.d_value, threshold, deriv_mod,
                                      bound, applicable, holds)


def check_distance_bound(p: poly.Polynomial, beta,
                         ctx: Optional[PrecisionContext] = None) -> QuarticDistanceCheck:
    """Evaluate d(P, beta) <= 1 - beta(1-beta)/3 for a real quartic."""
    ctx = ctx or p.ctx
    with ctx.workdps():
        _require_real_quartic(p, ctx)
        b = mp.mpf(beta)
        inst = metrics.distance(p, b, ctx=ctx)
        bound = 1 - b * (1 - b) / 3
        tol = ctx.disk_tolerance
        holds = bool(inst.d_value <= bound + tol)
        deriv_mod = abs(poly.evaluate(poly.derivative(p), b))
        chain_lhs = 4 * inst.d_value ** 3
        chain_bound = (1 + b) ** 2
        chain_holds = None
        if inst.d_value > (1 + b) / 2:
            chain_holds = bool(chain_lhs <= deriv_mod + tol and deriv_mod <= chain_bound + tol)
        return QuarticDistanceCheck(b, inst.d_value, bound, holds,
                                    chain_lhs, deriv_mod, chain_bound, chain_holds)


def cube_inequality_gap(x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """(1 - x/3)^3 - (1 - x); nonnegative on [0, 1] with equality only at 0."""
    with ctx.workdps():
        t = mp.mpf(x)
        return (1 - t / 3) ** 3 - (1 - t)


def nonreal_exhibit(ctx: Optional[PrecisionContext] = None) -> dict:
    """Build and measure the nonreal quartic member of S(0.674).

    Returns every quantity of interest: the root moduli (all below 1), the
    distance d ~ 0.84197 exceeding (1+beta)/2, and the derivative modulus
    ~ 2.80687 exceeding (1+beta)^2 -- the combination a real quartic cannot
    produce.
    """
    if ctx is None:
        ctx = PrecisionContext(30)
    with ctx.workdps():
        beta = mp.mpf(EXHIBIT_BETA)
        points = tuple(mp.mpc(mp.mpf(re), mp.mpf(im)) for re, im in EXHIBIT_CRITICAL_POINTS)
        p = from_critical_points(CriticalPrescription(beta, points, 4), ctx)
        root_set = poly.find_roots(p, ctx)
        if not root_set.converged:
            raise poly.NonConvergenceError("exhibit root finding did not converge",
                                           points=root_set.points,
                                           residuals=root_set.residuals,
                                           iterations=root_set.iterations)
        moduli = sorted(abs(z) for z in root_set.points)
        inst = metrics.critical_distance(
            metrics.check_membership(p, beta, ctx=ctx), ctx)
        deriv_mod = abs(poly.evaluate(poly.derivative(p), beta))
        return {
            "beta": beta,
            "polynomial": p,
            "root_moduli": moduli,
            "in_class": bool(inst.membership_verified and moduli[-1] < 1),
            "d_value": inst.d_value,
            "half_threshold": (1 + beta) / 2,
            "derivative_modulus": deriv_mod,
            "square_bound": (1 + beta) ** 2,
        }
