"""Precision contexts controlling arbitrary-precision arithmetic and convergence."""

from __future__ import annotations

import dataclasses

from mpmath import mp, mpf


@dataclasses.dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the convergence thresholds derived from it.

    ``significant_digits`` is the accuracy the caller asks for; arithmetic runs
    at ``significant_digits + guard_digits`` decimal digits so that roundoff
    stays well below the convergence threshold even for polynomials whose
    coefficients span many orders of magnitude (the degree-52 construction has
    coefficients up to ~1e16).
    """

    significant_digits: int = 30
    guard_digits: int = 12
    max_iterations: int = 400

    def __post_init__(self):
        if self.significant_digits < 16:
            raise ValueError("significant_digits must be >= 16")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")

    @property
    def dps(self) -> int:
        """Decimal digits used for actual arithmetic."""
        return self.significant_digits + self.guard_digits

    @property
    def convergence_epsilon(self) -> mpf:
        """Threshold 10^(guard_digits - significant_digits) for residuals and corrections."""
        with mp.workdps(self.dps):
            return mpf(10) ** (self.guard_digits - self.significant_digits)

    @property
    def cluster_threshold(self) -> mpf:
        """Iterates closer than this are treated as one multiple-root cluster."""
        with mp.workdps(self.dps):
            return mpf(10) ** (-(self.significant_digits // 2))

    @property
    def disk_tolerance(self) -> mpf:
        """Slack used for closed-unit-disk membership tests."""
        return self.cluster_threshold

    def workdps(self):
        """Context manager switching mpmath to this context's working precision."""
        return mp.workdps(self.dps)


def context_for_degree(degree: int) -> PrecisionContext:
    """Default precision rule: 50 significant digits for degree >= 40, else 30."""
    return PrecisionContext(significant_digits=50 if degree >= 40 else 30)


DEFAULT_CONTEXT = PrecisionContext()
