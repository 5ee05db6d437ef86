"""Exact evaluation of Jacobi polynomials and the degree-formula coefficient sums.

Everything is computed over `fractions.Fraction`; Pochhammer symbols are
plain products, no gamma functions anywhere.  The coefficient sums a_j feed
the rank-2 degree formula and are evaluated along two independent routes
(a direct binomial sum and a Jacobi polynomial value at zero) that must
agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CrossCheckError, DomainError
from .exactpoly import binomial

__all__ = ["JacobiParams", "pochhammer", "jacobi_hyp", "jacobi_finite_sum", "a_coeff"]


def pochhammer(x, m: int) -> Fraction:
    """Rising factorial (x)_m = x (x+1) ... (x+m-1)."""
    result = Fraction(1)
    for i in range(m):
        result *= x + i
    return result


@dataclass(frozen=True)
class JacobiParams:
    """Parameters (alpha, beta, degree n, evaluation point z)."""

    alpha: Fraction
    beta: Fraction
    n: int
    z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "z", Fraction(self.z))
        if self.n < 0:
            raise DomainError("degree must be nonnegative")


def jacobi_hyp(p: JacobiParams) -> Fraction:
    """Jacobi polynomial value via the terminating hypergeometric series.

    P_n^(a,b)(z) = ((a+1)_n / n!) * sum_m ((-n)_m (n+a+b+1)_m / (a+1)_m) u^m / m!
    with u = (1-z)/2.  Requires (a+1)_m nonzero for m <= n.
    """
    a, b, n, z = p.alpha, p.beta, p.n, p.z
    u = (1 - z) / 2
    total = Fraction(0)
    for m in range(n + 1):
        denom = pochhammer(a + 1, m)
        if denom == 0:
            raise DomainError("pole in Pochhammer denominator")
        term = pochhammer(-n, m) * pochhammer(n + a + b + 1, m) / denom
        total += term * u**m / pochhammer(1, m)
    return pochhammer(a + 1, n) / pochhammer(1, n) * total


def jacobi_finite_sum(p: JacobiParams) -> Fraction:
    """Jacobi polynomial value via the finite double-binomial sum.

    Valid for integer alpha > 0 and beta > -n - alpha - 1; outside that
    domain a DomainError is raised and callers may fall back to jacobi_hyp.
    """
    a, b, n, z = p.alpha, p.beta, p.n, p.z
    if a.denominator != 1 or a <= 0:
        raise DomainError("finite sum requires integer alpha > 0")
    if not b > -n - a - 1:
        raise DomainError("finite sum requires beta > -n - alpha - 1")
    alpha = int(a)
    total = Fraction(0)
    v = (z - 1) / 2
    for m in range(n + 1):
        total += v**m * binomial(n + alpha, m + alpha) * binomial(n + a + b + m, m)
    return total


def a_coeff(r: int, d: int, k: int, j: int) -> Fraction:
    """Coefficient a_j of the Segre-class pairing in the rank-r degree formula.

    Evaluated twice: as the direct alternating binomial sum, and as a scaled
    Jacobi polynomial value at zero.  A mismatch means a convention has been
    corrupted somewhere, so it aborts instead of returning either value.
    """
    if r < 1 or d < 1 or not 0 <= k <= d or not 0 <= j <= d - k:
        raise DomainError("a_coeff arguments out of range")
    p = r - 1 + d
    direct = Fraction(0)
    for m in range(d - j, p + 1):
        direct += (
            Fraction(-1, 2) ** m
            * binomial(2 * p, p + m)
            * binomial(r - 1 + m - k, m - d + j)
        )
    direct *= Fraction(-1) ** (k + j)
    params = JacobiParams(Fraction(p + d - j), Fraction(-p - k - j), r - 1 + j, Fraction(0))
    via_jacobi = Fraction(-1) ** (d - k) / Fraction(2) ** (d - j) * jacobi_finite_sum(params)
    if direct != via_jacobi:
        raise CrossCheckError(
            f"a_coeff routes disagree for r={r} d={d} k={k} j={j}: {direct} vs {via_jacobi}"
        )
    return direct
