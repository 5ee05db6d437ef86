"""Pluecker degree of the two-point Quot scheme via three independent
pipelines, plus the class-level pushforward and diagonal-defect classes.

Pipelines, which must agree exactly on every instance:

* a closed formula in Segre classes of S and the twisted bundle, with
  coefficients from the Jacobi-sum module;
* the projective-bundle route: the two-point Hilbert scheme degree formula
  evaluated through fibre integrals I_m over P(E twisted), each I_m computed
  both from its closed form and from its definition;
* the geometric route: the degree of the two-point Hilbert scheme of P(E)
  for the divisor (pullback of c1 L) + z.

The class-level computation pushes powers of the tautological divisor of
the two-point Hilbert scheme of P(E) down to S x S; the double-cover factor
of the blow-up model cancels against the symmetrisation doubling, and the
result is asserted to be block-swap invariant rather than trusting that
cancellation silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CrossCheckError, DomainError
from .exactpoly import DegreePolynomial, TruncPoly, binomial, poly_interpolate
from .hilb2 import hilb2_degree, pair_power_pushforward_table
from .jacobi import a_coeff
from .symquot import MuSource, SymClassRep, diagonal_membership, integrate_sym, nu_class
from .varieties import (
    ProjBundle,
    ProjProduct,
    SplitBundle,
    boxsum,
    bundle_power_pushforward,
    diagonal_class,
    integrate,
    pullback_to_bundle,
    ring_of,
    segre_class,
    segre_scheme,
    twist,
    zeta,
)

__all__ = [
    "Quot2Instance",
    "degree2_formula",
    "degree2_projbundle",
    "degree2_geometric",
    "degree2_all",
    "degree2_polynomial",
    "mu2_class",
    "mu2_classes",
    "mu2_source",
    "delta2_class",
    "delta2_constant",
]


@dataclass(frozen=True)
class Quot2Instance:
    """Input data: base space S, split bundle E on S, twisting divisor c1(L)."""

    S: ProjProduct
    E: SplitBundle
    Lc1: TruncPoly

    def __post_init__(self):
        if not isinstance(self.S, ProjProduct):
            raise DomainError("the base must be a product of projective spaces")
        if self.S.dimension < 1:
            raise DomainError("the base must be positive-dimensional")
        ring = ring_of(self.S)
        if self.E.roots[0].ring != ring or self.Lc1.ring != ring:
            raise DomainError("bundle and divisor must live on the base")
        if not self.Lc1.is_zero() and (
            not self.Lc1.is_homogeneous() or self.Lc1.total_degree() != 1
        ):
            raise DomainError("twist divisor must be homogeneous of degree 1")

    @property
    def d(self) -> int:
        return self.S.dimension

    @property
    def p(self) -> int:
        return self.E.rank - 1 + self.d


def degree2_formula(inst: Quot2Instance) -> Fraction:
    """Closed formula pipeline.

    (1/2) binom(2p, p) (int s_d(EL))^2
    - 2^{p-1} sum_k int s_k(S) * sum_j a_j(r,d,k) s_{d-k-j}(EL) s_j(EL),
    where EL is the twisted bundle.
    """
    S, d, p, r = inst.S, inst.d, inst.p, inst.E.rank
    EL = twist(inst.E, inst.Lc1)
    sd = integrate(S, segre_class(EL, d))
    total = Fraction(1, 2) * binomial(2 * p, p) * sd**2
    segre_S = segre_scheme(S)
    correction = Fraction(0)
    for k in range(d + 1):
        J = TruncPoly.zero(ring_of(S))
        for j in range(d - k + 1):
            J = J + a_coeff(r, d, k, j) * segre_class(EL, d - k - j) * segre_class(EL, j)
        correction += integrate(S, segre_S.graded_part(k) * J)
    return total - Fraction(2) ** (p - 1) * correction


def _fibre_integrals_closed(inst: Quot2Instance) -> list[Fraction]:
    """I_m for m = 0..p from the closed double sum in Segre classes."""
    S, d, p, r = inst.S, inst.d, inst.p, inst.E.rank
    EL = twist(inst.E, inst.Lc1)
    segre_S = segre_scheme(S)
    out = []
    for m in range(p + 1):
        value = Fraction(0)
        for k in range(d + 1):
            inner = TruncPoly.zero(ring_of(S))
            for j in range(d - k + 1):
                inner = (
                    inner
                    + Fraction(-1) ** j
                    * binomial(r - 1 + m - k, m - d + j)
                    * segre_class(EL, d - k - j)
                    * segre_class(EL, j)
                )
            if k > m and not inner.is_zero():
                raise CrossCheckError("inner Segre sum failed to vanish above the fibre power")
            value += Fraction(-1) ** (m + k) * integrate(S, segre_S.graded_part(k) * inner)
        out.append(value)
    return out


def degree2_projbundle(inst: Quot2Instance) -> Fraction:
    """Projective-bundle pipeline through the fibre integrals I_m.

    Each I_m is also recomputed from its definition as an integral over
    P(E twisted); any mismatch aborts the run.
    """
    S, d, p = inst.S, inst.d, inst.p
    EL = twist(inst.E, inst.Lc1)
    closed = _fibre_integrals_closed(inst)
    X = ProjBundle(S, EL)
    z = zeta(X)
    segre_X = segre_scheme(X)
    for m in range(p + 1):
        direct = integrate(X, z ** (p - m) * segre_X.graded_part(m))
        if direct != closed[m]:
            raise CrossCheckError(
                f"fibre integral I_{m} mismatch: closed {closed[m]}, direct {direct}"
            )
    sd = integrate(S, segre_class(EL, d))
    if closed[0] != Fraction(-1) ** d * sd:
        raise CrossCheckError("I_0 does not reduce to the top Segre integral")
    total = Fraction(1, 2) * binomial(2 * p, p) * closed[0] ** 2
    series = sum(
        binomial(2 * p, p + m) * Fraction(1, 2**m) * closed[m] for m in range(p + 1)
    )
    return total - Fraction(2) ** (p - 1) * series


def degree2_geometric(inst: Quot2Instance) -> Fraction:
    """Geometric pipeline: two-point Hilbert scheme of P(E) with the divisor
    (pullback of the twist) + relative hyperplane class."""
    X = ProjBundle(inst.S, inst.E)
    M = pullback_to_bundle(X, 1, inst.Lc1) + zeta(X)
    return hilb2_degree(X, M)


def degree2_all(inst: Quot2Instance) -> Fraction:
    """Run all three pipelines and insist on exact agreement."""
    formula = degree2_formula(inst)
    projbundle = degree2_projbundle(inst)
    geometric = degree2_geometric(inst)
    if not formula == projbundle == geometric:
        raise CrossCheckError(
            f"degree pipelines disagree: formula {formula}, "
            f"projective bundle {projbundle}, geometric {geometric}"
        )
    return formula


def degree2_polynomial(
    S: ProjProduct, E: SplitBundle, direction: TruncPoly | None = None
) -> DegreePolynomial:
    """Degree as an exact polynomial in the twist parameter n.

    Interpolates the closed-formula pipeline at n = 0..2d, verifies the
    interpolant at n = 2d+1, and checks the coefficients of n^{2d-j} for
    j < d against the multinomial-class prediction.
    """
    if direction is None:
        direction = divisor_all_ones(S)
    d = S.dimension
    p = E.rank - 1 + d
    values = []
    for n in range(2 * d + 2):
        inst = Quot2Instance(S, E, n * direction)
        values.append((n, degree2_formula(inst)))
    poly = poly_interpolate(values[: 2 * d + 1])
    if poly.evaluate(2 * d + 1) != values[2 * d + 1][1]:
        raise CrossCheckError("degree polynomial fails at the verification point")
    coeffs = list(poly.coefficients) + [Fraction(0)] * (2 * d + 1 - len(poly.coefficients))
    box = boxsum(S, 2, direction)
    for j in range(d):
        nu_j = nu_class(S, E, 2, j)
        predicted = binomial(2 * p, 2 * d - j) * integrate_sym(
            S, SymClassRep(box ** (2 * d - j) * nu_j.rep, 2)
        )
        if coeffs[2 * d - j] != predicted:
            raise CrossCheckError(
                f"coefficient of n^{2 * d - j} disagrees with the multinomial prediction"
            )
    return poly


def divisor_all_ones(S: ProjProduct) -> TruncPoly:
    """Sum of the hyperplane classes, the default polarisation direction."""
    ring = ring_of(S)
    total = TruncPoly.zero(ring)
    for i in range(ring.ngens):
        total = total + TruncPoly.generator(ring, i)
    return total


def mu2_class(S: ProjProduct, E: SplitBundle, k: int) -> SymClassRep:
    """Pushforward of the (2(r-1)+k)-th tautological divisor power along the
    cycle map, as an invariant class of degree k on S x S."""
    return mu2_classes(S, E, k_max=k)[k]


def mu2_classes(S: ProjProduct, E: SplitBundle, k_max: int | None = None) -> list[SymClassRep]:
    """All pushforward classes for k = 0..k_max (default 2d), sharing one
    power table on the square of P(E)."""
    d = S.dimension
    if k_max is None:
        k_max = 2 * d
    if not 0 <= k_max <= 2 * d:
        raise DomainError("k out of range")
    r = E.rank
    X = ProjBundle(S, E)
    table = pair_power_pushforward_table(X, zeta(X), 2 * (r - 1) + k_max)
    out = []
    for k in range(k_max + 1):
        pushed = bundle_power_pushforward(X, 2, table[2 * (r - 1) + k])
        rep = SymClassRep(pushed, 2)  # constructor asserts swap invariance
        if not rep.rep.is_zero() and rep.rep.total_degree() != k:
            raise CrossCheckError("pushforward class has the wrong degree")
        out.append(rep)
    return out


def mu2_source(S: ProjProduct, E: SplitBundle) -> MuSource:
    """Pushforward-class source for two points, for the multi-divisor integral."""
    table = mu2_classes(S, E)

    def source(k: int) -> SymClassRep:
        if not 0 <= k < len(table):
            raise DomainError("k out of range")
        return table[k]

    return source


def delta2_class(S: ProjProduct, E: SplitBundle, k: int) -> SymClassRep:
    """Difference between the pushforward class and the multinomial class.

    Vanishes below the dimension of S; in every degree it must be certified
    as a combination of diagonal pushforwards, otherwise the conventions are
    corrupted and the computation aborts.
    """
    d = S.dimension
    delta = mu2_class(S, E, k) - nu_class(S, E, 2, k)
    if k < d and not delta.rep.is_zero():
        raise CrossCheckError("diagonal-defect class fails to vanish below the dimension")
    certificate = diagonal_membership(S, 2, delta)
    if not certificate.member:
        raise CrossCheckError("diagonal-defect class escapes the diagonal span")
    return delta


def delta2_constant(S: ProjProduct, E: SplitBundle) -> Fraction:
    """Constant c with (defect class in degree d) = c * (symmetrised diagonal)."""
    d = S.dimension
    delta = delta2_class(S, E, d)
    reference = 2 * diagonal_class(S)
    if delta.rep.is_zero():
        return Fraction(0)
    for mono, coeff in reference.terms.items():
        target = delta.rep.coefficient(mono)
        if coeff != 0:
            c = target / coeff
            break
    if delta.rep != c * reference:
        raise CrossCheckError("degree-d defect class is not proportional to the diagonal")
    return c
