"""Torus fixed-point evaluation of Pluecker integrals over the projective line.

Quot schemes of split bundles on P^1 are smooth, so integrals of powers of
the tautological divisor reduce to an Atiyah-Bott sum over the torus fixed
points.  Fixed points are pairs of compositions recording quotient lengths
at 0 and at infinity of each summand O(a_i).

Linearisation conventions used throughout (the module's normative recipe,
certified by closed-form and cross-module checks rather than assumed):
a frame of O(a_i) carries character e_i at 0 and e_i + a_i w at infinity,
the twisting sheaf O(n) carries 0 at 0 and n w at infinity, and w is the
character of the coordinate of P^1.  The tangent space at a fixed point is
Hom(kernel, quotient), giving

  at 0:        e_j - e_i + (k - b_i) w          for 0 <= k < b_j, all i
  at infinity: e_j - e_i + (a_j - a_i + c_i - k) w   for 0 <= k < c_j, all i

and the fibre of the twisted tautological sheaf has characters

  at 0:        e_j + k w                        for 0 <= k < b_j
  at infinity: e_j + (a_j + n - k) w            for 0 <= k < c_j.

Instead of symbolic rational functions, each sum is evaluated at several
concrete generic integer weight draws; all draws must agree exactly and the
common value must be an integer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CrossCheckError, DomainError
from .exactpoly import DegreePolynomial, compositions, poly_interpolate

__all__ = [
    "FixedPointDatum",
    "WeightAssignment",
    "NonGenericWeightsError",
    "enumerate_fixed_points",
    "tangent_weights",
    "taut_weight_sum",
    "plucker_degree_localised",
    "degree_polynomial_localised",
]


class NonGenericWeightsError(RuntimeError):
    """A tangent weight vanished; the caller should redraw."""


@dataclass(frozen=True)
class FixedPointDatum:
    """Quotient lengths at 0 (b) and at infinity (c), one entry per summand."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.b) != len(self.c):
            raise DomainError("b and c must have one entry per summand")
        if any(x < 0 for x in self.b + self.c):
            raise DomainError("lengths must be nonnegative")

    @property
    def length(self) -> int:
        return sum(self.b) + sum(self.c)


@dataclass(frozen=True)
class WeightAssignment:
    """Torus characters on the bundle summands (e) and the coordinate (w)."""

    e: tuple[int, ...]
    w: int

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(self.e))
        if self.w == 0:
            raise DomainError("the coordinate character must be nonzero")


def enumerate_fixed_points(r: int, l: int) -> list[FixedPointDatum]:
    """All pairs of compositions with total length l; there are
    binom(l + 2r - 1, 2r - 1) of them."""
    if r < 1 or l < 0:
        raise DomainError("need r >= 1 and l >= 0")
    return [
        FixedPointDatum(parts[:r], parts[r:]) for parts in compositions(l, 2 * r)
    ]


def tangent_weights(pt: FixedPointDatum, a: Sequence[int], wt: WeightAssignment) -> list[int]:
    """Tangent characters at a fixed point; raises if any vanishes."""
    r = len(pt.b)
    if len(a) != r or len(wt.e) != r:
        raise DomainError("summand data of mismatched lengths")
    weights = []
    for j in range(r):
        for k in range(pt.b[j]):
            for i in range(r):
                weights.append(wt.e[j] - wt.e[i] + (k - pt.b[i]) * wt.w)
        for k in range(pt.c[j]):
            for i in range(r):
                weights.append(wt.e[j] - wt.e[i] + (a[j] - a[i] + pt.c[i] - k) * wt.w)
    if any(x == 0 for x in weights):
        raise NonGenericWeightsError("zero tangent weight")
    return weights


def taut_weight_sum(pt: FixedPointDatum, a: Sequence[int], n: int, wt: WeightAssignment) -> int:
    """Sum of the fibre characters of the twisted tautological sheaf."""
    total = 0
    for j in range(len(pt.b)):
        for k in range(pt.b[j]):
            total += wt.e[j] + k * wt.w
        for k in range(pt.c[j]):
            total += wt.e[j] + (a[j] + n - k) * wt.w
    return total


def _draw(seed: int, index: int, r: int) -> WeightAssignment:
    rng = random.Random(1000003 * seed + index)
    e = tuple(rng.randrange(-(10**6), 10**6) for _ in range(r))
    w = rng.randrange(1, 10**3)
    return WeightAssignment(e, w)


def _fixed_point_sum(
    points: list[FixedPointDatum], a: Sequence[int], l: int, n: int, wt: WeightAssignment
) -> Fraction:
    exponent = l * len(a)
    total = Fraction(0)
    for pt in points:
        weights = tangent_weights(pt, a, wt)
        numerator = taut_weight_sum(pt, a, n, wt) ** exponent
        denominator = 1
        for x in weights:
            denominator *= x
        total += Fraction(numerator, denominator)
    return total


def plucker_degree_localised(
    r: int, a: Sequence[int], l: int, n: int, seed: int = 0, draws: int = 3
) -> Fraction:
    """Degree of the Pluecker embedding of the length-l Quot scheme of
    O(a_1) + ... + O(a_r) on P^1, twisted by O(n).

    Evaluates the fixed-point sum at `draws` generic weight draws derived
    deterministically from the seed; all values must agree exactly and be
    integers, otherwise the weight recipe itself is at fault and the run
    aborts.
    """
    if len(a) != r:
        raise DomainError("need one summand degree per summand")
    if l < 0:
        raise DomainError("length must be nonnegative")
    if draws < 1:
        raise DomainError("need at least one draw")
    points = enumerate_fixed_points(r, l)
    values = []
    for index in range(draws):
        for attempt in range(200):
            wt = _draw(seed, 7919 * index + attempt, r)
            try:
                values.append(_fixed_point_sum(points, a, l, n, wt))
                break
            except NonGenericWeightsError:
                continue
        else:
            raise CrossCheckError("could not find generic weights")
    if any(v != values[0] for v in values[1:]):
        raise CrossCheckError(f"weight draws disagree: {values}")
    if values[0].denominator != 1:
        raise CrossCheckError(f"localised degree is not an integer: {values[0]}")
    return values[0]


def degree_polynomial_localised(
    r: int, a: Sequence[int], l: int, seed: int = 0
) -> DegreePolynomial:
    """Localised degree as an exact polynomial in the twist parameter.

    Interpolated at n = 0..l (the degree is at most l on the line) and
    verified at n = l + 1."""
    values = [(n, plucker_degree_localised(r, a, l, n, seed=seed)) for n in range(l + 2)]
    poly = poly_interpolate(values[: l + 1])
    if poly.evaluate(l + 1) != values[l + 1][1]:
        raise CrossCheckError("localised degree polynomial fails at the verification point")
    return poly
