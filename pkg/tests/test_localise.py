import itertools
from fractions import Fraction

import pytest

from quotdeg.errors import DomainError
from quotdeg.exactpoly import binomial
from quotdeg.localise import (
    FixedPointDatum,
    NonGenericWeightsError,
    WeightAssignment,
    degree_polynomial_localised,
    enumerate_fixed_points,
    plucker_degree_localised,
    tangent_weights,
    taut_weight_sum,
)


def test_enumerate_counts():
    assert len(enumerate_fixed_points(1, 1)) == 2
    assert len(enumerate_fixed_points(2, 2)) == 10
    assert len(enumerate_fixed_points(1, 0)) == 1
    for r, l in [(2, 3), (3, 2)]:
        assert len(enumerate_fixed_points(r, l)) == binomial(l + 2 * r - 1, 2 * r - 1)


def test_tangent_weights_rank1():
    wt = WeightAssignment((0,), 1)
    assert tangent_weights(FixedPointDatum((1,), (0,)), (0,), wt) == [-1]
    assert tangent_weights(FixedPointDatum((0,), (1,)), (0,), wt) == [1]


def test_tangent_weights_rank2():
    wt = WeightAssignment((5, 3), 1)
    pt = FixedPointDatum((1, 0), (0, 0))
    assert sorted(tangent_weights(pt, (0, 0), wt)) == [-1, 2]


def test_tangent_weights_detects_degenerate():
    wt = WeightAssignment((0, 0), 1)
    pt = FixedPointDatum((1, 0), (0, 0))
    with pytest.raises(NonGenericWeightsError):
        tangent_weights(pt, (0, 0), wt)


def test_tangent_weights_count():
    wt = WeightAssignment((11, 4, -7), 2)
    for pt in enumerate_fixed_points(3, 2):
        assert len(tangent_weights(pt, (1, 0, -1), wt)) == 2 * 3


def test_taut_weight_sum():
    wt = WeightAssignment((9,), 4)
    assert taut_weight_sum(FixedPointDatum((1,), (0,)), (0,), 5, wt) == 9
    assert taut_weight_sum(FixedPointDatum((0,), (1,)), (0,), 5, wt) == 9 + 5 * 4
    assert taut_weight_sum(FixedPointDatum((0,), (0,)), (0,), 5, wt) == 0


def test_degree_rank1_is_n():
    for n in range(5):
        assert plucker_degree_localised(1, (0,), 1, n) == n


def test_degree_rank2_is_2n():
    for n in range(4):
        assert plucker_degree_localised(2, (0, 0), 1, n) == 2 * n


def test_degree_matches_quot2():
    assert plucker_degree_localised(2, (0, 0), 2, 2) == 22


def test_polynomial_hilb_square():
    assert list(degree_polynomial_localised(1, (0,), 2)) == [1, -2, 1]


def test_polynomial_rank2():
    assert list(degree_polynomial_localised(2, (0, 0), 2)) == [6, -16, 12]


def test_polynomial_matches_quot2_matrix():
    from quotdeg.quot2 import degree2_polynomial
    from quotdeg.varieties import ProjProduct, SplitBundle, hyperplane

    P1 = ProjProduct((1,))
    h = hyperplane(P1, 0)
    for r in (1, 2, 3):
        for roots in itertools.combinations_with_replacement((-1, 0, 1), r):
            E = SplitBundle(tuple(c * h for c in roots))
            expected = degree2_polynomial(P1, E)
            assert degree_polynomial_localised(r, roots, 2) == expected


def test_twist_invariance():
    for m in (1, 2):
        for roots, n in [((0, 0), 3), ((1, -1), 3), ((0,), 4)]:
            r = len(roots)
            shifted = tuple(x + m for x in roots)
            assert plucker_degree_localised(r, roots, 2, n) == plucker_degree_localised(
                r, shifted, 2, n - m
            )


def test_seed_independence():
    # different seeds pass the consensus check and give the same value
    a = plucker_degree_localised(2, (1, 0), 2, 3, seed=0)
    b = plucker_degree_localised(2, (1, 0), 2, 3, seed=99)
    assert a == b


def test_domain_guards():
    with pytest.raises(DomainError):
        plucker_degree_localised(2, (0,), 1, 1)
    with pytest.raises(DomainError):
        enumerate_fixed_points(0, 1)
    with pytest.raises(DomainError):
        WeightAssignment((1, 2), 0)


def test_coefficient_extraction_leading():
    # a_0 recovered from the localised polynomial equals (l(r-1))!/(r-1)!^l
    from math import factorial

    from quotdeg.symquot import mu_p1_coeffs

    for r in (1, 2, 3):
        for l in (1, 2, 3, 4):
            poly = degree_polynomial_localised(r, (0,) * r, l)
            a = mu_p1_coeffs(r, l, poly)
            assert a[0] == Fraction(factorial(l * (r - 1)), factorial(r - 1) ** l)


def test_leading_coefficient_matches_closed_form():
    # top coefficient in n is (lr)!/(l! r!^l) r^l, independent of the roots
    from math import factorial

    for roots, l in [((0,), 2), ((1, 0), 2), ((0, 0), 3), ((2, -1), 2)]:
        r = len(roots)
        poly = degree_polynomial_localised(r, roots, l)
        expected = Fraction(factorial(l * r), factorial(l) * factorial(r) ** l) * r**l
        assert poly.coefficients[l] == expected


def test_three_points_on_line_is_cube():
    # the length-3 scheme of the line is P^3 and the twisted tautological
    # determinant has class (n - 2)H, so the degree is (n - 2)^3
    assert list(degree_polynomial_localised(1, (0,), 3)) == [-8, 12, -6, 1]
    for n in (0, 1, 5):
        assert plucker_degree_localised(1, (0,), 3, n) == (n - 2) ** 3


def test_four_points_on_line_is_fourth_power():
    assert list(degree_polynomial_localised(1, (0,), 4)) == [81, -108, 54, -12, 1]
