from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from preper import polys
from preper.factorint import factor_over_integers
from preper.polys import difference_poly, poly


def test_factor_difference_fixture():
    fac = factor_over_integers(difference_poly(1, 2, 0))
    assert fac.unit == 1
    assert set(fac.factors) == {((1, -1, 1), 1), ((2, 1, 1), 1)}
    assert fac.expand() == difference_poly(1, 2, 0)


def test_eisenstein_quartic_irreducible():
    fac = factor_over_integers(poly([2, 0, 2, 0, 1]))
    assert fac.factors == (((2, 0, 2, 0, 1), 1),)


def test_linear_split():
    fac = factor_over_integers(poly([0, 1, 1]))  # z^2 + z
    assert set(fac.factors) == {((0, 1), 1), ((1, 1), 1)}


def test_multiplicities():
    f = polys.mul(polys.mul(poly([1, 0, 1]), poly([1, 0, 1])), poly([-3, 1]))
    f = polys.mul(f, polys.mul(poly([-3, 1]), poly([-3, 1])))
    fac = factor_over_integers(f)
    assert dict(fac.factors) == {(1, 0, 1): 2, (-3, 1): 3}
    assert fac.expand() == f


def test_non_monic_and_rational_input():
    fac = factor_over_integers(poly([Fraction(1, 6), Fraction(-5, 6), 1]))
    # 6 z^2 - 5 z + 1 = (2z - 1)(3z - 1), unit 1/6
    assert fac.unit == Fraction(1, 6)
    assert set(fac.factors) == {((-1, 2), 1), ((-1, 3), 1)}
    assert fac.expand() == poly([Fraction(1, 6), Fraction(-5, 6), 1])


def test_constant_and_zero():
    assert factor_over_integers(poly([7])).unit == 7
    assert factor_over_integers(poly([7])).factors == ()
    with pytest.raises(ValueError):
        factor_over_integers(())


def test_deterministic():
    f = difference_poly(3, 4, 1)
    assert factor_over_integers(f).factors == factor_over_integers(f).factors


def test_large_difference_polys_roundtrip():
    for c in (1, 5, -4):
        for (n, m) in [(4, 0), (5, 2), (5, 0)]:
            f = difference_poly(c, n, m)
            fac = factor_over_integers(f)
            assert fac.expand() == f
            for g, _ in fac.factors:
                assert g[-1] > 0  # positive leading coefficient


small_irreducibles = [
    (1, 1), (-1, 1), (2, 1), (1, 0, 1), (1, -1, 1), (2, 1, 1),
    (-2, 0, 1), (1, 1, 0, 1), (3, 0, 0, 1),
]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(small_irreducibles), min_size=1, max_size=4),
       st.integers(min_value=-3, max_value=3).filter(lambda u: u != 0))
def test_factor_recovers_random_products(parts, unit):
    f = polys.constant(unit)
    for part in parts:
        f = polys.mul(f, poly(part))
    fac = factor_over_integers(f)
    assert fac.expand() == f
    assert sum((len(g) - 1) * mult for g, mult in fac.factors) == polys.degree(f)
