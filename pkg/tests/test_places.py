import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from preper.places import (Place, PlaceSet, height, is_prime, is_s_unit, log_abs,
                           padic_val, rational, support)


def test_padic_val_fixtures():
    assert padic_val(8, 2) == 3
    assert padic_val(Fraction(3, 4), 2) == -2
    assert padic_val(0, 5) == math.inf


def test_padic_val_rejects_composite():
    with pytest.raises(ValueError):
        padic_val(8, 6)
    with pytest.raises(ValueError):
        Place.finite(9)


def test_log_abs_fixtures():
    assert log_abs(Fraction(3, 4), Place.finite(2)) == pytest.approx(math.log(4))
    assert log_abs(-7, Place.infinite()) == pytest.approx(math.log(7))
    assert log_abs(0, Place.infinite()) == -math.inf


def test_product_formula_for_six():
    places = [Place.infinite(), Place.finite(2), Place.finite(3)]
    assert sum(log_abs(6, v) for v in places) == pytest.approx(0, abs=1e-14)


def test_height_fixtures():
    assert height(0) == 0
    assert height(5) == pytest.approx(math.log(5))
    # independent oracle: h = sum of log^+ |x|_v over the support
    x = Fraction(3, 4)
    oracle = sum(max(0.0, log_abs(x, v))
                 for v in [Place.infinite(), Place.finite(2), Place.finite(3)])
    assert height(x) == pytest.approx(oracle)
    assert height(x) == pytest.approx(math.log(4))


def test_is_s_unit_fixtures():
    s = PlaceSet.of(2)
    assert is_s_unit(8, s)
    assert not is_s_unit(6, s)
    assert is_s_unit(Fraction(-1, 2), s)
    assert not is_s_unit(0, s)


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)


@given(rationals, rationals)
def test_s_unit_product_closure(x, y):
    s = PlaceSet.of(2, 3, 7)
    if is_s_unit(x, s) and is_s_unit(y, s):
        assert is_s_unit(x * y, s)


@given(rationals.filter(lambda x: x != 0), st.integers(min_value=-6, max_value=6))
def test_height_power_rule(x, k):
    # exact on the big-integer representation, so equality holds to rounding
    assert height(x ** k) == pytest.approx(abs(k) * height(x), rel=1e-12, abs=1e-12)


def test_product_formula_random_batch():
    rng = random.Random(20260810)
    for _ in range(1000):
        x = Fraction(rng.randint(-10**9, 10**9) or 1, rng.randint(1, 10**9))
        total = log_abs(x, Place.infinite())
        total += sum(log_abs(x, Place.finite(p)) for p in support(x))
        assert abs(total) <= 1e-12


def test_place_parse_and_str():
    assert str(Place.infinite()) == "inf"
    assert str(Place.finite(7)) == "7"
    assert Place.parse("inf") == Place.infinite()
    assert Place.parse("11") == Place.finite(11)


def test_place_set_always_contains_infinity():
    s = PlaceSet.of(5, 2)
    assert Place.infinite() in s
    assert s.finite_primes() == [2, 5]
    assert len(PlaceSet()) == 1


def test_rational_parsing():
    assert rational("3/4") == Fraction(3, 4)
    assert rational("-7") == Fraction(-7)
    assert rational(Fraction(1, 3)) == Fraction(1, 3)


def test_is_prime_small_and_large():
    assert [p for p in range(2, 30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
