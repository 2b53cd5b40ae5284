import math
from fractions import Fraction

import pytest

from preper import polys
from preper.heights import (BadPlaceBoundary, CertificationError, bad_primes,
                            canonical_height, direct_height_floor,
                            generic_height_floor_note, height_constants,
                            is_preperiodic, local_height_arch, local_height_bad,
                            local_height_good)
from preper.places import height

LOG2 = math.log(2)


def test_local_height_good_fixtures():
    assert local_height_good(Fraction(0), 5).value == 0
    assert local_height_good(Fraction(1, 3), 3).value == pytest.approx(math.log(3))
    assert local_height_good(Fraction(6), 3).value == 0
    with pytest.raises(ValueError):
        local_height_good(Fraction(1), 2, c=Fraction(1, 2))


def test_local_height_bad_fixtures():
    assert local_height_bad(0, Fraction(1, 4), 2).value == pytest.approx(LOG2)
    assert local_height_bad(Fraction(1, 4), Fraction(1, 4), 2).value == pytest.approx(math.log(4))
    assert local_height_bad(2, Fraction(1, 2), 2).value == pytest.approx(LOG2 / 2)
    with pytest.raises(ValueError):
        local_height_bad(0, Fraction(3), 3)


def test_local_height_bad_boundary_excluded():
    # |1/2|_2 = 2 = |1/4|_2^(1/2)
    with pytest.raises(BadPlaceBoundary):
        local_height_bad(Fraction(1, 2), Fraction(1, 4), 2)


def test_arch_escape_rate_of_squaring_map():
    lh = local_height_arch(2, 0, 1e-9)
    assert lh.value == pytest.approx(LOG2, abs=1e-9)
    assert lh.error <= 1e-9 + 1e-12


def test_arch_doubling_functional_equation():
    for c, a in [(Fraction(1), Fraction(1, 2)), (Fraction(-4), Fraction(2)),
                 (Fraction(3, 2), Fraction(0)), (Fraction(-1, 2), Fraction(1, 3))]:
        tol = 1e-10
        l1 = local_height_arch(a, c, tol)
        l2 = local_height_arch(a * a + c, c, tol)
        assert l2.value == pytest.approx(2 * l1.value, abs=3 * tol)


def test_canonical_height_of_preperiodic_zero():
    value, err = canonical_height(0, 0, 1e-10)
    assert abs(value) <= err


def test_canonical_height_integer_floor():
    # quarter-h(c) floor for integer parameters
    for c in (1, 3, 5, -4, 7):
        value, err = canonical_height(0, c, 1e-10)
        assert value + err >= 0.25 * height(c) - 1e-9


def test_canonical_height_vs_exact_orbit_oracle():
    # independent oracle: |hhat - 2^-n h(f^n(alpha))| <= 2^-n (h(c) + log 2)
    n = 12
    for c, a in [(Fraction(1), Fraction(0)), (Fraction(3, 2), Fraction(0)),
                 (Fraction(-4), Fraction(1, 3))]:
        value, err = canonical_height(a, c, 1e-11)
        orac = height(polys.orbit(c, a, n)[n]) / 2 ** n
        tail = (height(c) + LOG2) / 2 ** n
        assert abs(value - orac) <= tail + err + 1e-12


def test_canonical_height_doubling():
    c = Fraction(1)
    for a in (Fraction(1, 2), Fraction(2), Fraction(-1, 3)):
        tol = 1e-10
        v1, e1 = canonical_height(a, c, tol)
        v2, e2 = canonical_height(a * a + c, c, tol)
        assert v2 == pytest.approx(2 * v1, abs=3 * tol)


def test_is_preperiodic():
    assert is_preperiodic(0, -1)
    assert is_preperiodic(0, -2)
    assert is_preperiodic(0, 0)
    assert is_preperiodic(1, 0)
    assert not is_preperiodic(0, 1)
    assert not is_preperiodic(0, Fraction(3, 2))


def test_height_constants_fixtures():
    hc = height_constants(Fraction(7))
    assert (hc.c1, hc.c2, hc.c0) == (4, 0.0, Fraction(1, 4))
    hc = height_constants(Fraction(3, 2))
    assert hc.s == 0 and hc.n_exp == 12 and hc.c1 == 2 ** 14
    assert height_constants(Fraction(3, 4)).n_exp == 62
    assert height_constants(Fraction(3, 4)).s == 1


def test_generic_floor_is_display_only():
    note = generic_height_floor_note(Fraction(3, 2))
    assert "display only" in note


def test_direct_height_floor():
    floor = direct_height_floor(0, 1)
    assert floor >= 0.25 * LOG2 - 1e-9
    assert floor <= 0.2037  # true value ~0.20368
    with pytest.raises(CertificationError):
        direct_height_floor(0, -1)
    assert direct_height_floor(0, Fraction(3, 2)) > 0


def test_direct_height_floor_vs_orbit_oracle():
    c = Fraction(3, 2)
    floor = direct_height_floor(0, c)
    n = 12
    orac = height(polys.orbit(c, 0, n)[n]) / 2 ** n
    tail = (height(c) + LOG2) / 2 ** n
    assert floor <= orac + tail
    assert floor >= orac - tail - 1e-6


def test_bad_primes():
    assert bad_primes(Fraction(3, 20)) == [2, 5]
    assert bad_primes(Fraction(7)) == []


def test_convergence_rate_envelope():
    c, a = Fraction(-4), Fraction(1)
    value, err = canonical_height(a, c, 1e-12)
    for n in (6, 12):
        est = height(polys.orbit(c, a, n)[n]) / 2 ** n
        assert abs(value - est) <= (height(c) + LOG2) / 2 ** n + err + 1e-12
