import math
from fractions import Fraction

import pytest

from preper.nonarch import (ATTRACTING, INDIFFERENT, attracting_delta, classify_disk,
                            delta_for_prime, indifferent_delta, r_p_constant,
                            residue_orbit)
from preper.heights import direct_height_floor


def _orbit_int(c, length):
    out = [0]
    for _ in range(length):
        out.append(out[-1] ** 2 + c)
    return out


def _val(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def test_residue_orbit_fixtures():
    assert (residue_orbit(1, 3).m, residue_orbit(1, 3).n) == (2, 1)
    assert (residue_orbit(1, 2).m, residue_orbit(1, 2).n) == (0, 2)
    assert (residue_orbit(2, 5).m, residue_orbit(2, 5).n) == (2, 2)
    assert (residue_orbit(1, 5).m, residue_orbit(1, 5).n) == (0, 3)
    orbit = residue_orbit(1, 7)
    assert orbit.n + orbit.m <= orbit.q == 7


def test_residue_orbit_rejects():
    with pytest.raises(ValueError):
        residue_orbit(Fraction(1, 2), 2)  # bad reduction
    with pytest.raises(ValueError):
        residue_orbit(-1, 3)  # 0 preperiodic over Q


def test_classification():
    assert classify_disk(residue_orbit(1, 5)) == ATTRACTING
    assert classify_disk(residue_orbit(1, 3)) == INDIFFERENT
    for c in (1, 3, 5, -4):
        assert classify_disk(residue_orbit(c, 2)) == ATTRACTING


def test_attracting_delta_c1_p5():
    d = attracting_delta(1, 5)
    assert d.valuation == 2 and d.ell == 1
    # exact-integer oracle: delta = |f^6(0) - f^3(0)|_5 and the derivative
    # threshold |(f^3)'(b)|_5 = |y|_5 with y = f^3(0)
    orb = _orbit_int(1, 6)
    assert _val(orb[6] - orb[3], 5) == 2
    assert _val(orb[3], 5) == 1
    assert d.valuation > _val(orb[3], 5)  # delta < |(f^n)'(b)|_p in valuations


def test_attracting_delta_c1_p2():
    d = attracting_delta(1, 2)
    assert d.ell == 2
    orb = _orbit_int(1, 8)
    assert d.valuation == _val(orb[8] - orb[4], 2) == 6


def test_indifferent_delta_c1_p3():
    d = indifferent_delta(1, 3)
    assert d.valuation == Fraction(3, 2)
    assert d.j == 1 and d.ell == 1
    assert d.triple() == (3, 3, 2)
    # oracles: x = f^2(0) = 2, f^3(2) - 2 = 675 = 3^3 * 25 and
    # (f^3)'(2) - 1 = 2079 = 3^3 * 7 * 11
    x_orbit = [2]
    for _ in range(3):
        x_orbit.append(x_orbit[-1] ** 2 + 1)
    assert x_orbit[3] - 2 == 675 and _val(675, 3) == 3
    deriv = 1
    for i in range(3):
        deriv *= 2 * x_orbit[i]
    assert deriv - 1 == 2079 and _val(2079, 3) == 3


def test_indifferent_rejects_p2():
    with pytest.raises(ValueError):
        indifferent_delta(1, 2)
    with pytest.raises(ValueError):
        attracting_delta(1, 3)


@pytest.mark.parametrize("c", [1, 2, 3, 5, -4])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_delta_dispatch_always_certifies(c, p):
    # the internal postcondition checks (attracting inequality, indifferent
    # derivative condition) must pass on the whole tested grid
    d = delta_for_prime(c, p)
    assert d.valuation > 0
    assert d.case in (ATTRACTING, INDIFFERENT)
    bound = d.to_delta_bound()
    assert bound.certified and bound.valuation == d.valuation


@pytest.mark.parametrize("c", [1, 3, 5])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_worst_case_consistency_with_envelope(c, p):
    # -log delta_p <= A_p + B_p hhat(0)
    d = delta_for_prime(c, p)
    _, a_p, b_p = r_p_constant(p, Fraction(c))
    hhat = direct_height_floor(0, c)
    assert d.neg_log() <= float(a_p + b_p * hhat)


def test_r_p_fixtures():
    assert r_p_constant(2, Fraction(1))[0] == 3
    assert r_p_constant(3, Fraction(1))[0] == 17
    assert r_p_constant(5, Fraction(1))[0] == 99
    rp, a_p, b_p = r_p_constant(2, Fraction(1))
    assert float(a_p) == pytest.approx(math.log(2) * 2 ** 3, rel=1e-9)
    assert float(b_p) == pytest.approx(4 * 2 ** 3, rel=1e-9)
    # big exponents must not overflow
    rp13, a13, b13 = r_p_constant(13, Fraction(1))
    assert rp13 == 13 * 13 * 12 - 1
    assert a13 > 0 and b13 > 0
    with pytest.raises(ValueError):
        r_p_constant(2, Fraction(1, 2))
