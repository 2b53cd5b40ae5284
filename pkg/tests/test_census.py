from fractions import Fraction

import pytest

from preper import polys
from preper.arch import DeltaBound, julia_distance_lower
from preper.census import (certified_min_root_distance, enumerate_preperiodic,
                           newton_max_valuation, newton_min_valuation,
                           newton_root_valuations, observed_dynatomic_irreducibility,
                           run_census, sunit_differences, taylor_shift,
                           verify_delta_soundness, verify_sunit_theorem)
from preper.factorint import factor_over_integers
from preper.nonarch import delta_for_prime
from preper.places import Place, PlaceSet


def test_taylor_shift():
    assert taylor_shift([0, 0, 1], 1) == [1, 2, 1]
    assert taylor_shift([1, -1, 1], 2) == [3, 3, 1]  # g(z+2) for z^2 - z + 1


def test_newton_polygon_fixtures():
    assert newton_min_valuation((-5, 0, 1), 0, 5) == Fraction(1, 2)
    assert newton_min_valuation((1, -1, 1), 0, 3) == 0
    # factor of f^3 - f^2 at c=1: z^4 + 3 z^2 + 3 has pure slope 1/4 at p=3
    assert newton_root_valuations((3, 0, 3, 0, 1), 0, 3) == [(Fraction(1, 4), 4)]
    assert newton_max_valuation((3, 0, 3, 0, 1), 0, 3) == Fraction(1, 4)


def test_newton_polygon_consistent_with_indifferent_delta():
    # the certified delta_3 = 3^(-3/2) for c=1 must stay below every root of
    # the degree-4 factor of f^3 - f^2
    d3 = delta_for_prime(Fraction(1), 3)
    assert newton_max_valuation((3, 0, 3, 0, 1), 0, 3) <= d3.valuation


def test_certified_min_root_distance():
    assert certified_min_root_distance((1, -1, 1), 0.0) == pytest.approx(1.0, abs=1e-9)
    # (z-3)(z-5) at 0 -> 3
    assert certified_min_root_distance((15, -8, 1), 0.0) == pytest.approx(3.0, abs=1e-9)


def test_enumerate_preperiodic_c1():
    s = PlaceSet.of(2)
    orbits = enumerate_preperiodic(Fraction(1), 0, s, 3)
    by_pair = {(o.n, o.m): o for o in orbits}
    first = by_pair[(1, 0)]
    assert first.factor == (1, -1, 1) and first.constant_at_alpha == 1 and first.s_integral
    second = by_pair[(2, 0)]
    assert second.factor == (2, 1, 1) and second.constant_at_alpha == 2 and second.s_integral
    # the same factor never reappears under a later pair
    assert len({o.factor for o in orbits}) == len(orbits)


def test_s_integrality_needs_the_prime():
    s_without_3 = PlaceSet.of(2)
    orbits = enumerate_preperiodic(Fraction(3), 0, s_without_3, 2)
    fixed = next(o for o in orbits if (o.n, o.m) == (1, 0))
    assert fixed.constant_at_alpha == 3 and not fixed.s_integral
    s_with_3 = PlaceSet.of(2, 3)
    orbits3 = enumerate_preperiodic(Fraction(3), 0, s_with_3, 2)
    fixed3 = next(o for o in orbits3 if (o.n, o.m) == (1, 0))
    assert fixed3.s_integral


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_dedupe_degree_sum(n):
    # factors of f^n - z across the census orbits sum to 2^n, each exactly once
    orbits = enumerate_preperiodic(Fraction(1), 0, PlaceSet(), 5)
    fz_factors = {g for g, _ in factor_over_integers(polys.difference_poly(1, n, 0)).factors}
    total = sum(o.degree for o in orbits if o.factor in fz_factors)
    assert total == 2 ** n


def test_restricted_mode_rational_c():
    # c = -3/4 has the rational preperiodic points 3/2 and -1/2
    c = Fraction(-3, 4)
    orbits = enumerate_preperiodic(c, 0, PlaceSet.of(2), 2)
    linear = sorted(o.factor for o in orbits if o.degree == 1)
    assert (1, 2) in linear and (-3, 2) in linear
    # Remark-style check: at good primes every preperiodic candidate is integral
    for o in orbits:
        for p in (3, 5, 7):
            assert all(v >= 0 for v, _ in newton_root_valuations(o.factor, 0, p))
    # with 3 outside S the point 3/2 is not S-integral relative to 0
    frac32 = next(o for o in orbits if o.factor == (-3, 2))
    assert not frac32.s_integral
    orbits23 = enumerate_preperiodic(c, 0, PlaceSet.of(2, 3), 2)
    frac32b = next(o for o in orbits23 if o.factor == (-3, 2))
    assert frac32b.s_integral


def test_sunit_differences():
    s = PlaceSet.of(2)
    values = sunit_differences(Fraction(1), Fraction(0), s, 5)
    assert set(values) == {1, 2, 4}
    assert (1, 0) in values[Fraction(1)]
    assert sunit_differences(Fraction(0), Fraction(1), s, 4) == {}
    bigger = sunit_differences(Fraction(1), Fraction(0), PlaceSet.of(2, 5), 5)
    assert set(values) <= set(bigger)


def test_sunit_theorem_archimedean_only_s():
    values = sunit_differences(Fraction(1), Fraction(0), PlaceSet(), 5)
    assert set(values) == {1}
    report = verify_sunit_theorem(Fraction(1), 0, PlaceSet(), 5)
    assert report.ok


def test_verify_sunit_theorem_fixtures():
    assert verify_sunit_theorem(Fraction(1), 0, PlaceSet.of(2), 5).ok
    assert verify_sunit_theorem(Fraction(3), 0, PlaceSet.of(3), 4).ok


@pytest.mark.parametrize("s", [PlaceSet.of(2), PlaceSet.of(2, 3)])
def test_containment_also_holds_at_c5(s):
    assert verify_sunit_theorem(Fraction(5), 0, s, 5).ok


def test_parallel_census_matches_sequential(monkeypatch):
    sequential = enumerate_preperiodic(Fraction(1), 0, PlaceSet.of(2), 3)
    monkeypatch.setenv("PREPER_THREADS", "2")
    parallel = enumerate_preperiodic(Fraction(1), 0, PlaceSet.of(2), 3)
    assert [o.factor for o in parallel] == [o.factor for o in sequential]


def test_census_report_and_bound_sanity():
    rep = run_census(Fraction(1), 0, PlaceSet.of(2), 4)
    assert rep.sunit_count <= rep.sunit_count_bound
    assert rep.s_integral_count <= 451287434
    assert "s_integral" in rep.to_csv().splitlines()[0]
    assert "sunit_values" in rep.to_json()


def test_verify_delta_soundness_small():
    deltas = [julia_distance_lower(Fraction(1)),
              delta_for_prime(Fraction(1), 3).to_delta_bound()]
    rep = verify_delta_soundness(Fraction(1), 0, deltas, 3)
    assert rep.ok
    for check in rep.checks:
        assert check.ok


def test_verify_delta_soundness_catches_bad_bound():
    # a deliberately wrong "certified" bound must FAIL the suite
    fake = DeltaBound(Place.finite(3), 100.0, "indifferent", True, Fraction(1, 100))
    rep = verify_delta_soundness(Fraction(1), 0, [fake], 3)
    assert not rep.ok


def test_observed_dynatomic_irreducibility():
    rows = observed_dynatomic_irreducibility(Fraction(1), 1, 2)
    assert all(len(r) == 3 for r in rows)
    assert all(r[2] for r in rows)  # observed irreducible at this small range
