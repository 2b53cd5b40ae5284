"""Brute-force census of preperiodic points at desk scale.

Preperiodic orbits are enumerated as irreducible factors of f^n - f^m,
(n, m) swept in lexicographic (max, sum) order so each factor is attributed
to its minimal iterate pair.  S-integrality relative to an integer alpha
collapses to a smoothness test on g(alpha): the roots are algebraic integers
and prod_w |beta - alpha|_w over places above p is |g(alpha)|_p with every
factor <= 1, so the product is 1 exactly when all factors are.  Non-integer c
is routed to a restricted mode that additionally runs Newton polygons at the
primes dividing denom(c).

Distance measurements are certified: complex roots come from the companion
matrix, then every true root is trapped in Weierstrass-style inclusion disks
D(z_j, n |g(z_j)| / |g'_approx|) computed with outward rounding; p-adic
distances are exact Newton-polygon slopes.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath
import numpy as np

from .places import PlaceSet, Rational, is_s_unit, padic_val
from . import polys
from .polys import IntPoly
from .factorint import factor_over_integers
from .arch import DeltaBound
from . import heights

_EPS = 2.0 ** -53


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


def taylor_shift(coeffs: Sequence[int], a: int) -> list[int]:
    """Coefficients of g(z + a)."""
    out = list(coeffs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return out


def newton_root_valuations(g: Sequence[int], alpha: int, p: int) -> list[tuple[Fraction, int]]:
    """Valuations v_p(beta - alpha) over the roots beta of g, with
    multiplicities, read from the lower convex hull of the shifted
    coefficients' valuations."""
    shifted = taylor_shift(list(g), alpha)
    pts = [(i, padic_val(c, p)) for i, c in enumerate(shifted) if c != 0]
    if len(pts) < 2:
        return []
    hull = [pts[0]]
    for pt in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    return out


def newton_min_valuation(g: Sequence[int], alpha: int, p: int) -> Fraction:
    """Minimum of v_p(beta - alpha) over the roots beta of g."""
    vals = newton_root_valuations(g, alpha, p)
    if not vals:
        raise ValueError("polynomial has no roots")
    return min(v for v, _ in vals)


def newton_max_valuation(g: Sequence[int], alpha: int, p: int) -> Fraction:
    vals = newton_root_valuations(g, alpha, p)
    if not vals:
        raise ValueError("polynomial has no roots")
    return max(v for v, _ in vals)


# ---------------------------------------------------------------------------
# Certified complex root distances
# ---------------------------------------------------------------------------


def certified_min_root_distance(g: Sequence[int], alpha: Union[float, complex]) -> float:
    """Certified lower bound on min_beta |beta - alpha| over the roots of g.

    Companion-matrix approximations are Newton-polished at 70 digits against
    the exact integer coefficients, then every true root is trapped in an
    inclusion disk D(z_j, n |W_j|), W_j = g(z_j)/(lc prod_{k!=j}(z_j - z_k)),
    which is a theorem for any n pairwise-distinct centers.  High precision
    matters: the Horner sum cancels ~|a_i| |z|^i of intermediate magnitude,
    so doubles would leave absolute evaluation noise far above the radii.
    """
    n = len(g) - 1
    if n < 1:
        raise ValueError("need a nonconstant polynomial")
    approx = np.roots([float(c) for c in reversed(g)])
    with mpmath.workdps(70):
        coeffs = [mpmath.mpf(int(c)) for c in g]
        dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]

        def horner(cs, z):
            val = mpmath.mpc(0)
            for c in reversed(cs):
                val = val * z + c
            return val

        roots = [mpmath.mpc(complex(z)) for z in approx]
        for _ in range(4):
            for j, z in enumerate(roots):
                d = horner(dcoeffs, z)
                if abs(d) > 0:
                    roots[j] = z - horner(coeffs, z) / d
        magsum = max(sum(abs(c) * max(1.0, abs(complex(z))) ** i
                         for i, c in enumerate(coeffs)) for z in roots)
        eval_err = magsum * mpmath.mpf("1e-66") * (4 * n + 8)
        lc = abs(coeffs[-1])
        best = mpmath.inf
        for j, z in enumerate(roots):
            den = lc
            for k, w in enumerate(roots):
                if k != j:
                    den *= abs(z - w)
            if den == 0:
                return 0.0
            radius = n * (abs(horner(coeffs, z)) + eval_err) / den
            best = min(best, abs(z - alpha) - radius * (1 + mpmath.mpf("1e-40")))
        return max(0.0, float(best) * (1 - 1e-12))


# ---------------------------------------------------------------------------
# Orbit enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PreperOrbit:
    """One Galois orbit of preperiodic points: an irreducible factor of
    f^n - f^m at its minimal pair (n, m)."""

    n: int
    m: int
    factor: IntPoly
    degree: int
    s_integral: bool
    constant_at_alpha: int
    min_dist_arch: float
    min_val_p: dict

    def row(self) -> dict:
        return {
            "n": self.n, "m": self.m, "degree": self.degree,
            "factor": list(self.factor),
            "g(alpha)": self.constant_at_alpha,
            "s_integral": self.s_integral,
            "min_dist_arch": self.min_dist_arch,
            "min_val_p": {str(p): f"{v.numerator}/{v.denominator}"
                          for p, v in self.min_val_p.items()},
        }


@dataclass
class CensusReport:
    c: Fraction
    alpha: Fraction
    s: PlaceSet
    n_max: int
    orbits: list[PreperOrbit]
    pair_factors: dict
    s_integral_count: int
    sunit_values: dict
    sunit_count: int
    sunit_count_bound: int

    def to_json(self) -> str:
        return json.dumps({
            "c": str(self.c), "alpha": str(self.alpha),
            "S": [str(v) for v in self.s], "n_max": self.n_max,
            "orbits": [o.row() for o in self.orbits],
            "s_integral_count": self.s_integral_count,
            "sunit_values": {str(v): w for v, w in self.sunit_values.items()},
            "sunit_count": self.sunit_count,
            "sunit_count_bound": self.sunit_count_bound,
        }, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "m", "degree", "constant_at_alpha", "s_integral",
                         "min_dist_arch", "min_val_p", "factor"])
        for o in self.orbits:
            writer.writerow([
                o.n, o.m, o.degree, o.constant_at_alpha, o.s_integral,
                f"{o.min_dist_arch:.12g}",
                ";".join(f"{p}:{v.numerator}/{v.denominator}" for p, v in o.min_val_p.items()),
                " ".join(str(c) for c in o.factor),
            ])
        return buf.getvalue()


def _factor_pair(args) -> tuple[tuple[int, int], list[tuple[IntPoly, int]]]:
    c_str, n, m = args
    f = polys.difference_poly(Fraction(c_str), n, m)
    return (n, m), list(factor_over_integers(f).factors)


def _strip_primes(value: int, primes) -> int:
    value = abs(value)
    for p in primes:
        while value % p == 0:
            value //= p
    return value


def enumerate_preperiodic(c: Rational, alpha: int, s: PlaceSet, n_max: int,
                          _pair_factors_out: Optional[dict] = None) -> list[PreperOrbit]:
    """All preperiodic orbits with iterate data (n, m), n <= n_max.

    Integer c uses the g(alpha)-smoothness fast path for S-integrality;
    non-integer c runs the restricted mode (smoothness over S and the bad
    primes, plus Newton polygons at bad primes outside S).
    """
    c = Fraction(c)
    alpha = int(alpha)
    if n_max > 5:
        import warnings
        warnings.warn("n_max > 5 factors degree-64 polynomials; expect minutes")
    bad = heights.bad_primes(c)
    pairs = [(n, m) for n in range(1, n_max + 1) for m in range(n)]
    threads = int(os.environ.get("PREPER_THREADS", "1"))
    tasks = [(str(c), n, m) for n, m in pairs]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(_factor_pair, tasks))
    else:
        results = dict(map(_factor_pair, tasks))
    if _pair_factors_out is not None:
        _pair_factors_out.update(
            {pair: [g for g, _ in facs] for pair, facs in results.items()})
    seen: dict[IntPoly, PreperOrbit] = {}
    orbits: list[PreperOrbit] = []
    for n, m in pairs:
        for g, _mult in results[(n, m)]:
            if g in seen:
                continue
            g_alpha = int(polys.evaluate(polys.poly(g), Fraction(alpha)))
            if c.denominator == 1:
                s_int = g_alpha != 0 and _strip_primes(g_alpha, s.finite_primes()) == 1
            else:
                s_int = _s_integral_restricted(g, alpha, g_alpha, s, bad)
            orbit = PreperOrbit(
                n=n, m=m, factor=g, degree=len(g) - 1,
                s_integral=s_int,
                constant_at_alpha=g_alpha,
                min_dist_arch=certified_min_root_distance(g, float(alpha)),
                min_val_p={p: newton_min_valuation(g, alpha, p) for p in s.finite_primes()},
            )
            seen[g] = orbit
            orbits.append(orbit)
    return orbits


def _s_integral_restricted(g: IntPoly, alpha: int, g_alpha: int, s: PlaceSet,
                           bad: list[int]) -> bool:
    """Restricted-mode S-integrality: no good prime outside S may divide
    g(alpha), and at bad primes outside S the Newton polygon must show no
    root with |beta - alpha|_p < 1."""
    if g_alpha == 0:
        return False
    rest = _strip_primes(g_alpha, set(s.finite_primes()) | set(bad))
    if rest != 1:
        return False
    for p in bad:
        if s.contains_prime(p):
            continue
        if newton_max_valuation(g, alpha, p) > 0:
            return False
    return True


def sunit_differences(c: Rational, alpha: Rational, s: PlaceSet, n_max: int) -> dict:
    """Distinct S-unit values among f^n(alpha) - f^m(alpha), n_max >= n > m >= 0,
    mapped to their witness pairs (n, m)."""
    orb = polys.orbit(c, alpha, n_max)
    out: dict[Fraction, list[tuple[int, int]]] = {}
    for n in range(1, n_max + 1):
        for m in range(n):
            d = orb[n] - orb[m]
            if is_s_unit(d, s):
                out.setdefault(d, []).append((n, m))
    return out


def run_census(c: Rational, alpha: int, s: PlaceSet, n_max: int) -> CensusReport:
    pair_factors: dict = {}
    orbits = enumerate_preperiodic(c, alpha, s, n_max, _pair_factors_out=pair_factors)
    z_count = sum(o.degree for o in orbits if o.s_integral)
    sunits = sunit_differences(c, alpha, s, n_max)
    return CensusReport(
        c=Fraction(c), alpha=Fraction(alpha), s=s, n_max=n_max,
        orbits=orbits, pair_factors=pair_factors,
        s_integral_count=z_count,
        sunit_values=sunits,
        sunit_count=len(sunits),
        sunit_count_bound=((2 * z_count + 1) ** 2 - 1) // 8,
    )


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str

    def __str__(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str):
        self.checks.append(CheckResult(name, bool(ok), detail))

    def to_json(self) -> str:
        return json.dumps({"ok": self.ok,
                           "checks": [c.__dict__ for c in self.checks]}, indent=2)


def verify_sunit_theorem(c: Rational, alpha: int, s: PlaceSet, n_max: int) -> VerificationReport:
    """(a) every S-unit difference forces all factors of its f^n - f^m to be
    S-integral; (b) #S-unit values <= ((2 Z + 1)^2 - 1)/8 with Z the census
    count of S-integral preperiodic points.  A violation falsifies the
    implementation, not the theorems, hence the hard FAIL records."""
    report = VerificationReport()
    census = run_census(c, alpha, s, n_max)
    by_factor = {o.factor: o for o in census.orbits}
    containment_ok = True
    bad_witness = ""
    for value, pairs in census.sunit_values.items():
        for pair in pairs:
            for g in census.pair_factors[pair]:
                if not by_factor[g].s_integral:
                    containment_ok = False
                    bad_witness = f"value {value} at {pair}, factor {list(g)}"
    report.add("sunit-containment",
               containment_ok,
               bad_witness or
               f"{len(census.sunit_values)} S-unit values, all factors S-integral")
    report.add("sunit-count-bound",
               census.sunit_count <= census.sunit_count_bound,
               f"{census.sunit_count} S-unit values <= bound {census.sunit_count_bound} "
               f"from {census.s_integral_count} S-integral points")
    return report


def verify_delta_soundness(c: Rational, alpha: int, deltas: Sequence[DeltaBound],
                           n_max: int, arch_tol: float = 1e-8) -> VerificationReport:
    """Every certified DeltaBound must lower-bound the measured minimum
    distance from alpha to the roots of all f^n - f^m, n <= n_max:
    archimedean within arch_tol, p-adic exactly on Newton-polygon valuations."""
    report = VerificationReport()
    c = Fraction(c)
    factors: list[IntPoly] = []
    seen = set()
    for n in range(1, n_max + 1):
        for m in range(n):
            for g, _ in factor_over_integers(polys.difference_poly(c, n, m)).factors:
                if g not in seen:
                    seen.add(g)
                    factors.append(g)
    arch_min = min(certified_min_root_distance(g, float(alpha)) for g in factors)
    for b in deltas:
        if not b.certified:
            raise ValueError("verify_delta_soundness expects certified bounds")
        if not b.place.is_finite:
            ok = arch_min >= b.delta_lower() - arch_tol
            report.add(f"arch-{b.method}", ok,
                       f"certified delta {b.delta_lower():.6g} vs measured min {arch_min:.6g}")
        else:
            p = b.place.prime
            t = b.valuation if b.valuation is not None else Fraction(b.neg_log_delta_upper)
            worst = max(newton_max_valuation(g, alpha, p) for g in factors)
            ok = worst <= t
            report.add(f"p{p}-{b.method}", ok,
                       f"max root valuation {worst} vs certified exponent {t}")
    return report


def observed_dynatomic_irreducibility(c: Rational, max_m: int, max_n: int) -> list[tuple]:
    """Observed (not proved) irreducibility of the generalized dynatomic
    polynomials for small (m, n); recorded, no conclusion drawn."""
    out = []
    for m in range(0, max_m + 1):
        for n in range(1, max_n + 1):
            phi = polys.generalized_dynatomic(Fraction(c), m, n)
            if polys.degree(phi) < 1:
                continue
            fac = factor_over_integers(phi)
            irreducible = len(fac.factors) == 1 and fac.factors[0][1] == 1
            out.append((m, n, irreducible))
    return out
