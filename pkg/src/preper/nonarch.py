"""Good-reduction p-adic lower bounds for the distance from 0 to the nearest
preperiodic point, by residue-orbit classification.

The closed unit disk is preperiodic under f_c; reducing the critical orbit
mod p yields minimal (m, n) with f^(n+m)(0) = f^m(0) in F_p.  The target disk
D(x, 1), x = f^m(0), is attracting when m = 0 or p = 2 and indifferent
otherwise, and each case yields an exactly computable radius delta = p^(-t)
(t a half-integer in the indifferent case) whose disk D(0, delta) contains no
preperiodic points.

All quantities are valuations of rational orbit values.  Orbit iterates are
reduced mod p^M (good reduction keeps denominators p-units); a difference
that is nonzero mod p^M has exact valuation, and M doubles until that holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from .places import Place, Rational, padic_val
from .arch import DeltaBound
from .realnum import mpf, to_mpf, up
from . import heights

ATTRACTING = "attracting"
INDIFFERENT = "indifferent"


class InternalCheckFailure(AssertionError):
    """A postcondition guaranteed by the underlying lemmas failed; this
    indicates a transcription bug, not a mathematical possibility."""


@dataclass(frozen=True)
class ResidueOrbit:
    """Minimal preperiod m >= 0 and period n >= 1 of 0 under z^2 + c in F_p;
    q is the residue field size (= p over Q), so n + m <= q."""

    p: int
    m: int
    n: int
    q: int


@dataclass(frozen=True)
class NonArchDelta:
    """delta = p^(-valuation) with D(0, delta) certified preperiodic-free."""

    p: int
    valuation: Fraction  # integer for attracting, half-integer for indifferent
    case: str
    ell: int
    j: int

    def neg_log(self) -> float:
        return float(self.valuation) * math.log(self.p)

    def to_delta_bound(self) -> DeltaBound:
        return DeltaBound(Place.finite(self.p), up_float(self.neg_log()), self.case, True,
                          self.valuation)

    def triple(self) -> tuple[int, int, int]:
        """Serialization form (p, valuation numerator, valuation denominator)."""
        return (self.p, self.valuation.numerator, self.valuation.denominator)


def up_float(x: float) -> float:
    return x + abs(x) * 1e-12 + 1e-300


def _require_good(c: Fraction, p: int):
    if padic_val(c, p) < 0:
        raise ValueError(f"f_c has bad reduction at {p} (|c|_p > 1)")


def _mod_pk(x: Fraction, pk: int) -> int:
    """x mod p^M for p-integral rational x."""
    return x.numerator * pow(x.denominator, -1, pk) % pk


def residue_orbit(c: Rational, p: int) -> ResidueOrbit:
    """Minimal (m, n) with f^(n+m)(0) = f^m(0) in F_p."""
    c = Fraction(c)
    _require_good(c, p)
    if heights.is_preperiodic(0, c):
        raise ValueError("0 is preperiodic for f_c over Q; no positive distance exists")
    cp = _mod_pk(c, p)
    seen = {0: 0}
    x = 0
    k = 0
    while True:
        x = (x * x + cp) % p
        k += 1
        if x in seen:
            m = seen[x]
            return ResidueOrbit(p, m, k - m, p)
        seen[x] = k


def classify_disk(orbit: ResidueOrbit) -> str:
    """Attracting iff m = 0 or p = 2; indifferent iff p odd and m >= 1."""
    return ATTRACTING if (orbit.m == 0 or orbit.p == 2) else INDIFFERENT


def _orbit_mod(c: Fraction, p: int, M: int, length: int) -> list[int]:
    pk = p ** M
    cp = _mod_pk(c, pk)
    out = [0]
    x = 0
    for _ in range(length):
        x = (x * x + cp) % pk
        out.append(x)
    return out


def _val_exact(c: Fraction, p: int, quantity, start_M: int = 24) -> int:
    """Exact v_p of quantity(orbit mod p^M), doubling M until it resolves.

    `quantity` maps (orbit list, modulus) -> residue; a nonzero residue mod
    p^M has valuation < M, which is then exact.
    """
    M = start_M
    while M <= 1 << 14:
        pk = p ** M
        residue = quantity(M, pk) % pk
        if residue:
            v = 0
            while residue % p == 0:
                residue //= p
                v += 1
            if v < M:
                return v
        M *= 2
    raise InternalCheckFailure(f"valuation did not resolve below p^{M} at p={p}")


def attracting_delta(c: Rational, p: int) -> NonArchDelta:
    """Attracting-case radius: delta = |f^(2ln+m)(0) - f^(ln+m)(0)|_p for the
    first l (within the ceiling bound) passing delta < |(f^n)'(b)|_p.

    |(f^n)'(b)|_p equals |2|_p^n |y|_p when m = 0 and |2|_p^n when m > 0
    (then p = 2), with y = f^(n+m)(0) - f^m(0).
    """
    c = Fraction(c)
    orbit = residue_orbit(c, p)
    if classify_disk(orbit) != ATTRACTING:
        raise ValueError("disk is not attracting; use indifferent_delta")
    n, m = orbit.n, orbit.m
    v2 = n * padic_val(2, p) if p == 2 else 0
    y_val = _val_exact(c, p, lambda M, pk: _diff(c, p, M, pk, n + m, m))
    threshold = v2 + y_val if m == 0 else v2
    if p == 2:
        ell_cap = int(math.floor(math.log2(n / y_val + 1))) + 1
    else:
        ell_cap = 1
    for ell in range(1, ell_cap + 1):
        d_val = _val_exact(c, p, lambda M, pk: _diff(c, p, M, pk, 2 * ell * n + m, ell * n + m))
        if d_val > threshold:
            return NonArchDelta(p, Fraction(d_val), ATTRACTING, ell, 0)
    raise InternalCheckFailure(
        f"no l <= {ell_cap} satisfied delta < |(f^n)'(b)|_p at p={p}, c={c}")


def _diff(c: Fraction, p: int, M: int, pk: int, k2: int, k1: int) -> int:
    orb = _orbit_mod(c, p, M, k2)
    return (orb[k2] - orb[k1]) % pk


def _deriv_minus_one(c: Fraction, p: int, M: int, pk: int, m: int, length: int) -> int:
    """(f^length)'(x) - 1 mod p^M at x = f^m(0): product of 2 f^i(0), m <= i < m+length."""
    orb = _orbit_mod(c, p, M, m + length)
    prod = 1
    for i in range(m, m + length):
        prod = prod * 2 * orb[i] % pk
    return (prod - 1) % pk


def indifferent_delta(c: Rational, p: int) -> NonArchDelta:
    """Indifferent-case radius delta = p^(-t/2), t = v_p(f^(jnp^l)(x) - x).

    j = 1 when |(f^n)'(x) - 1|_p < 1, else j = p - 1; l starts at 1 (the
    K = Q clause) and retries up to the golden-ratio ceiling (l = 2 over Q)
    if either check delta^2 < 1/p or |(f^N)'(x) - 1|_p < p^(-1/(p-1)) fails.
    """
    c = Fraction(c)
    orbit = residue_orbit(c, p)
    if classify_disk(orbit) != INDIFFERENT:
        raise ValueError("disk is not indifferent; use attracting_delta")
    n, m = orbit.n, orbit.m
    dval_n = _val_exact(c, p, lambda M, pk: _deriv_minus_one(c, p, M, pk, m, n))
    j = 1 if dval_n >= 1 else p - 1
    for ell in (1, 2):
        N = j * n * p ** ell
        t2 = _val_exact(c, p, lambda M, pk: _diff(c, p, M, pk, N + m, m))
        dval = _val_exact(c, p, lambda M, pk: _deriv_minus_one(c, p, M, pk, m, N))
        if t2 >= 2 and dval >= 1:
            return NonArchDelta(p, Fraction(t2, 2), INDIFFERENT, ell, j)
    raise InternalCheckFailure(
        f"indifferent checks failed through the golden-ratio ceiling at p={p}, c={c}")


def delta_for_prime(c: Rational, p: int) -> NonArchDelta:
    """Dispatch on the residue-orbit classification."""
    orbit = residue_orbit(c, p)
    if classify_disk(orbit) == ATTRACTING:
        return attracting_delta(c, p)
    return indifferent_delta(c, p)


def r_p_constant(p: int, c: Rational) -> tuple[int, mpf, mpf]:
    """(r_p, A_p, B_p) for a good-reduction prime over Q:

    r_p = max{p * floor(log(p v_p(2) + 1)/log 2 + 1) - 1, p^2 (p-1) - 1},
    A_p = (C2 + log 2) 2^r_p, B_p = C1 2^r_p (C1, C2 from height_constants).
    2^r_p overflows doubles already at p = 11, hence the mpf return type.
    """
    c = Fraction(c)
    _require_good(c, p)
    v2 = 1 if p == 2 else 0
    first = p * math.floor(math.log(p * v2 + 1) / math.log(2) + 1) - 1
    r_p = max(first, p * p * (p - 1) - 1)
    hc = heights.height_constants(c)
    pow_rp = to_mpf(2) ** r_p
    a_p = up((to_mpf(hc.c2) + to_mpf(math.log(2.0))) * pow_rp)
    b_p = up(to_mpf(hc.c1) * pow_rp)
    return r_p, a_p, b_p
