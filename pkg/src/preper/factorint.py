"""Complete factorization of integer polynomials over Q.

Classic Zassenhaus pipeline: Yun squarefree split, distinct-degree and
equal-degree factorization modulo a well-chosen odd prime, quadratic Hensel
lifting past the Mignotte coefficient bound, then exhaustive subset
recombination with exact trial division.  Exhaustive recombination is fine at
desk scale (degrees <= 64); the working prime is chosen among several
candidates to keep the modular factor count small.

Everything is deterministic: equal-degree splitting draws its trial
polynomials from a fixed sequence instead of a random source.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .places import is_prime
from . import polys
from .polys import IntPoly, RatPoly


# ---------------------------------------------------------------------------
# Dense arithmetic in GF(p)[x], coefficients ascending
# ---------------------------------------------------------------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def gf_from_int(f: Sequence[int], p: int) -> list[int]:
    return _trim([c % p for c in f])


def gf_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def gf_sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] = (out[i + j] + c * d) % p
    return _trim(out)


def gf_monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gf_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, p)
    rem = list(a)
    dq = len(a) - len(b)
    if dq < 0:
        return [], _trim(rem)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = rem[k + len(b) - 1] * inv % p
        if c:
            quo[k] = c
            for j, d in enumerate(b):
                rem[k + j] = (rem[k + j] - c * d) % p
    return _trim(quo), _trim(rem[: len(b) - 1])


def gf_rem(a, b, p):
    return gf_divmod(a, b, p)[1]


def gf_gcd(a, b, p):
    while b:
        a, b = b, gf_rem(a, b, p)
    return gf_monic(a, p)


def gf_gcdex(a, b, p):
    """(s, t, g) with s*a + t*b = g, g the monic gcd."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    if not r0:
        return s0, t0, []
    inv = pow(r0[-1], -1, p)
    scale = lambda f: [c * inv % p for c in f]
    return scale(s0), scale(t0), scale(r0)


def gf_pow_mod(a, e: int, f, p):
    out = [1]
    base = gf_rem(a, f, p)
    while e:
        if e & 1:
            out = gf_rem(gf_mul(out, base, p), f, p)
        base = gf_rem(gf_mul(base, base, p), f, p)
        e >>= 1
    return out


def gf_is_squarefree(a, p) -> bool:
    d = _trim([i * c % p for i, c in enumerate(a)][1:])
    return len(gf_gcd(a, d, p)) == 1


def _edf_trial_polys(p: int, degree_cap: int):
    """Deterministic stream of trial polynomials for equal-degree splitting."""
    for j in range(min(p, 64)):
        yield [j % p, 1]
    state = 0x2545F4914F6CDD1D
    while True:
        coeffs = []
        for _ in range(degree_cap):
            state = (6364136223846793005 * state + 1442695040888963407) % (1 << 64)
            coeffs.append((state >> 16) % p)
        coeffs.append(1)
        yield _trim(coeffs)


def gf_edf(f, d: int, p: int) -> list[list[int]]:
    """Split a monic product of irreducibles of equal degree d (p odd)."""
    if len(f) - 1 == d:
        return [gf_monic(f, p)]
    exponent = (p ** d - 1) // 2
    for r in _edf_trial_polys(p, 2 * d + 1):
        t = gf_pow_mod(r, exponent, f, p)
        g = gf_gcd(gf_sub(t, [1], p), f, p)
        if 0 < len(g) - 1 < len(f) - 1:
            rest = gf_divmod(f, g, p)[0]
            return gf_edf(g, d, p) + gf_edf(rest, d, p)
    raise AssertionError("equal-degree splitting exhausted its trial stream")


def gf_factor_sqf(f, p: int) -> list[list[int]]:
    """Monic irreducible factors of a monic squarefree f in GF(p)[x]."""
    f = gf_monic(f, p)
    out: list[list[int]] = []
    h = [0, 1]
    v = list(f)
    i = 1
    while 2 * i <= len(v) - 1:
        h = gf_pow_mod(h, p, v, p)
        g = gf_gcd(gf_sub(h, [0, 1], p), v, p)
        if len(g) > 1:
            out.extend(gf_edf(g, i, p))
            v = gf_divmod(v, g, p)[0]
            h = gf_rem(h, v, p)
        i += 1
    if len(v) > 1:
        out.append(gf_monic(v, p))
    return out


# ---------------------------------------------------------------------------
# Hensel lifting in Z/p^k (centered representatives)
# ---------------------------------------------------------------------------


def _cmod(x: int, m: int) -> int:
    x %= m
    return x - m if 2 * x > m else x


def _ztrunc(f: Sequence[int], m: int) -> list[int]:
    return _trim([_cmod(c, m) for c in f])


def _zmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                out[i + j] += c * d
    return _trim(out)


def _zsub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _zadd(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _zdivmod_monic(a, b, m):
    """Divide by monic b in Z/m."""
    rem = [_cmod(c, m) for c in a]
    dq = len(a) - len(b)
    if dq < 0:
        return [], _ztrunc(rem, m)
    quo = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        c = _cmod(rem[k + len(b) - 1], m)
        if c:
            quo[k] = c
            for j, d in enumerate(b):
                rem[k + j] = _cmod(rem[k + j] - c * d, m)
    return _ztrunc(quo, m), _ztrunc(rem[: len(b) - 1], m)


def _hensel_step(m, f, g, h, s, t):
    """One quadratic Hensel step: data valid mod m becomes valid mod m^2.

    Requires f = g*h and s*g + t*h = 1 (mod m), h monic, deg s < deg h,
    deg t < deg g.
    """
    mm = m * m
    e = _ztrunc(_zsub(f, _zmul(g, h)), mm)
    q, r = _zdivmod_monic(_zmul(s, e), h, mm)
    g1 = _ztrunc(_zadd(_zadd(g, _zmul(t, e)), _zmul(q, g)), mm)
    h1 = _ztrunc(_zadd(h, r), mm)
    b = _ztrunc(_zsub(_zadd(_zmul(s, g1), _zmul(t, h1)), [1]), mm)
    c, d = _zdivmod_monic(_zmul(s, b), h1, mm)
    s1 = _ztrunc(_zsub(s, d), mm)
    t1 = _ztrunc(_zsub(_zsub(t, _zmul(t, b)), _zmul(c, g1)), mm)
    return g1, h1, s1, t1


def _hensel_lift(p: int, f: list[int], mod_factors: list[list[int]], steps: int) -> list[list[int]]:
    """Lift f = lc(f) * prod(mod_factors) from mod p to mod p^(2^steps).

    Returns monic factors mod p^(2^steps), centered.
    """
    r = len(mod_factors)
    lc = f[-1]
    target = p ** (2 ** steps)
    if r == 1:
        inv = pow(lc % target, -1, target)
        return [_ztrunc([c * inv for c in f], target)]
    k = r // 2
    g = [lc % p]
    for fac in mod_factors[:k]:
        g = gf_mul(g, fac, p)
    h = [1]
    for fac in mod_factors[k:]:
        h = gf_mul(h, fac, p)
    s, t, one = gf_gcdex(g, h, p)
    if one != [1]:
        raise AssertionError("modular factors not coprime")
    g, h, s, t = map(lambda u: _ztrunc(u, p), (g, h, s, t))
    m = p
    for _ in range(steps):
        g, h, s, t = _hensel_step(m, f, g, h, s, t)
        m = m * m
    return _hensel_lift(p, g, mod_factors[:k], steps) + _hensel_lift(p, h, mod_factors[k:], steps)


# ---------------------------------------------------------------------------
# Zassenhaus driver
# ---------------------------------------------------------------------------


def _candidate_primes(f: IntPoly, count: int = 5):
    out = []
    p = 3
    while len(out) < count:
        if is_prime(p) and f[-1] % p != 0:
            fp = gf_from_int(f, p)
            if len(fp) == len(f) and gf_is_squarefree(fp, p):
                out.append(p)
        p += 2
    return out


def _int_divides(g: IntPoly, f: IntPoly) -> IntPoly | None:
    """Quotient f/g over Z if exact, else None."""
    q, r = polys.divmod_poly(polys.poly(f), polys.poly(g))
    if r:
        return None
    if any(c.denominator != 1 for c in q):
        return None
    return tuple(int(c) for c in q)


def _zassenhaus(f: IntPoly) -> list[IntPoly]:
    """Irreducible factors of a primitive squarefree f with positive lc."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    lc = f[-1]
    max_norm = max(abs(c) for c in f)
    # Mignotte: any integer factor has coefficients below this bound
    bound = int(math.isqrt(n + 1) + 1) * 2 ** n * max_norm * lc
    best = None
    for p in _candidate_primes(f):
        facs = gf_factor_sqf(gf_from_int(f, p), p)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if len(facs) == 1:
            break
    p, mod_factors = best
    if len(mod_factors) == 1:
        return [f]
    l = max(1, math.ceil(math.log(2 * bound + 1, p)))
    steps = max(1, math.ceil(math.log2(l)))
    modulus = p ** (2 ** steps)
    lifted = _hensel_lift(p, list(f), mod_factors, steps)

    result: list[IntPoly] = []
    rest = f
    pool = lifted
    size = 1
    while 2 * size <= len(pool):
        found = False
        for idx in combinations(range(len(pool)), size):
            cand = [rest[-1] % modulus]
            for i in idx:
                cand = _ztrunc(_zmul(cand, pool[i]), modulus)
            # cheap rejection on the constant term before exact division
            if rest[0] and cand and (rest[-1] * rest[0]) % cand[0] != 0:
                continue
            g = polys.primitive(tuple(cand))[1]
            quo = _int_divides(g, rest)
            if quo is not None:
                result.append(g)
                rest = polys.primitive(quo)[1]
                pool = [fac for i, fac in enumerate(pool) if i not in idx]
                found = True
                break
        if not found:
            size += 1
    result.append(rest)
    return [g for g in result if len(g) > 1]


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity) == input, factors irreducible over Q.

    Factors are primitive integer polynomials with positive leading
    coefficient (monic for monic input).
    """

    unit: Fraction
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> RatPoly:
        out = polys.constant(self.unit)
        for fac, mult in self.factors:
            for _ in range(mult):
                out = polys.mul(out, polys.poly(fac))
        return out


def factor_over_integers(f: Union[RatPoly, IntPoly, Sequence]) -> Factorization:
    """Factor a nonzero rational polynomial into irreducibles over Q."""
    fr = polys.poly(list(f))
    if not fr:
        raise ValueError("zero polynomial")
    fi, den = polys.clear_denominators(fr)
    cont, prim = polys.primitive(fi)
    unit = Fraction(cont, den)
    if len(prim) == 1:
        return Factorization(unit, ())
    factors: list[tuple[IntPoly, int]] = []
    for sq_part, mult in _yun_squarefree(polys.poly(prim)):
        part_int, _ = polys.clear_denominators(sq_part)
        part = polys.primitive(part_int)[1]
        for irr in sorted(_zassenhaus(part)):
            factors.append((irr, mult))
    # the unit absorbs whatever leading content the factor normalization left
    check = polys.constant(1)
    for fac, mult in factors:
        for _ in range(mult):
            check = polys.mul(check, polys.poly(fac))
    unit = fr[-1] / check[-1]
    return Factorization(unit, tuple(factors))


def _yun_squarefree(f: RatPoly) -> list[tuple[RatPoly, int]]:
    """Yun's squarefree decomposition of a nonconstant polynomial over Q."""
    f = polys.monic(f)
    df = polys.deriv(f)
    a = polys.gcd(f, df)
    b = polys.div_exact(f, a)
    c = polys.div_exact(df, a)
    d = polys.sub(c, polys.deriv(b))
    out = []
    i = 1
    while polys.degree(b) > 0:
        a = polys.gcd(b, d)
        if polys.degree(a) > 0:
            out.append((a, i))
        b = polys.div_exact(b, a)
        c = polys.div_exact(d, a)
        d = polys.sub(c, polys.deriv(b))
        i += 1
    return out
