"""Exact univariate polynomial arithmetic over Q, plus the z^2 + c toolkit.

A polynomial is a tuple of coefficients in ascending degree with no trailing
zeros; the zero polynomial is the empty tuple.  `RatPoly` entries are
Fractions, `IntPoly` entries plain ints.  Iterates of f_c(z) = z^2 + c,
difference polynomials f^n - f^m, and (generalized) dynatomic polynomials are
all computed exactly; any inexact division in a dynatomic quotient aborts,
since a nonzero remainder there can only mean an implementation bug.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Tuple, Union

RatPoly = Tuple[Fraction, ...]
IntPoly = Tuple[int, ...]

X = (Fraction(0), Fraction(1))


def poly(coeffs: Sequence[Union[int, Fraction]]) -> RatPoly:
    """Build a normalized polynomial from ascending coefficients."""
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Sequence) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(f) - 1


def constant(value: Union[int, Fraction]) -> RatPoly:
    return poly([value])


def add(f: RatPoly, g: RatPoly) -> RatPoly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    return poly(out)


def neg(f: RatPoly) -> RatPoly:
    return tuple(-c for c in f)


def sub(f: RatPoly, g: RatPoly) -> RatPoly:
    return add(f, neg(g))


def mul(f: RatPoly, g: RatPoly) -> RatPoly:
    if not f or not g:
        return ()
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly(out)


def scale(f: RatPoly, a: Union[int, Fraction]) -> RatPoly:
    a = Fraction(a)
    return poly([c * a for c in f])


def divmod_poly(f: RatPoly, g: RatPoly) -> tuple[RatPoly, RatPoly]:
    """Quotient and remainder of f by nonzero g over Q."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dq = len(f) - len(g)
    if dq < 0:
        return (), poly(rem)
    quo = [Fraction(0)] * (dq + 1)
    inv_lc = 1 / g[-1]
    for k in range(dq, -1, -1):
        c = rem[k + len(g) - 1] * inv_lc
        if c:
            quo[k] = c
            for j, b in enumerate(g):
                rem[k + j] -= c * b
    return poly(quo), poly(rem)


def div_exact(f: RatPoly, g: RatPoly) -> RatPoly:
    """Exact quotient; a nonzero remainder raises."""
    q, r = divmod_poly(f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def deriv(f: RatPoly) -> RatPoly:
    return poly([i * c for i, c in enumerate(f)][1:])


def evaluate(f: Sequence, x):
    """Horner evaluation; works for Fraction, float or complex points."""
    out = 0 * x
    for c in reversed(f):
        out = out * x + c
    return out


def compose(f: RatPoly, g: RatPoly) -> RatPoly:
    """f(g(z)) by Horner over polynomials."""
    out: RatPoly = ()
    for c in reversed(f):
        out = add(mul(out, g), constant(c))
    return out


def monic(f: RatPoly) -> RatPoly:
    return scale(f, 1 / f[-1]) if f else ()


def clear_denominators(f: RatPoly) -> tuple[IntPoly, int]:
    """Return (d*f as an integer polynomial, d) with d the lcm of denominators."""
    d = 1
    for c in f:
        d = d * c.denominator // math.gcd(d, c.denominator)
    return tuple(int(c * d) for c in f), d


def content(f: IntPoly) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, abs(c))
    return g


def primitive(f: IntPoly) -> tuple[int, IntPoly]:
    """(content with sign of the leading coefficient, primitive part)."""
    if not f:
        return 0, ()
    g = content(f)
    if f[-1] < 0:
        g = -g
    return g, tuple(c // g for c in f)


def _pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, all-integer."""
    d = len(a) - len(b)
    if d < 0:
        return a
    lc = b[-1]
    rem = list(a)
    for k in range(d, -1, -1):
        c = rem[k + len(b) - 1]
        rem = [lc * t for t in rem]
        for j in range(len(b)):
            rem[k + j] -= c * b[j]
    out = rem[: len(b) - 1]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _int_gcd_primitive_prs(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd of integer polynomials via the primitive PRS.

    Taking primitive parts after every pseudo-remainder keeps coefficient
    growth polynomial, which is all the desk-scale degrees here need.
    """
    _, a = primitive(f)
    _, b = primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, (primitive(r)[1] if r else ())
    return a


def gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic gcd over Q (subresultant PRS on cleared denominators)."""
    if not f:
        return monic(g)
    if not g:
        return monic(f)
    fi, _ = clear_denominators(f)
    gi, _ = clear_denominators(g)
    h = _int_gcd_primitive_prs(fi, gi)
    return monic(poly(h))


def squarefree_part(f: RatPoly) -> RatPoly:
    return div_exact(monic(f), gcd(f, deriv(f)))


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def moebius(n: int) -> int:
    if n == 1:
        return 1
    mu, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            mu = -mu
        d += 1
    return -mu if n > 1 else mu


# ---------------------------------------------------------------------------
# The quadratic family f_c(z) = z^2 + c
# ---------------------------------------------------------------------------


def iterate_map(c: Union[int, Fraction], n: int) -> RatPoly:
    """The n-th iterate f_c^n(z); f^0 = z, deg f^n = 2^n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    c = Fraction(c)
    f = X
    for _ in range(n):
        f = add(mul(f, f), constant(c))
    return f


def orbit(c: Union[int, Fraction], alpha: Union[int, Fraction], n: int) -> list[Fraction]:
    """[alpha, f(alpha), ..., f^n(alpha)] as exact rationals."""
    c, z = Fraction(c), Fraction(alpha)
    out = [z]
    for _ in range(n):
        z = z * z + c
        out.append(z)
    return out


def difference_poly(c: Union[int, Fraction], n: int, m: int) -> RatPoly:
    """f_c^n - f_c^m for n > m >= 0."""
    if not n > m >= 0:
        raise ValueError("need n > m >= 0")
    return sub(iterate_map(c, n), iterate_map(c, m))


def distinct_root_count(f: RatPoly) -> int:
    """Number of distinct complex roots: deg f - deg gcd(f, f')."""
    if not f:
        raise ValueError("zero polynomial")
    if degree(f) == 0:
        return 0
    return degree(f) - degree(gcd(f, deriv(f)))


def dynatomic(c: Union[int, Fraction], n: int) -> RatPoly:
    """Dynatomic polynomial Phi_n = prod_{d|n} (f^d - z)^mu(n/d), exactly.

    The Moebius product is assembled as numerator/denominator products and
    divided with a zero-remainder check.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    num: RatPoly = constant(1)
    den: RatPoly = constant(1)
    for d in divisors(n):
        mu = moebius(n // d)
        if mu == 0:
            continue
        factor = sub(iterate_map(c, d), X)
        if mu == 1:
            num = mul(num, factor)
        else:
            den = mul(den, factor)
    return div_exact(num, den)


def generalized_dynatomic(c: Union[int, Fraction], m: int, n: int) -> RatPoly:
    """Phi_{m,n} = Phi_n(f^m) / Phi_n(f^{m-1}) for m >= 1 (Phi_{0,n} = Phi_n)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    phi = dynatomic(c, n)
    if m == 0:
        return phi
    return div_exact(compose(phi, iterate_map(c, m)), compose(phi, iterate_map(c, m - 1)))
