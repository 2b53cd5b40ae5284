"""Local canonical heights for f_c(z) = z^2 + c over Q, and height constants.

Finite places are exact: good reduction gives log^+ |alpha|_p, bad reduction
gives log max{|alpha|_p, |c|_p^(1/2)} away from the excluded boundary
|alpha|_p = |c|_p^(1/2).  The archimedean escape rate is the only numeric
quantity; it is iterated in double precision with an explicit interval radius
for the accumulated rounding, plus the one-step tail bound
2^-n * (2 log 2 + log^+ |c|), so the reported error is a true bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .places import Place, Rational, height, padic_val, support

LOG2 = math.log(2.0)


class BadPlaceBoundary(ArithmeticError):
    """|alpha|_p = |c|_p^(1/2) at a bad place: the local height formula of
    the bad-reduction lemma does not apply; replace alpha by f_c(alpha) and
    halve the resulting height."""


class CertificationError(RuntimeError):
    """A requested certified quantity could not be certified."""


@dataclass(frozen=True)
class LocalHeight:
    place: Place
    value: float
    error: float
    method: str  # "good-reduction" | "bad-reduction" | "arch-escape-rate"


def bad_primes(c: Union[int, Fraction]) -> list[int]:
    """Primes of bad reduction for f_c: exactly those dividing denom(c)."""
    return support(Fraction(c).denominator)


def local_height_good(alpha: Rational, p: int, c: Rational | None = None) -> LocalHeight:
    """Good-reduction local height: log^+ |alpha|_p (error 0)."""
    if c is not None and padic_val(c, p) < 0:
        raise ValueError(f"f_c has bad reduction at {p}; use local_height_bad")
    v = padic_val(alpha, p)
    value = max(0, -v) * math.log(p) if v != math.inf else 0.0
    return LocalHeight(Place.finite(p), value, 0.0, "good-reduction")


def local_height_bad(alpha: Rational, c: Rational, p: int) -> LocalHeight:
    """Bad-reduction local height: log max{|alpha|_p, |c|_p^(1/2)}, exact.

    Raises BadPlaceBoundary on the excluded case |alpha|_p = |c|_p^(1/2).
    """
    vc = padic_val(c, p)
    if vc >= 0:
        raise ValueError(f"f_c has good reduction at {p}; use local_height_good")
    va = padic_val(alpha, p)
    half_vc = Fraction(vc, 2)
    if va == half_vc:
        raise BadPlaceBoundary(
            f"|alpha|_{p} = |c|_{p}^(1/2); replace alpha by f_c(alpha) and halve"
        )
    vmin = half_vc if va == math.inf else min(Fraction(va), half_vc)
    return LocalHeight(Place.finite(p), float(-vmin) * math.log(p), 0.0, "bad-reduction")


def _to_float_with_radius(x: Fraction) -> tuple[float, float]:
    f = float(x)
    return f, abs(f) * 2.0 ** -52 + 5e-324


def local_height_arch(alpha: Rational, c: Rational, tol: float = 1e-9) -> LocalHeight:
    """Archimedean escape rate lim 2^-n log^+ |f_c^n(alpha)| with a certified
    error bound (tail bound + tracked double-precision rounding)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    alpha, c = Fraction(alpha), Fraction(c)
    z, r = _to_float_with_radius(alpha)
    cf, rc = _to_float_with_radius(c)
    base_tail = 2.0 * LOG2 + max(0.0, math.log(max(abs(cf), 1e-300)))
    n = 0
    while True:
        scale = 2.0 ** -n
        if abs(z) - r > 1e100:
            # escaped: log^+|z_n| known to relative accuracy r/|z|, and the
            # remaining tail sum is bounded by 2|c| / |z_n|^2
            lo = math.log(abs(z) - r)
            hi = math.log(abs(z) + r)
            tail = 2.0 * abs(cf) * math.exp(-2.0 * lo)
            value = scale * 0.5 * (lo + hi)
            error = scale * (0.5 * (hi - lo) + tail) + 1e-15
            return LocalHeight(Place.infinite(), value, error, "arch-escape-rate")
        tail = base_tail * scale
        if tail < tol or n >= 600:
            lo = math.log(max(1.0, abs(z) - r))
            hi = math.log(max(1.0, abs(z) + r))
            value = scale * 0.5 * (lo + hi)
            error = tail + scale * 0.5 * (hi - lo) + 1e-15
            return LocalHeight(Place.infinite(), value, error, "arch-escape-rate")
        z_old = abs(z)
        z = z * z + cf
        r = (2.0 * z_old + r) * r + rc + (z_old * z_old + abs(cf)) * 2.0 ** -50
        n += 1


def canonical_height(alpha: Rational, c: Rational, tol: float = 1e-9) -> tuple[float, float]:
    """hhat_{f_c}(alpha) = sum of local heights; error is archimedean only.

    Contract: if some bad place sits on the boundary |alpha|_p = |c|_p^(1/2),
    BadPlaceBoundary propagates; the caller replaces alpha by f_c(alpha) and
    halves the result.
    """
    alpha, c = Fraction(alpha), Fraction(c)
    arch = local_height_arch(alpha, c, tol)
    total, err = arch.value, arch.error
    for p in sorted(set(support(alpha)) | set(support(c))):
        if padic_val(c, p) < 0:
            total += local_height_bad(alpha, c, p).value
        else:
            total += local_height_good(alpha, p).value
    return total, err


def is_preperiodic(alpha: Rational, c: Rational) -> bool:
    """Exact preperiodicity test over Q.

    Preperiodic points satisfy h(f^k(alpha)) <= h(c) + log 2 for every k
    (|hhat - h| <= h(c) + log 2, and hhat vanishes), so any iterate above
    that threshold settles the question; below it, the orbit lives in a
    finite set and must repeat.
    """
    threshold = height(c) + LOG2 + 1e-9
    z = Fraction(alpha)
    c = Fraction(c)
    seen = set()
    for _ in range(100_000):
        if height(z) > threshold:
            return False
        if z in seen:
            return True
        seen.add(z)
        z = z * z + c
    raise RuntimeError("orbit neither escaped nor repeated (unreachable at desk scale)")


@dataclass(frozen=True)
class HeightConstants:
    """Constants tying h(c) and hhat_{f_c}(0) together.

    h(c) <= C1*hhat(0) + C2 and hhat(0) >= C0, with N = (5^(r+s+1)-1)/2 used
    in exactly this form (see the README note on this constant).  The
    integer-parameter case is pinned to (C1, C2, C0) = (4, 0, 1/4).
    """

    n_exp: int
    r: int
    s: int
    c1: int
    c2: float
    c0: Union[Fraction, float]


def height_constants(c: Rational) -> HeightConstants:
    c = Fraction(c)
    r = 1
    s = sum(1 for p in bad_primes(c) if padic_val(c, p) % 2 == 0)
    n_exp = (5 ** (r + s + 1) - 1) // 2
    if c.denominator == 1:
        return HeightConstants(n_exp, r, s, 4, 0.0, Fraction(1, 4))
    return HeightConstants(n_exp, r, s, 2 ** (n_exp + 2), 12.0 * LOG2, direct_height_floor(0, c))


def generic_height_floor_note(c: Rational) -> str:
    """Display-only form of the generic non-preperiodic height floor.

    The generic constant min{2^-(N+3), 2 log2 * 2^-N(Q, 25 log 2)} is
    astronomically small (N(Q, 25 log 2) counts all rationals of height up to
    25 log 2, on the order of 10^15) and is never used in bound assembly;
    direct_height_floor supplies the working floor.
    """
    hc = height_constants(c)
    return (
        f"C0_generic = min(2^-{hc.n_exp + 3}, 2*log(2) * 2^-N(Q, 25*log 2)); "
        "N(Q, 25*log 2) ~ #{(a, b): |a|, b <= 2^25} ~ 4.5e15 (display only)"
    )


def direct_height_floor(alpha: Rational, c: Rational) -> float:
    """A certified positive lower bound for hhat_{f_c}(alpha).

    Fails (CertificationError) when alpha is preperiodic.  Boundary bad
    places are stepped past by the documented alpha -> f_c(alpha) halving.
    """
    alpha, c = Fraction(alpha), Fraction(c)
    if is_preperiodic(alpha, c):
        raise CertificationError("alpha is preperiodic; hhat(alpha) = 0")
    halvings = 0
    point = alpha
    while halvings < 16:
        try:
            canonical_height(point, c, 1.0)
            break
        except BadPlaceBoundary:
            point = point * point + c
            halvings += 1
    for tol in (1e-6, 1e-8, 1e-10, 1e-12, 5e-14):
        value, err = canonical_height(point, c, tol)
        floor = (value - err) / 2 ** halvings
        if floor > 0:
            return floor * (1 - 1e-12)
    raise CertificationError("could not certify a positive canonical height")
