"""High-precision reals for bound assembly.

The assembled constants overflow doubles (2^r_p with r_p in the thousands for
p >= 11), so the bound engine works in mpmath at 60 digits.  Outward rounding
is realized as an explicit relative slop of 1e-45 per guarded operation,
orders of magnitude larger than the 60-digit arithmetic error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import mpmath
from mpmath import mp, mpf

mp.dps = 60

REL_SLOP = mpf("1e-45")


def to_mpf(x: Union[int, float, str, Fraction, mpf]) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / mpf(x.denominator)
    return mpf(x)


def up(x) -> mpf:
    x = to_mpf(x)
    return x + abs(x) * REL_SLOP


def down(x) -> mpf:
    x = to_mpf(x)
    return x - abs(x) * REL_SLOP


def pi_up() -> mpf:
    return up(mpmath.pi)


def fmt(x, digits: int = 50) -> str:
    return mpmath.nstr(to_mpf(x), digits)
