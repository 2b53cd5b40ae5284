"""Places of Q: exact p-adic valuations, normalized absolute values, heights, S-sets.

The scalar type throughout the package is `fractions.Fraction` (aliased
`Rational`): always in lowest terms with positive denominator, which is
exactly the canonical form the rest of the code relies on.  All p-adic data
is kept as exact integer valuations; real logarithms only appear at the
boundary where bounds are assembled.

Normalization: |x|_p = p^(-v_p(x)) and |x|_inf is the usual absolute value,
so prod_v |x|_v = 1 for nonzero rational x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rational = Fraction

INF = math.inf

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the full unsigned 64-bit range the design calls for).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^64 (and well beyond)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rational(value: Union[int, str, Fraction]) -> Fraction:
    """Parse a rational from an int, an "a/b" string, or a decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


@dataclass(frozen=True)
class Place:
    """A place of Q: the archimedean place (prime=None) or a finite prime."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"not a prime: {self.prime}")

    @property
    def is_finite(self) -> bool:
        return self.prime is not None

    @staticmethod
    def infinite() -> "Place":
        return Place(None)

    @staticmethod
    def finite(p: int) -> "Place":
        return Place(p)

    @staticmethod
    def parse(text: str) -> "Place":
        text = text.strip()
        if text in ("inf", "infinity", "oo"):
            return Place(None)
        return Place(int(text))

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    def _sort_key(self):
        return (0, 0) if self.prime is None else (1, self.prime)


class PlaceSet:
    """A finite set S of places of Q, always containing the infinite place."""

    def __init__(self, places: Iterable[Place] = ()):
        self._places = frozenset(places) | {Place.infinite()}

    @staticmethod
    def of(*primes: int) -> "PlaceSet":
        """S = {inf} together with the given finite primes."""
        return PlaceSet(Place.finite(p) for p in primes)

    @property
    def places(self) -> frozenset[Place]:
        return self._places

    def finite_primes(self) -> list[int]:
        return sorted(v.prime for v in self._places if v.is_finite)

    def contains_prime(self, p: int) -> bool:
        return Place.finite(p) in self._places

    def __contains__(self, place: Place) -> bool:
        return place in self._places

    def __iter__(self):
        return iter(sorted(self._places, key=Place._sort_key))

    def __len__(self) -> int:
        return len(self._places)

    def __eq__(self, other) -> bool:
        return isinstance(other, PlaceSet) and self._places == other._places

    def __hash__(self) -> int:
        return hash(self._places)

    def __repr__(self) -> str:
        return "{" + ", ".join(str(v) for v in self) + "}"


def padic_val(x: Union[int, Fraction], p: int) -> Union[int, float]:
    """v_p(x) with v_p(0) = +infinity; |x|_p = p^(-v_p(x))."""
    if not is_prime(p):
        raise ValueError(f"not a prime: {p}")
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    if v:
        return v
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _log_int(n: int) -> float:
    """log of a positive integer of arbitrary size."""
    return math.log(n)


def log_abs(x: Union[int, Fraction], v: Place) -> float:
    """log |x|_v in nats; -infinity for x = 0."""
    x = Fraction(x)
    if x == 0:
        return -INF
    if not v.is_finite:
        return _log_int(abs(x.numerator)) - _log_int(x.denominator)
    return -padic_val(x, v.prime) * math.log(v.prime)


def log_plus_abs(x: Union[int, Fraction], v: Place) -> float:
    """log^+ |x|_v = max(0, log |x|_v)."""
    return max(0.0, log_abs(x, v)) if x != 0 else 0.0


def support(x: Union[int, Fraction]) -> list[int]:
    """Primes p with v_p(x) != 0, i.e. those dividing numerator or denominator."""
    x = Fraction(x)
    if x == 0:
        return []
    primes = set()
    for n in (abs(x.numerator), x.denominator):
        d = 2
        while d * d <= n:
            if n % d == 0:
                primes.add(d)
                while n % d == 0:
                    n //= d
            d += 1 if d == 2 else 2
        if n > 1:
            primes.add(n)
    return sorted(primes)


def height(x: Union[int, Fraction]) -> float:
    """Absolute logarithmic height h(a/b) = log max(|a|, b) in lowest terms."""
    x = Fraction(x)
    if x == 0:
        return 0.0
    return _log_int(max(abs(x.numerator), x.denominator))


def is_s_unit(x: Union[int, Fraction], s: PlaceSet) -> bool:
    """True iff x != 0 and v_p(x) = 0 for every finite prime p outside S."""
    x = Fraction(x)
    if x == 0:
        return False
    return all(s.contains_prime(p) for p in support(x))
