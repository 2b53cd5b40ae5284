"""Archimedean lower bounds for the distance from 0 to the nearest
preperiodic point of f_c(z) = z^2 + c.

Four routes, each producing a certified DeltaBound when its hypothesis is
machine-checked: the escape-region Julia-set distance, the Hoelder (Kosek)
bound through the escape rate, the worst-case escape-rate constant A_inf_1,
and the hyperbolic-component route through a numerically verified attracting
cycle.  All real arithmetic rounds outward with an explicit 1e-12 relative
slop per guarded step: lower bounds shrink, upper bounds grow, so a reported
bound is still a true bound under floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .places import Place, Rational
from . import heights

LOG2 = math.log(2.0)

_REL = 1e-12


def _up(x: float) -> float:
    return x + abs(x) * _REL + 1e-300


def _down(x: float) -> float:
    return x - abs(x) * _REL - 1e-300


class HypothesisUnverified(RuntimeError):
    """Neither archimedean hypothesis could be verified for this parameter
    (the excluded region near the Mandelbrot boundary)."""


@dataclass(frozen=True)
class HolderData:
    """Hoelder constant/exponent pair for the equilibrium potential."""

    c_const: float
    kappa: float


@dataclass(frozen=True)
class CycleData:
    period: int
    multiplier: complex
    cycle_point: complex
    residual: float


@dataclass(frozen=True)
class DeltaBound:
    """Certified statement delta_v >= exp(-neg_log_delta_upper).

    For finite places `valuation` carries the exact exponent t with
    delta = p^(-t); the float field is derived from it.
    """

    place: Place
    neg_log_delta_upper: float
    method: str  # "julia-distance" | "kosek" | "hyperbolic" | "attracting" | "indifferent"
    certified: bool
    valuation: Optional[Fraction] = None

    def delta_lower(self) -> float:
        return math.exp(-self.neg_log_delta_upper)

    def to_dict(self) -> dict:
        out = {
            "place": str(self.place),
            "neg_log_delta_upper": self.neg_log_delta_upper,
            "method": self.method,
            "certified": self.certified,
        }
        if self.valuation is not None:
            out["valuation"] = [self.valuation.numerator, self.valuation.denominator]
        return out

    @staticmethod
    def from_dict(d: dict) -> "DeltaBound":
        val = d.get("valuation")
        return DeltaBound(
            Place.parse(d["place"]),
            float(d["neg_log_delta_upper"]),
            d["method"],
            bool(d["certified"]),
            Fraction(val[0], val[1]) if val else None,
        )


def escape_radius(c: Union[Rational, float]) -> float:
    """R_c = 1/2 + sqrt(1/4 + |c|): every orbit beyond R_c escapes."""
    return _up(0.5 + math.sqrt(0.25 + abs(float(c))))


def julia_distance_lower(c: Rational) -> DeltaBound:
    """dist(0, Julia set) in the escape region: sqrt(|c| - R_c) for |c| > 2,
    and 1/2 for real c >= 1; the larger applicable bound wins."""
    c = Fraction(c)
    candidates = []
    if abs(c) > 2:
        candidates.append(math.sqrt(_down(abs(float(c)) - escape_radius(c))))
    if c >= 1:
        candidates.append(0.5)
    if not candidates:
        raise ValueError("outside the Julia-distance region (need |c| > 2 or c >= 1)")
    delta = min(1.0, max(candidates))
    neg_log = max(0.0, _up(-math.log(delta)))
    return DeltaBound(Place.infinite(), neg_log, "julia-distance", True)


def holder_arch(c: Rational) -> HolderData:
    """Archimedean Hoelder data: C = 4 log 6 + 2 log^+ |c|,
    kappa = 2 log 2 / (2 log 6 + log^+ |c|)."""
    lp = max(0.0, math.log(max(abs(float(c)), 1e-300)))
    return HolderData(_up(4 * math.log(6.0) + 2 * lp), _down(2 * LOG2 / (2 * math.log(6.0) + lp)))


def kosek_delta(c: Rational, lambda0: float) -> DeltaBound:
    """Hoelder route: delta >= (lambda0 / D)^(D / (2 log 2)) with
    D = 2 log 6 + log^+ |c|, given a certified lambda0 <= lambda_inf(0)."""
    if lambda0 <= 0:
        raise ValueError("need a certified positive lower bound for lambda_inf(0)")
    lp = max(0.0, math.log(max(abs(float(c)), 1e-300)))
    d_const = _up(2 * math.log(6.0) + lp)
    base = _down(lambda0) / d_const
    if base >= 1:
        delta = 1.0
    else:
        delta = _down(base ** _up(d_const / (2 * LOG2)))
    neg_log = max(0.0, _up(-math.log(min(1.0, delta))))
    return DeltaBound(Place.infinite(), neg_log, "kosek", True)


def a_infty_1(epsilon: float) -> float:
    """Worst-case -log delta_inf over all c with lambda_inf(0) >= epsilon.

    Piecewise: above (3/2) log 2 the parameter is forced out past |c| = 2 and
    the Julia-distance bound applies; otherwise the Hoelder route with
    log^+ |c| <= log 4 + 2 epsilon.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if epsilon > 1.5 * LOG2:
        x = math.exp(2 * (epsilon - LOG2))
        inner = _down(x - (0.5 + math.sqrt(0.25 + x)))
        return max(0.0, _up(-0.5 * math.log(inner)))
    return _up((math.log(12.0) + epsilon) / LOG2 * math.log((math.log(48.0) + 2 * epsilon) / epsilon))


def _iterate_with_derivative(z: complex, c: complex, t: int) -> tuple[complex, complex]:
    """(f^t(z), (f^t)'(z))."""
    w, d = z, complex(1.0)
    for _ in range(t):
        d *= 2 * w
        w = w * w + c
    return w, d


def find_attracting_cycle(c: complex, t_max: int) -> Optional[CycleData]:
    """Follow the critical orbit; if it settles onto a cycle of period
    t <= t_max, polish the cycle point on f^t(z) - z and verify contraction.

    Returns None when the orbit escapes or nothing converges (absence is a
    valid answer; only a verified cycle is ever reported).
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    c = complex(c)
    radius = escape_radius(abs(c)) + 1.0
    z = 0j
    for _ in range(4096):
        z = z * z + c
        if abs(z) > radius:
            return None
    trajectory = [z]
    for _ in range(t_max):
        z = z * z + c
        trajectory.append(z)
        if abs(z) > radius:
            return None
    for t in range(1, t_max + 1):
        if abs(trajectory[t] - trajectory[0]) > 0.05:
            continue
        b = trajectory[0]
        ok = False
        for _ in range(80):
            w, d = _iterate_with_derivative(b, c, t)
            denom = d - 1
            if abs(denom) < 1e-12:
                break
            step = (w - b) / denom
            b -= step
            if abs(step) <= 1e-15 * max(1.0, abs(b)):
                ok = True
                break
        if not ok:
            continue
        w, d = _iterate_with_derivative(b, c, t)
        residual = abs(w - b)
        if residual > 1e-11 * max(1.0, abs(b)):
            continue
        if abs(d) >= 1 - 1e-9:
            continue
        # exact period: no proper divisor may already close the cycle
        if any(abs(_iterate_with_derivative(b, c, s)[0] - b) < 1e-6
               for s in range(1, t) if t % s == 0):
            continue
        return CycleData(t, d, b, residual)
    return None


def hyperbolic_constants(t: int, c1: Union[int, float], c2: float) -> tuple[int, Union[int, float], float]:
    """(C3, C4, C5) for a period-t attracting cycle.

    C3 is the distortion denominator (1 for t = 1), C4 the multiplier-height
    slope, C5 the constant term with its factorial and lcm(1..2^t) pieces.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    c3 = 1 if t == 1 else 2 ** (2 ** (t + 2) - 5)
    q = 2 ** t
    c4 = t * 2 ** (2 * t) + c1 * (2 ** (t + 2) - 1) * (q + 2) * (q - 1)
    lcm_q = math.lcm(*range(1, q + 1))
    log_max = max(math.log(8.0), (q - 1) * math.log(3.0))
    c5 = (
        (2 ** (t + 2) - 1)
        * ((q + 2) * (q - 1) * (c2 + 4 * math.log(8.0))
           + (q + 1) ** 2 * LOG2
           + math.log((q + 1) * (q + 2)))
        + 2 * math.log(2 ** (t + 1) * math.factorial(2 ** (t + 1) - 1))
        + LOG2
        + 2 ** (t + 1) * math.log(lcm_q)
        + 2 * log_max
    )
    return c3, c4, _up(c5)


def in_mandel_radius(lambda_abs: float, t: int) -> float:
    """Radius g(|lambda|)/C3 of a preperiodic-point-free disk about 0 for a
    verified period-t cycle of multiplier modulus |lambda| in (0, 1)."""
    if not 0 < lambda_abs < 1:
        raise ValueError("need 0 < |lambda| < 1")
    g = _koebe_g(lambda_abs)
    c3 = 1 if t == 1 else 2 ** (2 ** (t + 2) - 5)
    return _down(g / c3)


def _koebe_g(x: float) -> float:
    s = math.sqrt(1 - x * x)
    return x * (x * x - 1 + s) * (x - 1 + s) * (1 - x) / (x + 1 - s) ** 3


def a_b_infty_2(t: int, c1: Union[int, float], c2: float) -> tuple[float, Union[int, float]]:
    """(A_inf_2, B_inf_2): -log delta_inf <= A_inf_2 + B_inf_2 * hhat(0) on a
    period-t hyperbolic component."""
    c3, c4, c5 = hyperbolic_constants(t, c1, c2)
    return _up(c5 + math.log(20.0) + math.log(c3)), c4


def arch_delta_bound(c: Rational, epsilon: float, t: int, hhat0: float) -> DeltaBound:
    """Best certified archimedean bound among the applicable routes.

    Raises HypothesisUnverified when neither the escape branch
    (lambda_inf(0) >= epsilon, machine-checked) nor a verified attracting
    cycle of period <= t is available.
    """
    c = Fraction(c)
    candidates: list[DeltaBound] = []
    if abs(c) > 2 or c >= 1:
        candidates.append(julia_distance_lower(c))
    lam = heights.local_height_arch(0, c, tol=min(1e-9, max(epsilon / 8, 1e-12)))
    lam_low = lam.value - lam.error
    if epsilon > 0 and lam_low >= epsilon:
        candidates.append(DeltaBound(Place.infinite(), a_infty_1(epsilon), "kosek", True))
        candidates.append(kosek_delta(c, lam_low))
    cycle = find_attracting_cycle(complex(c), t)
    if cycle is not None:
        hc = heights.height_constants(c)
        a2, b2 = a_b_infty_2(cycle.period, hc.c1, hc.c2)
        candidates.append(DeltaBound(
            Place.infinite(), max(0.0, _up(a2 + float(b2) * hhat0)), "hyperbolic", True))
        lam_abs = abs(cycle.multiplier)
        if 0 < lam_abs < 1:
            radius = in_mandel_radius(lam_abs, cycle.period)
            candidates.append(DeltaBound(
                Place.infinite(), max(0.0, _up(-math.log(min(1.0, radius)))), "hyperbolic", True))
    if not candidates:
        raise HypothesisUnverified(
            f"neither lambda_inf(0) >= {epsilon} certified (got lower bound {lam_low:.3g}) "
            f"nor an attracting cycle of period <= {t} found: c = {c} lies in the "
            "excluded region near the Mandelbrot boundary")
    return min(candidates, key=lambda b: b.neg_log_delta_upper)
