"""Assembly of the explicit counting bounds on S-integral preperiodic points.

Three entry points:

* main_bound   -- the exact three-term maximum from the equidistribution
                  argument, fed with certified per-place distance bounds;
* uniform_bound-- the uniform bound depending only on epsilon, t and the bad
                  primes of c (sums A_v + B_v hhat(0) envelopes per place);
* int_bound    -- the integer-parameter specialization depending only on S.

All arithmetic runs at 60 digits (constants like 2^r_p overflow doubles).
Every assembled bound rounds upward.  Documented rounding: the exponent
input u, itself an upper bound assembled from logarithms of irrational
constants, is rounded *upward* at 1e-8 before exponentiation.  Coarsening u
upward only loosens a valid bound; both the raw and the rounded u appear in
every report.  With this rounding the integer-case headline value for
S = {inf, 2} is 451287434 (the raw-u exponential is 451287432.89...).

The envelope sums A and B run over S-tilde = S minus the bad primes; summing
over all of S would only enlarge them (noted in each uniform report).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
from mpmath import mpf

from .places import Place, PlaceSet, Rational
from .realnum import to_mpf, up, down, pi_up, fmt
from .arch import (DeltaBound, HypothesisUnverified, a_b_infty_2, a_infty_1,
                   arch_delta_bound, find_attracting_cycle, holder_arch)
from . import heights, nonarch

LOG2 = math.log(2.0)

U_GRAIN = 10 ** 8  # documented upward rounding of u at 1e-8


def _u_round_up(u: mpf) -> mpf:
    return mpf(int(mpmath.ceil(u * U_GRAIN))) / U_GRAIN


@dataclass(frozen=True)
class EquidistInput:
    """Inputs to the quantitative equidistribution right-hand side."""

    c_const: float     # C >= sum of Hoelder constants over V, C >= 1
    kappa: float       # kappa <= min Hoelder exponent over V, 0 < kappa <= 1
    v_size: int        # |V|
    f_size: int        # |F|, must be >= 6 C kappa / (|V|+1)
    dirichlet: float   # Dirichlet form <phi, phi>
    lipschitz: float   # Lip(phi)
    h_rho_f: float     # adelic height of F (0 for preperiodic F)


def quant_equid_rhs(inp: EquidistInput) -> float:
    """(h_rho(F) + 2(|V|+1)/kappa * log|F|/|F|)^(1/2) <phi,phi>^(1/2)
    + Lip(phi) ((|V|+1)/(2 C kappa |F|))^(1/kappa)."""
    if inp.c_const < 1 or not 0 < inp.kappa <= 1:
        raise ValueError("need C >= 1 and 0 < kappa <= 1")
    if min(inp.dirichlet, inp.lipschitz, inp.h_rho_f) < 0 or inp.v_size < 1:
        raise ValueError("negative input")
    if inp.f_size < 6 * inp.c_const * inp.kappa / (inp.v_size + 1):
        raise ValueError("|F| below the equidistribution hypothesis 6 C kappa / (|V|+1)")
    vp1 = inp.v_size + 1
    first = math.sqrt(inp.h_rho_f + 2 * vp1 / inp.kappa * math.log(inp.f_size) / inp.f_size)
    second = inp.lipschitz * (vp1 / (2 * inp.c_const * inp.kappa * inp.f_size)) ** (1 / inp.kappa)
    return first * math.sqrt(inp.dirichlet) + second


def truncation_constants(delta: float, arch: bool) -> tuple[float, float]:
    """(Lipschitz constant, Dirichlet form) of the log-distance truncation at
    radius delta: (1/delta, -4 pi log delta) archimedean, (1, -log delta)
    non-archimedean."""
    if not 0 < delta < 1:
        raise ValueError("need 0 < delta < 1")
    if arch:
        return 1.0 / delta, -4.0 * math.pi * math.log(delta)
    return 1.0, -math.log(delta)


def lambert_threshold(z: float) -> float:
    """T = e^(1 + sqrt(2u) + u), u = -log(-z) - 1, for -1/e <= z < 0;
    guarantees log T / T <= -z (T exceeds e^(-W_-1(z)), and log x / x is
    decreasing past e, so the upward rounding preserves the guarantee)."""
    if not -1 / math.e - 1e-15 <= z < 0:
        raise ValueError("need -1/e <= z < 0")
    u = max(0.0, -math.log(-z) - 1.0)
    return math.exp((1.0 + math.sqrt(2 * u) + u) * (1 + 1e-12))


@dataclass
class BoundReport:
    """An assembled bound P with every intermediate term, JSON-serializable.

    Numeric fields are decimal strings (60-digit arithmetic); float inputs
    are stored as floats so a parsed report recomputes P bit-for-bit.
    """

    kind: str                      # "main" | "uniform" | "int"
    p_value: str                   # final bound, decimal string
    p_ceil: Optional[int]
    terms: tuple[str, str, str]    # the three max-candidates
    u: str                         # u after the documented 1e-8 upward rounding
    u_raw: str
    v_size: int
    s_tilde: tuple[str, ...]
    a_sum: Optional[str]
    b_sum: Optional[str]
    constants: dict
    inputs: tuple[dict, ...]
    notes: tuple[str, ...] = ()

    def to_json(self) -> str:
        d = dict(self.__dict__)
        d["terms"] = list(self.terms)
        d["s_tilde"] = list(self.s_tilde)
        d["inputs"] = list(self.inputs)
        d["notes"] = list(self.notes)
        return json.dumps(d, indent=2)

    @staticmethod
    def from_json(text: str) -> "BoundReport":
        d = json.loads(text)
        d["terms"] = tuple(d["terms"])
        d["s_tilde"] = tuple(d["s_tilde"])
        d["inputs"] = tuple(d["inputs"])
        d["notes"] = tuple(d.get("notes", ()))
        return BoundReport(**d)


def _finish(kind, terms, u, u_raw, v_size, s_tilde, a_sum, b_sum, constants, inputs,
            notes=(), take_ceil=False) -> BoundReport:
    terms = tuple(up(t) for t in terms)
    p = max(terms)
    return BoundReport(
        kind=kind,
        p_value=fmt(p),
        p_ceil=int(mpmath.ceil(p)) if take_ceil else None,
        terms=tuple(fmt(t) for t in terms),
        u=fmt(u),
        u_raw=fmt(u_raw),
        v_size=v_size,
        s_tilde=tuple(str(v) for v in s_tilde),
        a_sum=None if a_sum is None else fmt(a_sum),
        b_sum=None if b_sum is None else fmt(b_sum),
        constants=constants,
        inputs=tuple(inputs),
        notes=tuple(notes),
    )


def main_bound(hhat_alpha: float, s_tilde: PlaceSet, deltas: Sequence[DeltaBound],
               c_const: float, kappa: float, v_size: int) -> BoundReport:
    """The exact three-term bound with certified per-place distance data.

    P = max{ 6 C kappa/(|V|+1),  e^(1+sqrt(2u)+u),
             ((|V|+1)/(2 C kappa)) [ (2/hhat)(sum_arch 1/delta_v + #finite) ]^kappa },
    u = -log min{1/e, kappa hhat / (32 pi (|V|+1) (sum_v |log delta_v|^(1/2))^2)} - 1.
    """
    if hhat_alpha <= 0:
        raise ValueError("need a certified positive hhat(alpha)")
    if not (c_const >= 1 >= kappa > 0):
        raise ValueError("need C >= 1 >= kappa > 0")
    if any(not d.certified for d in deltas):
        raise ValueError("uncertified delta inputs rejected")
    if {d.place for d in deltas} != set(s_tilde.places) or len(deltas) != len(s_tilde):
        raise ValueError("need exactly one certified delta per place of S-tilde")
    hhat = to_mpf(hhat_alpha)
    c_m, k_m = to_mpf(c_const), to_mpf(kappa)
    vp1 = v_size + 1
    sum_sqrt = sum((mpmath.sqrt(up(d.neg_log_delta_upper)) for d in deltas), mpf(0))
    if sum_sqrt > 0:
        ratio = down(k_m * hhat) / up(32 * pi_up() * vp1 * sum_sqrt ** 2)
        u_raw = -mpmath.log(min(mpf(1) / mpmath.e, ratio)) - 1
    else:
        u_raw = mpf(0)
    u = _u_round_up(max(mpf(0), u_raw))
    arch_sum = sum((mpmath.exp(up(d.neg_log_delta_upper)) for d in deltas
                    if not d.place.is_finite), mpf(0))
    n_finite = sum(1 for d in deltas if d.place.is_finite)
    t1 = 6 * c_m * k_m / vp1
    t2 = mpmath.exp(1 + mpmath.sqrt(2 * u) + u)
    t3 = (vp1 / (2 * c_m * k_m)) * ((2 / hhat) * (arch_sum + n_finite)) ** k_m
    return _finish(
        "main", (t1, t2, t3), u, u_raw, v_size, s_tilde, None, None,
        constants={"hhat_alpha": hhat_alpha, "C": c_const, "kappa": kappa},
        inputs=[d.to_dict() for d in deltas])


def _verify_arch_hypothesis(c: Fraction, epsilon: float, t: int):
    """Returns (branch, A_inf, B_inf) as mpf; raises HypothesisUnverified."""
    if c.denominator == 1:
        # non-preperiodic integers lie outside the Mandelbrot set:
        # -log delta_inf <= log 2 from the Julia-distance bound
        return "integer", to_mpf(LOG2), mpf(0)
    hc = heights.height_constants(c)
    branch = None
    lam = heights.local_height_arch(0, c, tol=min(1e-9, max(epsilon / 8, 1e-12)))
    if epsilon > 0 and lam.value - lam.error >= epsilon:
        branch = "escape"
    if branch is None and find_attracting_cycle(complex(c), t) is not None:
        branch = "hyperbolic"
    if branch is None:
        raise HypothesisUnverified(
            f"neither lambda_inf(0) >= {epsilon} certified nor a period <= {t} attracting "
            f"cycle found for c = {c}: the excluded region near the Mandelbrot boundary")
    a2, b2 = a_b_infty_2(t, hc.c1, hc.c2)
    a_inf = max(to_mpf(a_infty_1(epsilon)), to_mpf(a2))
    return branch, up(a_inf), up(to_mpf(b2))


def uniform_bound(c: Rational, s: PlaceSet, epsilon: float = 0.05, t: int = 6) -> BoundReport:
    """Uniform bound: depends only on epsilon, t, |S| and the bad primes.

    S-tilde drops the bad primes (V collects them with the archimedean
    place); per-place envelopes A_v + B_v hhat(0) are summed over S-tilde and
    the critical height floor C0 replaces hhat(0).
    """
    c = Fraction(c)
    if heights.is_preperiodic(0, c):
        raise ValueError("0 is preperiodic for f_c; the bound hypotheses fail")
    hc = heights.height_constants(c)
    bad = heights.bad_primes(c)
    s_tilde = PlaceSet(Place.finite(p) for p in s.finite_primes() if p not in bad)
    v_size = 1 + len(bad)
    branch, a_inf, b_inf = _verify_arch_hypothesis(c, epsilon, t)
    a_sum, b_sum = a_inf, b_inf
    for p in s_tilde.finite_primes():
        _, a_p, b_p = nonarch.r_p_constant(p, c)
        a_sum += a_p
        b_sum += b_p
    c0 = to_mpf(hc.c0)
    a_kappa = up(1 + (to_mpf(math.log(6.0)) + 4 * to_mpf(hc.c2)) / to_mpf(LOG2))
    b_kappa = up(4 * to_mpf(hc.c1) / to_mpf(LOG2))
    inner = a_kappa * a_sum / c0 ** 2 + (a_kappa * b_sum + a_sum * b_kappa) / c0 + b_kappa * b_sum
    u_raw = mpmath.log(32 * pi_up() * (v_size + 1) * len(s_tilde)) + mpmath.log(up(inner)) - 1
    u = _u_round_up(u_raw)
    t1 = 29 * to_mpf(LOG2)
    t2 = mpmath.exp(1 + mpmath.sqrt(2 * u) + u)
    t3 = (to_mpf(7 + 4 * v_size) / (12 * to_mpf(LOG2))) \
        * (2 * len(s_tilde) / c0) ** (to_mpf(LOG2) / (4 * c0)) \
        * mpmath.exp(to_mpf(LOG2) / 4 * (a_inf / c0 + b_inf))
    return _finish(
        "uniform", (t1, t2, t3), u, u_raw, v_size, s_tilde, a_sum, b_sum,
        constants={
            "c": str(c), "epsilon": epsilon, "t": t, "arch_branch": branch,
            "C0": str(hc.c0), "C1": str(hc.c1), "C2": hc.c2,
            "A_inf": fmt(a_inf), "B_inf": fmt(b_inf),
            "A_kappa": fmt(a_kappa), "B_kappa": fmt(b_kappa),
        },
        inputs=[],
        notes=("A and B are summed over S-tilde (bad primes excluded); summing over "
               "all of S would only enlarge them.",))


def int_bound(s: PlaceSet) -> BoundReport:
    """Integer-parameter bound depending only on S: ceil of e^(1+sqrt(2u)+u),
    u = log(64 pi |S|) + log(16 (5 + (20 + 5 log 6)/log 2) sum_p 2^r_p) - 1.

    Needs a finite prime in S (the A <= B simplification does); S = {inf} is
    routed to uniform_bound by the CLI.
    """
    primes = s.finite_primes()
    if not primes:
        raise ValueError("int_bound needs a finite prime in S; use uniform_bound")
    rps = {p: nonarch.r_p_constant(p, Fraction(1))[0] for p in primes}
    pow_sum = sum(to_mpf(2) ** r for r in rps.values())
    log2, log6 = to_mpf(LOG2), to_mpf(math.log(6.0))
    u_raw = mpmath.log(64 * pi_up() * len(s)) \
        + mpmath.log(16 * (5 + (20 + 5 * log6) / log2) * pow_sum) - 1
    u = _u_round_up(u_raw)
    value = mpmath.exp(1 + mpmath.sqrt(2 * u) + u)
    return _finish(
        "int", (29 * log2, value, mpf(0)), u, u_raw, 1, s, None, None,
        constants={"r_p": {str(p): r for p, r in rps.items()},
                   "sum_2_pow_r_p": fmt(pow_sum)},
        inputs=[], take_ceil=True,
        notes=("u is rounded upward at 1e-8 (documented); exact 60-digit evaluation of "
               "the exponential gives the u_raw-based value recorded in the terms.",))


def recompute(report: BoundReport) -> BoundReport:
    """Recompute a report from its recorded inputs (round-trip check)."""
    if report.kind == "main":
        deltas = [DeltaBound.from_dict(d) for d in report.inputs]
        s_tilde = PlaceSet(Place.parse(t) for t in report.s_tilde)
        k = report.constants
        return main_bound(k["hhat_alpha"], s_tilde, deltas, k["C"], k["kappa"], report.v_size)
    if report.kind == "int":
        return int_bound(PlaceSet(Place.parse(t) for t in report.s_tilde))
    if report.kind == "uniform":
        k = report.constants
        s = PlaceSet(Place.parse(t) for t in report.s_tilde)
        # S-tilde equals S for recomputation purposes: bad primes were dropped
        return uniform_bound(Fraction(k["c"]), s, k["epsilon"], k["t"])
    raise ValueError(f"unknown report kind {report.kind!r}")


def exact_pipeline_bound(c: Rational, s: PlaceSet, epsilon: float = 0.05,
                         t: int = 6, tol: float = 1e-9) -> BoundReport:
    """End-to-end main_bound for alpha = 0: certified hhat(0) floor, the
    archimedean route, one non-archimedean delta per good prime of S, and
    Hoelder data C = C_inf + sum_bad C_p, kappa = min over the same places."""
    c = Fraction(c)
    hhat = heights.direct_height_floor(0, c)
    bad = heights.bad_primes(c)
    s_tilde = PlaceSet(Place.finite(p) for p in s.finite_primes() if p not in bad)
    v_size = 1 + len(bad)
    hol = holder_arch(c)
    c_const, kappa = hol.c_const, hol.kappa
    for p in bad:
        logc_p = -float(Fraction(heights.padic_val(c, p))) * math.log(p)
        c_const += 1 + 6 * logc_p
        kappa = min(kappa, LOG2 / (math.log(4.0) + 4 * logc_p))
    c_const = max(1.0, c_const)
    deltas = [arch_delta_bound(c, epsilon, t, hhat)]
    for p in s_tilde.finite_primes():
        deltas.append(nonarch.delta_for_prime(c, p).to_delta_bound())
    report = main_bound(hhat, s_tilde, deltas, c_const, kappa, v_size)
    report.constants["c"] = str(c)
    return report
