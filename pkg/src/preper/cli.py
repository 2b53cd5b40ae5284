"""Command-line front end: height / delta / bound / census / sunits / verify.

All numeric output is in nats; bounds are rounded upward, distance lower
bounds downward.  Exit codes: 0 success, 2 unverifiable archimedean
hypothesis (the excluded parameter region), 1 hard failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .places import PlaceSet, rational
from . import heights, nonarch, bounds, census
from .arch import HypothesisUnverified, arch_delta_bound
from .heights import CertificationError


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="preper",
        description="Bounds on preperiodic points of z^2 + c that are "
                    "S-integral relative to 0 (all values in nats).")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p, with_alpha=True):
        p.add_argument("--c", required=True, help="parameter c as integer or a/b")
        if with_alpha:
            p.add_argument("--alpha", default="0", help="base point (default 0)")
        p.add_argument("--primes", default="", help="comma-separated finite primes of S")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--json", action="store_true", dest="as_json")
        return p

    common(sub.add_parser("height", help="per-place local heights and hhat"))
    d = common(sub.add_parser("delta", help="per-place certified distance bounds"))
    d.add_argument("--epsilon", type=float, default=0.05)
    d.add_argument("--t-max", type=int, default=6, dest="t_max")
    b = common(sub.add_parser("bound", help="assembled counting bound"), with_alpha=False)
    b.add_argument("--epsilon", type=float, default=0.05)
    b.add_argument("--t-max", type=int, default=6, dest="t_max")
    b.add_argument("--pipeline", choices=["auto", "int", "uniform", "exact"], default="auto")
    for verb, help_text in (("census", "enumerate preperiodic orbits"),
                            ("sunits", "S-units among orbit differences"),
                            ("verify", "run the soundness and S-unit suites")):
        p = common(sub.add_parser(verb, help=help_text))
        p.add_argument("--n-max", type=int, default=5, dest="n_max")
        p.add_argument("--csv", action="store_true", dest="as_csv")
        if verb == "verify":
            p.add_argument("--epsilon", type=float, default=0.05)
            p.add_argument("--t-max", type=int, default=6, dest="t_max")
    return ap


def _place_set(args) -> PlaceSet:
    primes = [int(p) for p in args.primes.split(",") if p.strip()]
    return PlaceSet.of(*primes)


def _int_alpha(args) -> int:
    alpha = rational(args.alpha)
    if alpha.denominator != 1:
        raise SystemExit(f"error: census verbs need an integer alpha, got {alpha}")
    return int(alpha)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if getattr(args, "as_json", False):
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in text_lines:
            print(line)


def _cmd_height(args) -> int:
    c = rational(args.c)
    alpha = rational(args.alpha)
    s = _place_set(args)
    try:
        return _height_rows(args, c, alpha, s)
    except heights.BadPlaceBoundary as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _height_rows(args, c, alpha, s) -> int:
    rows = []
    arch = heights.local_height_arch(alpha, c, args.tol)
    rows.append(("inf", arch.value, arch.error, arch.method))
    contributing = sorted(set(heights.bad_primes(c)) | set(s.finite_primes())
                          | set(p for p in heights.support(alpha)))
    for p in contributing:
        if heights.padic_val(c, p) < 0:
            lh = heights.local_height_bad(alpha, c, p)
        else:
            lh = heights.local_height_good(alpha, p)
        rows.append((str(p), lh.value, lh.error, lh.method))
    value, err = heights.canonical_height(alpha, c, args.tol)
    payload = {
        "c": str(c), "alpha": str(alpha),
        "local": [{"place": r[0], "value": r[1], "error": r[2], "method": r[3]} for r in rows],
        "hhat": {"value": value, "error": err, "units": "nats"},
    }
    lines = [f"local canonical heights for c = {c}, alpha = {alpha} (nats)"]
    lines += [f"  v = {r[0]:>4}  lambda_v = {r[1]:.12g} +- {r[2]:.3g}  [{r[3]}]" for r in rows]
    lines.append(f"  hhat(alpha) = {value:.12g} +- {err:.3g}")
    _emit(args, payload, lines)
    return 0


def _cmd_delta(args) -> int:
    c = rational(args.c)
    s = _place_set(args)
    status = 0
    rows = []
    try:
        hhat = heights.direct_height_floor(0, c)
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        b = arch_delta_bound(c, args.epsilon, args.t_max, hhat)
        rows.append({"place": "inf", "method": b.method, "certified": b.certified,
                     "neg_log_delta_upper": b.neg_log_delta_upper,
                     "delta_lower": b.delta_lower()})
    except HypothesisUnverified as exc:
        rows.append({"place": "inf", "method": "unverified", "certified": False,
                     "note": str(exc)})
        status = 2
    for p in s.finite_primes():
        if heights.padic_val(c, p) < 0:
            rows.append({"place": str(p), "method": "bad-reduction", "certified": False,
                         "note": "excluded from S-tilde: preperiodic points sit at "
                                 "|beta|_p = |c|_p^(1/2) > 1"})
            continue
        nad = nonarch.delta_for_prime(c, p)
        rows.append({"place": str(p), "method": nad.case, "certified": True,
                     "valuation": f"{nad.valuation.numerator}/{nad.valuation.denominator}",
                     "triple": list(nad.triple()),
                     "neg_log_delta_upper": nad.neg_log(),
                     "delta_lower": float(Fraction(p) ** -nad.valuation)
                     if nad.valuation.denominator == 1 else p ** -float(nad.valuation)})
    payload = {"c": str(c), "hhat_floor": hhat, "rows": rows, "units": "nats"}
    lines = [f"certified distance-to-preperiodic lower bounds for c = {c} "
             f"(delta_v >= value, -log delta_v <= bound in nats)"]
    for r in rows:
        if "note" in r:
            lines.append(f"  v = {r['place']:>4}  [{r['method']}] {r['note']}")
        else:
            extra = f"  delta = p^-{r['valuation']}" if "valuation" in r else ""
            lines.append(f"  v = {r['place']:>4}  -log delta <= {r['neg_log_delta_upper']:.9g}"
                         f"  (delta >= {r['delta_lower']:.6g}) [{r['method']}]{extra}")
    _emit(args, payload, lines)
    return status


def _cmd_bound(args) -> int:
    c = rational(args.c)
    s = _place_set(args)
    pipeline = args.pipeline
    if pipeline == "auto":
        pipeline = "int" if c.denominator == 1 and s.finite_primes() else "uniform"
    try:
        if pipeline == "int":
            if c.denominator != 1:
                print("error: --pipeline int needs integer c", file=sys.stderr)
                return 1
            if heights.is_preperiodic(0, c):
                print("error: 0 is preperiodic for this c", file=sys.stderr)
                return 1
            report = bounds.int_bound(s)
        elif pipeline == "uniform":
            report = bounds.uniform_bound(c, s, args.epsilon, args.t_max)
        else:
            report = bounds.exact_pipeline_bound(c, s, args.epsilon, args.t_max)
    except HypothesisUnverified as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (CertificationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.as_json:
        print(report.to_json())
    else:
        print(f"{report.kind} bound for c = {c}, S = {s} (count, rounded upward)")
        if report.p_ceil is not None:
            print(f"  P = {report.p_ceil}")
        print(f"  value = {report.p_value}")
        print(f"  terms = {list(report.terms)}")
        print(f"  u = {report.u} (raw {report.u_raw})")
        for note in report.notes:
            print(f"  note: {note}")
    return 0


def _cmd_census(args) -> int:
    c = rational(args.c)
    s = _place_set(args)
    report = census.run_census(c, _int_alpha(args), s, args.n_max)
    if getattr(args, "as_csv", False):
        print(report.to_csv(), end="")
    elif args.as_json:
        print(report.to_json())
    else:
        print(f"census for c = {c}, alpha = {report.alpha}, S = {s}, n <= {args.n_max}")
        for o in report.orbits:
            print(f"  (n,m)=({o.n},{o.m}) deg {o.degree:>2}  g(alpha) = {o.constant_at_alpha}"
                  f"  s_integral = {o.s_integral}  min|beta-alpha| >= {o.min_dist_arch:.6g}")
        print(f"  S-integral preperiodic points: {report.s_integral_count}")
        print(f"  S-unit differences: {sorted(report.sunit_values)}")
        print(f"  S-unit count bound: {report.sunit_count} <= {report.sunit_count_bound}")
    return 0


def _cmd_sunits(args) -> int:
    c = rational(args.c)
    s = _place_set(args)
    values = census.sunit_differences(c, rational(args.alpha), s, args.n_max)
    payload = {"c": str(c), "alpha": args.alpha,
               "sunits": {str(v): w for v, w in sorted(values.items())}}
    lines = [f"S-unit values among f^n(alpha) - f^m(alpha), n <= {args.n_max}:"]
    for v, wit in sorted(values.items()):
        lines.append(f"  {v}  (witnesses {wit})")
    _emit(args, payload, lines)
    return 0


def _cmd_verify(args) -> int:
    c = rational(args.c)
    alpha = _int_alpha(args)
    s = _place_set(args)
    status = 0
    try:
        hhat = heights.direct_height_floor(0, c)
        deltas = [arch_delta_bound(c, args.epsilon, args.t_max, hhat)]
    except HypothesisUnverified:
        deltas = []
        status = 2
    except CertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for p in s.finite_primes():
        if heights.padic_val(c, p) >= 0:
            deltas.append(nonarch.delta_for_prime(c, p).to_delta_bound())
    sound = census.verify_delta_soundness(c, alpha, deltas, args.n_max)
    sunit = census.verify_sunit_theorem(c, alpha, s, args.n_max)
    for check in sound.checks + sunit.checks:
        print(str(check))
    if not (sound.ok and sunit.ok):
        return 1
    return status


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "height": _cmd_height, "delta": _cmd_delta, "bound": _cmd_bound,
        "census": _cmd_census, "sunits": _cmd_sunits, "verify": _cmd_verify,
    }
    return handlers[args.verb](args)


if __name__ == "__main__":
    sys.exit(main())
