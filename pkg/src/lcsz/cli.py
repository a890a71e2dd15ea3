"""Command-line front end.

Subcommands: threshold, table, beta, analytic, verify-lcsz,
verify-monotonicity, verify-beta.  Exit codes: 0 success, 1 verification
violation, 2 usage or scale error.  Output is deterministic: identical
invocations produce byte-identical text, JSON, and CSV.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import betafn, oracle, threshold
from .exactnum import DEFAULT_PRECISION, log2_interval
from .primes import is_prime


class UsageError(Exception):
    pass


def _decimal(value: Fraction, places: int = 12) -> str:
    """Fixed-point decimal rendering of a rational, rounded toward zero."""
    sign = "-" if value < 0 else ""
    value = abs(Fraction(value))
    scaled = value.numerator * 10**places // value.denominator
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _parse_int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _parse_mu_values(args) -> list[int]:
    if args.mu is not None:
        return [args.mu]
    values: list[int] = []
    for chunk in args.mu_range.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            a, b = chunk.split("..")
            values.extend(range(int(a), int(b) + 1))
        elif chunk:
            values.append(int(chunk))
    return values


def _parse_lambdas(args) -> list[int]:
    if args.lam is not None:
        return [args.lam]
    return _parse_int_list(args.lambdas)


def _factorization_text(items) -> str:
    parts = [f"{p}^{r}" if r > 1 else str(p) for p, r in items]
    return " * ".join(parts)


def _threshold_json(result) -> str:
    payload = {
        "mu": result.mu,
        "lambda": result.lam,
        "log2_t_upper": result.v_bits,
        "factorization": [[p, r] for p, r in result.items],
        "weight_consumed_lo": float(result.w_consumed.lo),
        "precision_bits": result.w_consumed.precision,
    }
    return json.dumps(payload)


def cmd_threshold(args) -> int:
    result = threshold.greedy_threshold(args.mu, args.lam, args.precision)
    if args.format == "json":
        print(_threshold_json(result))
    else:
        print(f"mu = {result.mu}, lambda = {result.lam}")
        print(f"log2 threshold upper bound: {result.v_bits}")
        print(f"witness modulus: {_factorization_text(result.items)}")
        print(f"weight consumed (lo): {_decimal(result.w_consumed.lo)}")
    return 0


def cmd_table(args) -> int:
    mu_values = _parse_mu_values(args)
    lambdas = _parse_lambdas(args)
    cells = {
        (mu, lam): threshold.greedy_threshold(mu, lam, args.precision).v_bits
        for mu in mu_values
        for lam in lambdas
    }
    if args.format == "json":
        rows = [
            {"mu": mu, "values": [cells[(mu, lam)] for lam in lambdas]}
            for mu in mu_values
        ]
        print(json.dumps({"lambdas": lambdas, "rows": rows}))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["mu", *[f"lambda_{lam}" for lam in lambdas]])
        for mu in mu_values:
            writer.writerow([mu, *[cells[(mu, lam)] for lam in lambdas]])
    else:
        header = ["mu", *[f"lambda={lam}" for lam in lambdas]]
        print("\t".join(header))
        for mu in mu_values:
            print("\t".join(str(x) for x in [mu, *[cells[(mu, lam)] for lam in lambdas]]))
    return 0


def cmd_beta(args) -> int:
    if not is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    value = betafn.beta_tail(args.p, args.r, args.mu)
    print(f"I(1/{args.p}, r={args.r}, mu={args.mu}) = {value}")
    print(f"decimal: {_decimal(value)}")
    if value == 1:
        print("-log2: [0, 0]")
    else:
        enc = log2_interval(1 / value, args.precision)
        print(f"-log2: [{_decimal(enc.lo)}, {_decimal(enc.hi)}]")
    print(f"closed-form bound: {betafn.corollary_bound(args.p, args.r, args.mu)}")
    return 0


def cmd_analytic(args) -> int:
    bound = threshold.analytic_threshold(args.mu, args.lam, args.epsilon)
    print(f"analytic log2 threshold for mu={args.mu}, lambda={args.lam}: "
          f"{_decimal(bound, 6)} (rounds to {round(bound)})")
    return 0


def cmd_verify_lcsz(args) -> int:
    moduli = _parse_int_list(args.moduli)
    m_values = list(range(2, args.m_max + 1))
    failures = 0
    for n in moduli:
        report = oracle.exhaustive_lcsz_check(args.mu, n, m_values)
        peak_m = max(report.max_by_m, key=lambda m: report.max_by_m[m][0])
        peak, witness = report.max_by_m[peak_m]
        status = "ok" if report.ok else "VIOLATION"
        print(
            f"N={n}: {report.polys_checked} coprime polynomials, "
            f"max ratio {peak} at m={peak_m} by coeffs={witness} [{status}]"
        )
        for line in report.violations:
            print(f"  {line}")
        failures += len(report.violations)
        if args.samples:
            f = oracle.MultilinearPoly.product_poly(args.mu)
            est = oracle.monte_carlo_prob(f, n, args.m_max, args.samples, args.seed)
            bound = oracle.lcsz_bound(n, args.m_max, args.mu)
            low = float(est.estimate) - est.half_width
            print(
                f"  monte carlo (product polynomial, m={args.m_max}, "
                f"samples={est.samples}): {float(est.estimate):.6f} "
                f"+/- {est.half_width:.6f}"
            )
            if low > float(bound):
                print(f"  MONTE CARLO VIOLATION: {low} > {float(bound)}")
                failures += 1
    return 1 if failures else 0


def cmd_verify_monotonicity(args) -> int:
    report = threshold.check_density_monotonicity(
        args.mu, args.p_max, args.r_max, args.precision
    )
    if not report.applicable:
        print(f"mu={args.mu}: density is constant; nothing to check")
        return 0
    if report.ok:
        print(
            f"mu={args.mu}: density monotone over primes <= {args.p_max}, "
            f"r <= {args.r_max} ({report.comparisons} comparisons)"
        )
        return 0
    print(f"mu={args.mu}: {report.violation}")
    return 1


def cmd_verify_beta(args) -> int:
    primes = (2, 3, 5, 7)
    failures = 0
    cases = 0
    for p in primes:
        for r in range(0, args.r_max + 1):
            for mu in range(1, args.mu_max + 1):
                cases += 1
                series = betafn.beta_tail(p, r, mu)
                convolved = betafn.negbin_ccdf_oracle(p, r, mu)
                if series != convolved:
                    failures += 1
                    print(f"MISMATCH p={p} r={r} mu={mu}: {series} != {convolved}")
    print(f"beta series vs convolution oracle: {cases} cases, {failures} mismatches")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcsz",
        description="Modulus-size thresholds for multilinear zero bounds "
        "over composite moduli, with exact verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, mu_required=True):
        p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
        if mu_required:
            p.add_argument("--mu", type=int, required=True)

    p = sub.add_parser("threshold", help="greedy threshold for one (mu, lambda)")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("table", help="threshold table over mu and lambda grids")
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mu", type=int)
    group.add_argument(
        "--mu-range",
        help="comma-separated values or A..B ranges, e.g. '1..30,50'",
    )
    lgroup = p.add_mutually_exclusive_group(required=True)
    lgroup.add_argument("--lambda", dest="lam", type=int)
    lgroup.add_argument("--lambdas", help="comma-separated list, e.g. '40,100'")
    p.add_argument("--format", choices=["text", "json", "csv"], default="csv")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("beta", help="evaluate one tail value exactly")
    add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("analytic", help="closed-form threshold bound")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=None)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("verify-lcsz", help="exhaustive probability-bound check")
    add_common(p)
    p.add_argument("--moduli", required=True, help="comma-separated moduli")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_lcsz)

    p = sub.add_parser("verify-monotonicity", help="density monotonicity scan")
    add_common(p)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.set_defaults(func=cmd_verify_monotonicity)

    p = sub.add_parser("verify-beta", help="series vs convolution oracle grid")
    p.add_argument("--grid-default", action="store_true")
    p.add_argument("--r-max", type=int, default=13)
    p.add_argument("--mu-max", type=int, default=6)
    p.set_defaults(func=cmd_verify_beta)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "precision", DEFAULT_PRECISION) < 64:
        parser.exit(2, "error: --precision must be at least 64 bits\n")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"error: {exc}\n")
    except oracle.ScaleError as exc:
        parser.exit(2, f"error: {exc}\n")
    except ValueError as exc:
        parser.exit(2, f"error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
