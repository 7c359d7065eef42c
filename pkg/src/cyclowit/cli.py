"""Command-line front end.

Exit codes:
    0  success
    1  a check suite failed
    2  usage error
    3  a search or degree budget was exceeded
    4  a witness did not verify
    5  I/O failure
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .arith import DEFAULT_RETRIES, DEFAULT_SCAN_CAP, SearchBudgetExceeded, euler_phi
from .cyclotomic import (
    DEFAULT_DEGREE_BUDGET,
    CoefficientKind,
    DegreeBudgetExceeded,
    coeff,
    coefficient_series,
    cyclotomic_exact,
    cyclotomic_trunc,
)
from .witness import ProgressionSpec, WitnessCertificate, build_witness, certify, verify_certificate

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_UNVERIFIED = 4
EXIT_IO = 5


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def cmd_poly(args) -> int:
    if args.n < 1:
        raise ValueError("n must be positive")
    if args.limit is not None and args.limit < 1:
        raise ValueError("limit must be positive")
    if args.limit is None:
        poly = cyclotomic_exact(args.n, degree_budget=args.degree_budget)
    else:
        poly = cyclotomic_trunc(args.n, min(args.limit, euler_phi(args.n) + 1))
    coeffs = poly.dense(len(poly.coeffs) if poly.is_exact else poly.order)
    if args.json:
        _emit(json.dumps({"n": args.n, "limit": args.limit, "coefficients": coeffs}))
    else:
        _emit(" ".join(f"{k}:{a}" for k, a in enumerate(coeffs)))
    return EXIT_OK


def cmd_coeff(args) -> int:
    if args.n < 1 or args.k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    kind = CoefficientKind(args.kind)
    value = coeff(kind, args.n, args.k)
    if args.json:
        _emit(json.dumps({"n": args.n, "k": args.k, "kind": kind.value, "value": value}))
    else:
        _emit(str(value))
    return EXIT_OK


def _render_certificate(cert: WitnessCertificate, as_json: bool) -> str:
    d = cert.to_dict()
    if as_json:
        return json.dumps(d, indent=2)
    lines = []
    for key, v in d.items():
        if isinstance(v, list):
            v = " ".join(v)
        elif isinstance(v, bool):
            v = str(v).lower()
        lines.append(f"{key}: {'null' if v is None else v}")
    return "\n".join(lines)


def cmd_witness(args) -> int:
    spec = ProgressionSpec(args.s, args.t, args.m)
    kind = CoefficientKind(args.kind)
    if args.no_verify:
        cert = build_witness(spec, args.z, kind, retries=args.retries, scan_cap=args.scan_cap)
    else:
        cert = certify(spec, args.z, kind, retries=args.retries, scan_cap=args.scan_cap)
    _emit(_render_certificate(cert, args.json))
    if not args.no_verify and not (cert.verified and cert.computed == args.z):
        print("error: certificate failed verification", file=sys.stderr)
        return EXIT_UNVERIFIED
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = sys.stdin.read() if args.path == "-" else Path(args.path).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    cert = WitnessCertificate.from_json(text)
    ok, computed = verify_certificate(cert)
    if args.json:
        _emit(json.dumps({"verified": ok, "computed": None if computed is None else str(computed)}))
    else:
        _emit(f"verified: {str(ok).lower()}\ncomputed: {'null' if computed is None else computed}")
    return EXIT_OK if ok else EXIT_UNVERIFIED


def cmd_check(args) -> int:
    if args.max_n < 2:
        raise ValueError("max_n must be at least 2")
    results = checks.run_all(args.max_n)
    if args.json:
        _emit(json.dumps([{"suite": r.name, "passed": r.passed, "detail": r.detail} for r in results], indent=2))
    else:
        for r in results:
            _emit(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def table_rows(spec: ProgressionSpec, count: int, k_limit: int, kind: CoefficientKind):
    for j in range(1, count + 1):
        n = spec.term(j)
        series = coefficient_series(kind, n, k_limit)
        for k in range(k_limit):
            yield n, k, series[k]


def cmd_table(args) -> int:
    spec = ProgressionSpec(args.s, args.t, args.m)
    if args.count < 1 or args.k_limit < 1:
        raise ValueError("count and k_limit must be positive")
    kind = CoefficientKind(args.kind)
    rows = table_rows(spec, args.count, args.k_limit, kind)
    if args.json:
        lines = (json.dumps({"n": n, "k": k, "kind": kind.value, "value": v}) for n, k, v in rows)
    else:
        lines = (f"{n}\t{k}\t{v}" for n, k, v in rows)
    try:
        if args.out is None:
            if not args.json:
                _emit(f"n\tk\t{kind.value}")
            for line in lines:
                _emit(line)
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                if not args.json:
                    fh.write(f"n\tk\t{kind.value}\n")
                for line in lines:
                    fh.write(line + "\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--degree-budget", type=int, default=DEFAULT_DEGREE_BUDGET)
    common.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    common.add_argument("--scan-cap", type=int, default=DEFAULT_SCAN_CAP)

    parser = argparse.ArgumentParser(prog="cyclowit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", parents=[common], help="coefficients of Phi_n")
    p.add_argument("n", type=int)
    p.add_argument("--limit", type=int, help="truncation order K")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("coeff", parents=[common], help="a single a(n,k) or c(n,k)")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--kind", choices=["a", "c"], default="a")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("witness", parents=[common], help="build (and verify) n = t mod s with a coefficient equal to z")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("z", type=int)
    p.add_argument("--kind", choices=["a", "c"], default="a")
    p.add_argument("--m", type=int, default=1, help="multiplier of the progression")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="verify a certificate JSON file ('-' for stdin)")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", parents=[common], help="invariant sweeps up to max_n")
    p.add_argument("max_n", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("table", parents=[common], help="tabulate coefficients along a progression")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("count", type=int)
    p.add_argument("k_limit", type=int)
    p.add_argument("--kind", choices=["a", "c"], default="a")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchBudgetExceeded, DegreeBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
