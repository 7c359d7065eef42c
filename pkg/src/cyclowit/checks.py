"""Invariant sweeps over small n, shared by the ``check`` subcommand."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .arith import euler_phi, factorize
from .cyclotomic import (
    cyclotomic_exact,
    cyclotomic_trunc,
    divisors_below,
    inverse_cyclotomic_trunc,
)
from .series import CoeffSeries, mul_trunc

# first n where the heights leave {0, +-1}
FORWARD_HEIGHT_THRESHOLD = 105
INVERSE_HEIGHT_THRESHOLD = 561


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    facts: dict = field(default_factory=dict)


def full(n: int) -> CoeffSeries:
    """Phi_n in full through the truncated route."""
    return CoeffSeries(cyclotomic_trunc(n, euler_phi(n) + 1).coeffs)


def oracle_agreement(max_n: int) -> SuiteResult:
    bad = [n for n in range(1, max_n + 1) if full(n).coeffs != cyclotomic_exact(n).coeffs]
    return SuiteResult("oracle", not bad, f"trunc == exact for n <= {max_n}" if not bad else f"mismatch at {bad[:5]}")


def divisor_product(max_n: int) -> SuiteResult:
    bad = []
    for n in range(1, max_n + 1):
        acc = CoeffSeries.one(n + 1)
        for d in divisors_below(n, n + 1):
            acc = mul_trunc(acc, full(d), n + 1)
        if acc.coeffs != CoeffSeries.monomial_sum({0: -1, n: 1}).coeffs:
            bad.append(n)
    return SuiteResult("divisor_product", not bad, f"prod Phi_d = x^n - 1 for n <= {max_n}" if not bad else f"fails at {bad[:5]}")


def palindromy(max_n: int) -> SuiteResult:
    bad = []
    for n in range(2, max_n + 1):
        c = full(n).coeffs
        if c != c[::-1] or len(c) != euler_phi(n) + 1:
            bad.append(n)
    return SuiteResult("palindromy", not bad, f"a(n,k) = a(n,phi(n)-k) for 2 <= n <= {max_n}" if not bad else f"fails at {bad[:5]}")


def value_at_one(max_n: int) -> SuiteResult:
    bad = []
    for n in range(2, max_n + 1):
        f = factorize(n)
        want = f.primes[0] if len(f.factors) == 1 else 1
        if sum(full(n).coeffs) != want:
            bad.append(n)
    return SuiteResult("value_at_one", not bad, f"Phi_n(1) correct for 2 <= n <= {max_n}" if not bad else f"fails at {bad[:5]}")


def first_forward_height(max_n: int) -> tuple[int, int, int] | None:
    """(n, k, a(n,k)) for the first n <= max_n with a coefficient of size >= 2."""
    for n in range(1, max_n + 1):
        for k, a in enumerate(full(n).coeffs):
            if abs(a) >= 2:
                return n, k, a
    return None


def first_inverse_height(max_n: int) -> tuple[int, int, int] | None:
    for n in range(1, max_n + 1):
        for k, c in enumerate(inverse_cyclotomic_trunc(n, n).dense()):
            if abs(c) >= 2:
                return n, k, c
    return None


def heights(max_n: int) -> SuiteResult:
    fwd = first_forward_height(max_n)
    inv = first_inverse_height(max_n)
    ok = (fwd is None or fwd[0] >= FORWARD_HEIGHT_THRESHOLD) and (
        inv is None or inv[0] >= INVERSE_HEIGHT_THRESHOLD
    )
    parts = []
    if fwd is None:
        parts.append(f"|a(n,k)| <= 1 for all n <= {max_n}")
    else:
        parts.append(f"first |a| >= 2 at n = {fwd[0]}: a({fwd[0]},{fwd[1]}) = {fwd[2]}")
    if inv is None:
        parts.append(f"|c(n,k)| <= 1 for all n <= {max_n}")
    else:
        parts.append(f"first |c| >= 2 at n = {inv[0]}: c({inv[0]},{inv[1]}) = {inv[2]}")
    return SuiteResult("heights", ok, "; ".join(parts), {"forward": fwd, "inverse": inv})


def migotti(max_n: int) -> SuiteResult:
    bad = []
    count = 0
    for n in range(6, max_n + 1):
        f = factorize(n)
        if len(f.factors) == 2 and f.is_squarefree():
            count += 1
            if full(n).height() > 1:
                bad.append(n)
    return SuiteResult("migotti", not bad, f"all {count} pq <= {max_n} flat" if not bad else f"fails at {bad[:5]}")


def periodicity(max_n: int) -> SuiteResult:
    bad = []
    for n in range(1, max_n + 1):
        long = inverse_cyclotomic_trunc(n, 4 * n + 1).dense()
        if any(long[k] != long[k % n] for k in range(len(long))):
            bad.append(n)
    return SuiteResult("periodicity", not bad, f"c(n,k) = c(n,k mod n) for n <= {max_n}, k <= 4n" if not bad else f"fails at {bad[:5]}")


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "oracle": oracle_agreement,
    "divisor_product": divisor_product,
    "palindromy": palindromy,
    "value_at_one": value_at_one,
    "heights": heights,
    "migotti": migotti,
    "periodicity": periodicity,
}


def run_all(max_n: int) -> list[SuiteResult]:
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    return [suite(max_n) for suite in SUITES.values()]

