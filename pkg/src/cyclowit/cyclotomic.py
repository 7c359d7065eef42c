"""Cyclotomic and inverse-cyclotomic coefficients.

Two independent routes to Phi_n:

* ``cyclotomic_exact`` divides x**n - 1 by every Phi_d, d a proper divisor
  of n (slow, used as the oracle);
* ``cyclotomic_trunc`` multiplies the binomials (1 - x**d)**mu(n/d) over the
  divisors d below the truncation order, never touching the full polynomial.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from .arith import PrimeFactorization, as_factorization, euler_phi
from .series import CoeffSeries, binomial_product, poly_divide_exact

DEFAULT_DEGREE_BUDGET = 10**6


class DegreeBudgetExceeded(RuntimeError):
    """An exact polynomial would exceed the configured degree budget."""


class CoefficientKind(enum.Enum):
    FORWARD = "a"
    INVERSE = "c"

    @classmethod
    def parse(cls, value: "str | CoefficientKind") -> "CoefficientKind":
        if isinstance(value, cls):
            return value
        return cls(value)


def divisors_below(f: int | PrimeFactorization, bound: int) -> list[int]:
    """All divisors of f.value strictly below bound, ascending."""
    f = as_factorization(f)
    out = [1] if bound > 1 else []
    for p, e in f.factors:
        if p >= bound:
            break
        grown = []
        for d in out:
            x = d
            for _ in range(e):
                x *= p
                if x >= bound:
                    break
                grown.append(x)
        out += grown
    return sorted(out)


def _signed_divisors_below(primes: tuple[int, ...], bound: int) -> list[tuple[int, int]]:
    # (d, omega(d)) for squarefree divisors d < bound, pruned depth-first
    out = []

    def walk(start: int, d: int, w: int) -> None:
        out.append((d, w))
        for i in range(start, len(primes)):
            nd = d * primes[i]
            if nd >= bound:
                break
            walk(i + 1, nd, w + 1)

    if bound > 1:
        walk(0, 1, 0)
    return out


def _mobius_factors(f: PrimeFactorization, K: int, invert: bool) -> list[tuple[int, int]]:
    primes = f.primes
    omega = len(primes)
    flip = -1 if invert else 1
    return [
        (d, flip * (-1 if (omega - w) % 2 else 1))
        for d, w in _signed_divisors_below(primes, K)
    ]


def _trunc(f: int | PrimeFactorization, K: int, invert: bool) -> CoeffSeries:
    f = as_factorization(f)
    if K < 0:
        raise ValueError("negative truncation order")
    if f.value == 1:
        # Phi_1 = x - 1 = -(1 - x)
        return binomial_product([(1, -1 if invert else 1)], K, sign=-1)
    if not f.is_squarefree():
        kernel = PrimeFactorization.from_primes(f.primes)
        e = f.value // kernel.value
        inner = _trunc(kernel, -(-K // e), invert)
        return inner.substitute_power(e).truncate(K)
    return binomial_product(_mobius_factors(f, K, invert), K)


def cyclotomic_trunc(f: int | PrimeFactorization, K: int) -> CoeffSeries:
    """Phi_n mod x**K from the Moebius product over divisors below K."""
    return _trunc(f, K, invert=False)


def inverse_cyclotomic_trunc(f: int | PrimeFactorization, K: int) -> CoeffSeries:
    """1/Phi_n mod x**K; the Moebius product with every exponent negated."""
    return _trunc(f, K, invert=True)


@lru_cache(maxsize=4096)
def _exact(n: int) -> CoeffSeries:
    rest = CoeffSeries.monomial_sum({0: -1, n: 1})
    for d in divisors_below(n, n):
        rest = poly_divide_exact(rest, _exact(d))
    return rest


def cyclotomic_exact(n: int, degree_budget: int = DEFAULT_DEGREE_BUDGET) -> CoeffSeries:
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    if euler_phi(n) > degree_budget:
        raise DegreeBudgetExceeded(f"deg Phi_{n} = {euler_phi(n)} exceeds budget {degree_budget}")
    return _exact(n)


def a_coeff(n: int | PrimeFactorization, k: int) -> int:
    """Coefficient of x**k in Phi_n."""
    if k < 0:
        raise ValueError("negative index")
    f = as_factorization(n)
    if k > euler_phi(f):
        return 0
    return cyclotomic_trunc(f, k + 1)[k]


def c_coeff(n: int | PrimeFactorization, k: int) -> int:
    """Coefficient of x**k in 1/Phi_n; periodic in k with period n."""
    if k < 0:
        raise ValueError("negative index")
    f = as_factorization(n)
    k %= f.value
    return inverse_cyclotomic_trunc(f, k + 1)[k]


def coeff(kind: CoefficientKind, n: int | PrimeFactorization, k: int) -> int:
    return a_coeff(n, k) if kind is CoefficientKind.FORWARD else c_coeff(n, k)


def coefficient_series(kind: CoefficientKind, n: int | PrimeFactorization, K: int) -> CoeffSeries:
    if kind is CoefficientKind.FORWARD:
        return cyclotomic_trunc(n, K)
    return inverse_cyclotomic_trunc(n, K)
