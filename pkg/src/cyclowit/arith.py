"""Arithmetic functions on word-sized integers.

Factorization, Moebius, Euler phi, squarefree kernel, a deterministic
Miller-Rabin test, and prime searches in arithmetic progressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

SIEVE_LIMIT = 10**6

# ratio of the prime window (n, 15n/8), kept as an integer pair
WINDOW_RATIO = (15, 8)
WINDOW_GROWTH = (9, 8)
DEFAULT_RETRIES = 64
DEFAULT_SCAN_CAP = 10**7

# bases giving a deterministic strong-pseudoprime test below MR_BOUND
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_BOUND = 318665857834031151167461


class SearchBudgetExceeded(RuntimeError):
    """A prime search ran past its retry or candidate cap."""


@dataclass(frozen=True)
class PrimeFactorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            prod *= p**e
            last = p
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @classmethod
    def from_primes(cls, primes: Iterable[int]) -> "PrimeFactorization":
        """Build from a multiset of primes already known to be prime.

        Nothing is refactored; callers vouch for primality.
        """
        counts: dict[int, int] = {}
        for p in primes:
            counts[p] = counts.get(p, 0) + 1
        factors = tuple(sorted(counts.items()))
        return cls(math.prod(p**e for p, e in factors), factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __mul__(self, other: "PrimeFactorization") -> "PrimeFactorization":
        counts = dict(self.factors)
        for p, e in other.factors:
            counts[p] = counts.get(p, 0) + e
        return PrimeFactorization(self.value * other.value, tuple(sorted(counts.items())))


def as_factorization(n: int | PrimeFactorization) -> PrimeFactorization:
    if isinstance(n, PrimeFactorization):
        return n
    return factorize(n)


@lru_cache(maxsize=1)
def small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (SIEVE_LIMIT + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(SIEVE_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, SIEVE_LIMIT + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= MR_BOUND:
        raise ValueError(f"{n} is beyond the deterministic primality range")
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd, composite and free of small factors
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"pollard rho failed on {n}")


def _split(n: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> PrimeFactorization:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    value = n
    found: list[int] = []
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found.append(p)
            n //= p
    if n > 1:
        if n <= SIEVE_LIMIT**2:
            found.append(n)
        else:
            _split(n, found)
    fac = PrimeFactorization.from_primes(found)
    assert fac.value == value
    return fac


def mobius(f: int | PrimeFactorization) -> int:
    f = as_factorization(f)
    if not f.is_squarefree():
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(f: int | PrimeFactorization) -> int:
    f = as_factorization(f)
    return math.prod(p ** (e - 1) * (p - 1) for p, e in f.factors)


def radical(f: int | PrimeFactorization) -> int:
    """Squarefree kernel: product of the distinct primes dividing the value."""
    return math.prod(as_factorization(f).primes)


def next_prime_in_ap(
    lower: int,
    modulus: int,
    residue: int,
    avoid: int | PrimeFactorization = 1,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> int:
    """Smallest prime q > lower with q = residue (mod modulus) and q not dividing avoid."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    residue %= modulus
    if modulus > 1 and math.gcd(residue, modulus) != 1:
        raise ValueError(f"residue {residue} is not a unit mod {modulus}")
    avoid_value = avoid.value if isinstance(avoid, PrimeFactorization) else avoid
    q = lower + 1 + (residue - lower - 1) % modulus
    for _ in range(scan_cap):
        if avoid_value % q != 0 and is_prime(q):
            return q
        q += modulus
    raise SearchBudgetExceeded(
        f"no prime = {residue} mod {modulus} above {lower} within {scan_cap} candidates"
    )


@dataclass(frozen=True)
class PrimeWindow:
    count: int
    modulus: int
    residue: int
    base: int
    primes: tuple[int, ...]

    def check(self) -> bool:
        num, den = WINDOW_RATIO
        if len(self.primes) != self.count or self.count < 1:
            return False
        if any(b <= a for a, b in zip(self.primes, self.primes[1:])):
            return False
        return all(
            self.base < p
            and den * p < num * self.base
            and (p - self.residue) % self.modulus == 0
            and is_prime(p)
            for p in self.primes
        )


def _primes_in_window(base: int, count: int, modulus: int, scan_cap: int) -> tuple[list[int], int]:
    num, den = WINDOW_RATIO
    found = []
    p = base + 1 + (1 - base - 1) % modulus
    scanned = 0
    while den * p < num * base and len(found) < count:
        if is_prime(p):
            found.append(p)
        p += modulus
        scanned += 1
    return found, scanned


def find_prime_window(
    count: int,
    modulus: int,
    floor: int,
    retries: int = DEFAULT_RETRIES,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> PrimeWindow:
    """First base n >= floor, grown by 9/8 per retry, whose interval
    (n, 15n/8) holds `count` primes = 1 (mod modulus)."""
    if count < 1 or modulus < 1 or floor < 1:
        raise ValueError("count, modulus and floor must be positive")
    gnum, gden = WINDOW_GROWTH
    base = floor
    budget = scan_cap
    for _ in range(retries + 1):
        found, scanned = _primes_in_window(base, count, modulus, budget)
        budget -= scanned
        if len(found) == count:
            return PrimeWindow(count, modulus, 1, base, tuple(found))
        if budget <= 0:
            break
        base = max(base + 1, -(-base * gnum // gden))
    raise SearchBudgetExceeded(
        f"no window with {count} primes = 1 mod {modulus} from base {floor} "
        f"after {retries} retries"
    )
