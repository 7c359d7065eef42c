"""Witness construction: an explicit (n, k) in a progression with a(n, k) = z.

The pipeline, for a target z and progression n = m(sj + t):

1. split off g = gcd(s, t) so the working progression s'j + r is coprime;
2. normalize the multiplier m*g to a squarefree m' > 1 with mu(m') = 1 by
   taking its kernel and appending fresh odd primes = 1 (mod s');
3. pick T = 1 - z (z <= 0) or T = z + 1 (z > 0) and find T primes
   p_j = 1 (mod m' s') in a window (b, 15b/8) with b >= 8 q4;
4. close up with one or two primes q1 = r, q2 = 1 (mod s') above 2 p_1 so
   that m1 = p_1...p_T q1 [q2] has the Moebius sign wanted for the kind.

Modulo x**(2 p_1) the series of Phi_{m' m1} (or 1/Phi_{m' m1}) then equals
(1/Phi_{m'}) (1 - sum_j x**p_j), and the coefficient at k = p_T + 1 is
1 - T while the one at k = p_T + q4 is T - 1.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Optional

from .arith import (
    DEFAULT_RETRIES,
    DEFAULT_SCAN_CAP,
    PrimeFactorization,
    PrimeWindow,
    factorize,
    find_prime_window,
    is_prime,
    mobius,
    next_prime_in_ap,
    radical,
)
from .cyclotomic import (
    CoefficientKind,
    coefficient_series,
    coeff,
    inverse_cyclotomic_trunc,
)
from .series import CoeffSeries, mul_trunc


class Branch(enum.Enum):
    LOW = "low"  # z = 1 - T
    HIGH = "high"  # z = T - 1


@dataclass(frozen=True)
class ProgressionSpec:
    s: int
    t: int
    m: int = 1

    def __post_init__(self):
        if not (self.s > self.t >= 0):
            raise ValueError(f"need s > t >= 0, got s={self.s}, t={self.t}")
        if self.m < 1:
            raise ValueError(f"multiplier must be positive, got {self.m}")

    def term(self, j: int) -> int:
        return self.m * (self.s * j + self.t)


def reduce_progression(s: int, t: int) -> tuple[int, int, int]:
    """(g, s/g, t/g) with g = gcd(s, t), so that sj + t = g(s'j + r)."""
    if not (s > t >= 0):
        raise ValueError(f"need s > t >= 0, got s={s}, t={t}")
    g = math.gcd(s, t)
    return g, s // g, t // g


def prepare_multiplier(m: int, s_red: int, scan_cap: int = DEFAULT_SCAN_CAP) -> int:
    """Squarefree m' > 1 with mu(m') = 1: kernel of m times the fewest fresh
    odd primes = 1 (mod s_red) needed to make the prime count even and >= 2."""
    kernel = radical(m)
    omega = len(factorize(kernel).factors)
    need = 2 if omega == 0 else omega % 2
    q = 2
    while need:
        q = next_prime_in_ap(q, s_red, 1, avoid=kernel, scan_cap=scan_cap)
        kernel *= q
        need -= 1
    return kernel


def target_to_count(z: int) -> tuple[int, Branch]:
    if z <= 0:
        return 1 - z, Branch.LOW
    return z + 1, Branch.HIGH


def core_index(branch: Branch, p_last: int, q3: int, q4: int) -> int:
    # 1/Phi_m' = 1 + x + ... + x^(q3-1) - x^q4 - x^(q4+1) mod x^(q4+2); with
    # q3 = 2 the x^2 term vanishes, so the low value sits one step earlier
    if branch is Branch.HIGH:
        return p_last + q4
    return p_last + 1 if q3 > 2 else p_last


def _q2_needed(kind: CoefficientKind, T: int) -> bool:
    # forward wants mu(m1) = -1, inverse wants +1
    odd = T % 2 == 1
    return odd if kind is CoefficientKind.FORWARD else not odd


@dataclass(frozen=True)
class WitnessCertificate:
    kind: CoefficientKind
    target: int
    original: ProgressionSpec
    m_reduced: int
    prime_count: int
    window: PrimeWindow
    q1: int
    q2: Optional[int]
    q3: int
    q4: int
    m1: int
    n: int
    k: int
    computed: Optional[int] = None
    verified: bool = False

    @property
    def primes(self) -> tuple[int, ...]:
        return self.window.primes

    @property
    def scale(self) -> int:
        """Power part of the composed multiplier; 1 when it is squarefree."""
        g, _, _ = reduce_progression(self.original.s, self.original.t)
        composed = self.original.m * g
        return composed // radical(composed)

    @property
    def core_n(self) -> int:
        return self.m_reduced * self.m1

    @property
    def core_k(self) -> int:
        return self.k // self.scale

    @property
    def order(self) -> int:
        """Truncation order 2 p_1 inside which the construction is exact."""
        return 2 * self.primes[0]

    def to_dict(self) -> dict[str, Any]:
        def enc(v):
            return None if v is None else str(v)

        return {
            "kind": self.kind.value,
            "target": enc(self.target),
            "s": enc(self.original.s),
            "t": enc(self.original.t),
            "m": enc(self.original.m),
            "m_reduced": enc(self.m_reduced),
            "T": enc(self.prime_count),
            "window_base": enc(self.window.base),
            "primes": [enc(p) for p in self.primes],
            "q1": enc(self.q1),
            "q2": enc(self.q2),
            "q3": enc(self.q3),
            "q4": enc(self.q4),
            "m1": enc(self.m1),
            "n": enc(self.n),
            "k": enc(self.k),
            "computed": enc(self.computed),
            "verified": self.verified,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "WitnessCertificate":
        def dec(v):
            return None if v is None else int(v)

        spec = ProgressionSpec(int(d["s"]), int(d["t"]), int(d["m"]))
        _, s_red, _ = reduce_progression(spec.s, spec.t)
        m_reduced = int(d["m_reduced"])
        primes = tuple(int(p) for p in d["primes"])
        window = PrimeWindow(len(primes), m_reduced * s_red, 1, int(d["window_base"]), primes)
        return cls(
            kind=CoefficientKind.parse(d["kind"]),
            target=int(d["target"]),
            original=spec,
            m_reduced=m_reduced,
            prime_count=int(d["T"]),
            window=window,
            q1=int(d["q1"]),
            q2=dec(d["q2"]),
            q3=int(d["q3"]),
            q4=int(d["q4"]),
            m1=int(d["m1"]),
            n=int(d["n"]),
            k=int(d["k"]),
            computed=dec(d.get("computed")),
            verified=bool(d.get("verified", False)),
        )

    @classmethod
    def from_json(cls, text: str) -> "WitnessCertificate":
        return cls.from_dict(json.loads(text))


def build_witness(
    spec: ProgressionSpec,
    z: int,
    kind: CoefficientKind = CoefficientKind.FORWARD,
    retries: int = DEFAULT_RETRIES,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> WitnessCertificate:
    """Run the construction and return an unverified certificate."""
    kind = CoefficientKind.parse(kind)
    g, s_red, r = reduce_progression(spec.s, spec.t)
    composed = spec.m * g
    scale = composed // radical(composed)
    m_red = prepare_multiplier(composed, s_red, scan_cap=scan_cap)
    T, branch = target_to_count(z)
    q3, q4 = factorize(m_red).primes[:2]

    floor = max(8 * q4, q4 + 2, 16)
    window = find_prime_window(T, m_red * s_red, floor, retries=retries, scan_cap=scan_cap)
    p = window.primes
    q1 = next_prime_in_ap(2 * p[0], s_red, r, avoid=m_red, scan_cap=scan_cap)
    q2 = None
    if _q2_needed(kind, T):
        q2 = next_prime_in_ap(q1, s_red, 1, avoid=m_red, scan_cap=scan_cap)

    m1 = math.prod(p) * q1 * (q2 or 1)
    k_core = core_index(branch, p[-1], q3, q4)
    cert = WitnessCertificate(
        kind=kind,
        target=z,
        original=spec,
        m_reduced=m_red,
        prime_count=T,
        window=window,
        q1=q1,
        q2=q2,
        q3=q3,
        q4=q4,
        m1=m1,
        n=scale * m_red * m1,
        k=scale * k_core,
    )
    problem = structural_problem(cert)
    if problem:
        raise AssertionError(f"constructed certificate is malformed: {problem}")
    return cert


def structural_problem(cert: WitnessCertificate) -> Optional[str]:
    """First violated certificate invariant, or None."""
    spec = cert.original
    try:
        g, s_red, r = reduce_progression(spec.s, spec.t)
    except ValueError as exc:
        return str(exc)
    if spec.m < 1:
        return "multiplier must be positive"
    composed = spec.m * g
    kernel = radical(composed)
    scale = composed // kernel
    T, branch = target_to_count(cert.target)
    p = cert.primes
    w = cert.window

    if cert.prime_count != T or len(p) != T:
        return f"target {cert.target} needs {T} window primes, certificate has {len(p)}"
    if cert.m_reduced < 2:
        return "reduced multiplier must exceed 1"
    mfac = factorize(cert.m_reduced)
    if mobius(mfac) != 1:
        return "reduced multiplier must be squarefree with mu = 1"
    if cert.m_reduced % kernel or (cert.m_reduced // kernel) % s_red != 1 % s_red:
        return "reduced multiplier does not come from the progression's multiplier"
    if (cert.q3, cert.q4) != mfac.primes[:2]:
        return "q3, q4 are not the two smallest primes of the reduced multiplier"
    if w.modulus != cert.m_reduced * s_red or w.residue != 1 or not w.check():
        return "window primes fail the window invariants"
    if w.base < 8 * cert.q4:
        return "window base below 8 q4"
    if not (cert.q1 > 2 * p[0] and is_prime(cert.q1) and (cert.q1 - r) % s_red == 0):
        return "q1 is not a prime above 2 p1 in the working residue class"
    if cert.m_reduced % cert.q1 == 0:
        return "q1 divides the reduced multiplier"
    if (cert.q2 is not None) != _q2_needed(cert.kind, T):
        return "q2 presence contradicts the parity rule"
    if cert.q2 is not None:
        if not (cert.q2 > cert.q1 and is_prime(cert.q2) and (cert.q2 - 1) % s_red == 0):
            return "q2 is not a prime above q1 that is 1 mod s'"
        if cert.m_reduced % cert.q2 == 0:
            return "q2 divides the reduced multiplier"
    m1_primes = list(p) + [cert.q1] + ([cert.q2] if cert.q2 is not None else [])
    if cert.m1 != math.prod(m1_primes):
        return "m1 is not the product of its primes"
    m1fac = PrimeFactorization.from_primes(m1_primes)
    want = -1 if cert.kind is CoefficientKind.FORWARD else 1
    if mobius(m1fac) != want:
        return "Moebius sign of m1 is wrong for this kind"
    if math.gcd(cert.m_reduced, cert.m1) != 1:
        return "m1 shares a prime with the reduced multiplier"
    if (cert.m1 - r) % s_red or cert.m1 < s_red + r:
        return "m1 is not a term of the working progression"
    if cert.n != scale * cert.m_reduced * cert.m1:
        return "n does not match its construction"
    if (cert.n // spec.m - spec.t) % spec.s or cert.n % spec.m or cert.n < spec.m * (spec.s + spec.t):
        return "n is not in the progression"
    if cert.k % scale:
        return "k is not a multiple of the multiplier's power part"
    k_core = cert.k // scale
    if k_core != core_index(branch, p[-1], cert.q3, cert.q4):
        return "k does not match the branch of the target"
    if not (p[-1] <= k_core < 2 * p[0]):
        return "k lies outside [p_T, 2 p_1)"
    return None


def witness_factorization(cert: WitnessCertificate) -> PrimeFactorization:
    """Factorization of cert.n assembled from its parts, never by factoring n."""
    parts = list(cert.primes) + [cert.q1]
    if cert.q2 is not None:
        parts.append(cert.q2)
    return factorize(cert.m_reduced) * factorize(cert.scale) * PrimeFactorization.from_primes(parts)


def core_factorization(cert: WitnessCertificate) -> PrimeFactorization:
    parts = list(cert.primes) + [cert.q1] + ([cert.q2] if cert.q2 is not None else [])
    return factorize(cert.m_reduced) * PrimeFactorization.from_primes(parts)


def congruence_rhs(m: int | PrimeFactorization, primes: tuple[int, ...], K: int) -> CoeffSeries:
    """(1/Phi_m) (1 - mu(m) sum_j x**p_j) mod x**K."""
    mu = mobius(m)
    bump = CoeffSeries.monomial_sum({0: 1, **{p: -mu for p in primes}}, K)
    return mul_trunc(inverse_cyclotomic_trunc(m, K), bump, K)


def congruence_holds(cert: WitnessCertificate) -> bool:
    K = cert.order
    lhs = coefficient_series(cert.kind, core_factorization(cert), K)
    return lhs == congruence_rhs(cert.m_reduced, cert.primes, K)


def verify_certificate(cert: WitnessCertificate) -> tuple[bool, Optional[int]]:
    """Re-check every invariant, then recompute the coefficient independently.

    Returns (ok, computed); computed is None when the structure is already
    broken.
    """
    try:
        if structural_problem(cert):
            return False, None
        computed = coeff(cert.kind, witness_factorization(cert), cert.k)
        return computed == cert.target and congruence_holds(cert), computed
    except (ValueError, ArithmeticError, IndexError):
        return False, None


def certify(
    spec: ProgressionSpec,
    z: int,
    kind: CoefficientKind = CoefficientKind.FORWARD,
    retries: int = DEFAULT_RETRIES,
    scan_cap: int = DEFAULT_SCAN_CAP,
) -> WitnessCertificate:
    """build_witness followed by verify_certificate."""
    cert = build_witness(spec, z, kind, retries=retries, scan_cap=scan_cap)
    ok, computed = verify_certificate(cert)
    return replace(cert, computed=computed, verified=ok)


@lru_cache(maxsize=256)
def _inverse_period(m: int) -> CoeffSeries:
    return inverse_cyclotomic_trunc(m, m)


def eq3_predict(m: int, T: int, k: int, p_list) -> int:
    """c(m, k) - mu(m) T c(m, k - 1): the coefficient of Phi_{m m1} at x**k
    for p_T <= k < 2 p_1."""
    mu = mobius(m)
    p_list = tuple(p_list)
    if mu == 0:
        raise ValueError(f"{m} is not squarefree")
    if not p_list or any((p - 1) % m for p in p_list):
        raise ValueError("window primes must all be 1 mod m")
    if not (p_list[-1] <= k < 2 * p_list[0]):
        raise ValueError(f"k = {k} outside [{p_list[-1]}, {2 * p_list[0]})")
    period = _inverse_period(m)
    return period[k % m] - mu * T * period[(k - 1) % m]
