"""Exact integer power series, truncated or exact.

Coefficients are Python ints, so nothing ever rounds or saturates.  The
binomial updates work on whole slices at a time, which keeps the O(K)
passes out of the interpreter loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from operator import add, sub
from typing import Optional, Sequence

EXACT = None


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class CoeffSeries:
    """Coefficient vector, index i holding the coefficient of x**i.

    `order` is the truncation bound K (known modulo x**K) or EXACT (None)
    for a polynomial known in full.  Trailing zeros are never stored.
    """

    coeffs: tuple[int, ...]
    order: Optional[int] = EXACT

    def __post_init__(self):
        if self.order is not None and self.order < 0:
            raise ValueError("negative truncation order")
        c = list(self.coeffs)
        if self.order is not None:
            c = c[: self.order]
        object.__setattr__(self, "coeffs", tuple(_trim(c)))

    @classmethod
    def make(cls, coeffs: Sequence[int], order: Optional[int] = EXACT) -> "CoeffSeries":
        return cls(tuple(coeffs), order)

    @classmethod
    def one(cls, order: Optional[int] = EXACT) -> "CoeffSeries":
        return cls((1,), order)

    @classmethod
    def monomial_sum(cls, terms: dict[int, int], order: Optional[int] = EXACT) -> "CoeffSeries":
        size = max(terms, default=-1) + 1
        if order is not None:
            size = min(size, order)
        c = [0] * size
        for e, v in terms.items():
            if e < size:
                c[e] += v
        return cls(tuple(c), order)

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def degree(self) -> int:
        """Degree of an exact polynomial; -1 for zero."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if self.order is not None and i >= self.order:
            raise IndexError(f"x^{i} is not known modulo x^{self.order}")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def dense(self, size: Optional[int] = None) -> list[int]:
        """Coefficient list padded with zeros to `size` (default: the order)."""
        if size is None:
            size = self.order if self.order is not None else len(self.coeffs)
        c = list(self.coeffs[:size])
        return c + [0] * (size - len(c))

    def truncate(self, K: int) -> "CoeffSeries":
        order = K if self.order is None else min(K, self.order)
        return CoeffSeries(self.coeffs, order)

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def __neg__(self) -> "CoeffSeries":
        return CoeffSeries(tuple(-c for c in self.coeffs), self.order)

    def height(self) -> int:
        return max(map(abs, self.coeffs), default=0)

    def substitute_power(self, e: int) -> "CoeffSeries":
        """S(x**e); a truncated input keeps exactly what it knows."""
        if e < 1:
            raise ValueError("exponent must be positive")
        c = [0] * (e * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        c[::e] = self.coeffs
        order = None if self.order is None else e * self.order
        return CoeffSeries(tuple(c), order)

    def __str__(self) -> str:
        terms = " ".join(f"{i}:{c}" for i, c in enumerate(self.coeffs))
        return terms if self.order is None else f"{terms} (mod x^{self.order})"


def _min_order(*orders: Optional[int]) -> Optional[int]:
    known = [o for o in orders if o is not None]
    return min(known) if known else None


def _times_binomial(c: list[int], d: int, size: int) -> list[int]:
    # c * (1 - x^d), result of length size
    if size <= d:
        return c[:size] + [0] * (size - len(c))
    c = c + [0] * (size - len(c))
    return c[:d] + list(map(sub, c[d:size], c[: size - d]))


def _over_binomial(c: list[int], d: int) -> list[int]:
    # c / (1 - x^d) in place: c[i] += c[i-d], ascending
    size = len(c)
    if d * d <= size:
        for r in range(d):
            c[r::d] = accumulate(c[r::d])
    else:
        for j in range(d, size, d):
            c[j : j + d] = map(add, c[j : j + d], c[j - d : j])
    return c


def mul_binomial(S: CoeffSeries, d: int, sign: int) -> CoeffSeries:
    """Multiply by (1 - x**d) for sign +1, divide by it for sign -1."""
    if d <= 0:
        raise ValueError(f"binomial degree must be positive, got {d}")
    if sign == 1:
        size = len(S.coeffs) + d if S.order is None else min(S.order, len(S.coeffs) + d)
        return CoeffSeries(tuple(_times_binomial(list(S.coeffs), d, size)), S.order)
    if sign == -1:
        if S.order is None:
            raise ValueError("division by (1 - x^d) needs a truncated series")
        return CoeffSeries(tuple(_over_binomial(S.dense(), d)), S.order)
    raise ValueError(f"sign must be +1 or -1, got {sign}")


def binomial_product(
    factors: Sequence[tuple[int, int]], K: int, sign: int = 1
) -> CoeffSeries:
    """sign * prod (1 - x**d)**e mod x**K for (d, e) pairs with e in {-1, 0, 1}.

    Multiplications run before divisions so the working vector stays short
    until the geometric expansions need the full length.
    """
    up = [d for d, e in factors if e == 1 and d < K]
    down = [d for d, e in factors if e == -1 and d < K]
    c = [sign] if K > 0 else []
    for d in sorted(up):
        c = _times_binomial(c, d, min(K, len(c) + d))
    if down:
        c = c + [0] * (K - len(c))
        for d in down:
            _over_binomial(c, d)
    return CoeffSeries(tuple(c), K)


def mul_trunc(A: CoeffSeries, B: CoeffSeries, K: int) -> CoeffSeries:
    """(A * B) mod x**K; cost scales with the sparser operand's nonzeros."""
    order = _min_order(K, A.order, B.order)
    if len(A.nonzero()) > len(B.nonzero()):
        A, B = B, A
    b = list(B.coeffs)
    out = [0] * min(order, len(A.coeffs) + len(b))
    for i, a in A.nonzero():
        if i >= order:
            break
        hi = min(order, i + len(b))
        if hi <= i:
            continue
        seg = b[: hi - i] if a == 1 else [a * x for x in b[: hi - i]]
        out[i:hi] = map(add, out[i:hi], seg)
    return CoeffSeries(tuple(out), order)


def inverse_trunc(A: CoeffSeries, K: int) -> CoeffSeries:
    """B with A*B = 1 mod x**K, by the forward recurrence from the constant term."""
    order = _min_order(K, A.order)
    u = A[0] if A.coeffs else 0
    if u not in (1, -1):
        raise ValueError(f"constant term {u} is not a unit over the integers")
    tail = [(i, c) for i, c in A.nonzero() if 0 < i < order]
    b = [0] * order
    if order:
        b[0] = u
    for n in range(1, order):
        acc = 0
        for i, c in tail:
            if i > n:
                break
            acc += c * b[n - i]
        b[n] = -u * acc
    return CoeffSeries(tuple(b), order)


def poly_divide_exact(A: CoeffSeries, B: CoeffSeries) -> CoeffSeries:
    """Exact quotient A / B of integer polynomials; any remainder is an error."""
    if not (A.is_exact and B.is_exact):
        raise ValueError("exact division needs exact polynomials")
    if not B.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = B.coeffs[-1]
    db = B.degree
    rem = list(A.coeffs)
    if len(rem) < len(B.coeffs):
        if rem:
            raise ArithmeticError("nonzero remainder in exact division")
        return CoeffSeries((), None)
    low = [(i, c) for i, c in B.nonzero() if i < db]
    q = [0] * (len(rem) - db)
    for j in range(len(q) - 1, -1, -1):
        top = rem[j + db]
        if top == 0:
            continue
        qj, r = divmod(top, lead)
        if r:
            raise ArithmeticError("non-integral quotient in exact division")
        q[j] = qj
        rem[j + db] = 0
        for i, c in low:
            rem[j + i] -= qj * c
    if any(rem):
        raise ArithmeticError("nonzero remainder in exact division")
    return CoeffSeries(tuple(q), None)
