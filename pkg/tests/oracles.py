"""Independent oracles: trial division, sympy, naive recurrences."""

import sympy


def trial_factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return sorted(out.items())


def trial_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def sympy_cyclotomic(n):
    """Coefficients of Phi_n, low degree first, straight from sympy."""
    x = sympy.Symbol("x")
    return [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]]


def naive_inverse(coeffs, K):
    """Taylor coefficients of 1/P by schoolbook long division (P[0] = +-1)."""
    b = []
    for i in range(K):
        acc = (1 if i == 0 else 0) - sum(coeffs[j] * b[i - j] for j in range(1, min(i, len(coeffs) - 1) + 1))
        b.append(acc * coeffs[0])
    return b
