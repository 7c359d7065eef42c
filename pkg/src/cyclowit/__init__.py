"""Exact cyclotomic coefficients and constructive witnesses for them in
arithmetic progressions."""

from .arith import (
    PrimeFactorization,
    PrimeWindow,
    SearchBudgetExceeded,
    euler_phi,
    factorize,
    find_prime_window,
    is_prime,
    mobius,
    next_prime_in_ap,
    radical,
)
from .cyclotomic import (
    CoefficientKind,
    DegreeBudgetExceeded,
    a_coeff,
    c_coeff,
    cyclotomic_exact,
    cyclotomic_trunc,
    divisors_below,
    inverse_cyclotomic_trunc,
)
from .series import CoeffSeries, inverse_trunc, mul_binomial, mul_trunc, poly_divide_exact
from .witness import (
    ProgressionSpec,
    WitnessCertificate,
    build_witness,
    certify,
    eq3_predict,
    verify_certificate,
)

__version__ = "0.1.0"
