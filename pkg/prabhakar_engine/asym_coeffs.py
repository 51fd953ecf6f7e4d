"""
Asymptotic Coefficients - the c_k of the inverse factorial expansion

From (alpha, beta, gamma) to the coefficients c_k in

    Gamma(gamma+s) Gamma(alpha*s+psi) / (Gamma(s+1) Gamma(alpha*s+beta))
        ~ alpha^(1-gamma) (1 + sum_j c_j / (alpha*s+psi)_j),   psi = 1-gamma+beta,

which drive the exponential part F(z) of the large-argument expansions.
The left side is split as R(s) * Upsilon(s) * (scaled power prefactor): R
collects the e(as;b) corrections of the power terms and Upsilon the scaled
gamma functions Gamma*.
"""
import logging
import math
from dataclasses import dataclass
from itertools import chain
from typing import List, Optional, Tuple

from django.core.cache import cache

from .conf import engine_setting
from .exceptions import DomainError, PolynomialCaseError, UnsupportedError
from .params import PrabhakarParams
from .series_engine import (
    CoefficientSeries,
    accumulate,
    four_series_product,
    gen_binomial,
    miller_power,
    stirling_gamma_coeffs,
    use_compensated,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AsymptoticTable:
    """
    Coefficients of the inverse factorial expansion for one parameter triple.

    D is stored row-wise: D[j][k] for 0 <= j, k <= K, zero when k < j.
    """

    params: PrabhakarParams
    psi: float
    K: int
    c: Tuple[float, ...]
    R: Tuple[float, ...]
    Upsilon: Tuple[float, ...]
    D: Tuple[Tuple[float, ...], ...]


def resolve_order(K: Optional[int]) -> int:
    """Default and validate a truncation order."""
    if K is None:
        return engine_setting('ASYMPTOTIC_ORDER')
    if K < 0:
        raise DomainError("K must be nonnegative")
    max_order = engine_setting('ASYMPTOTIC_MAX_ORDER')
    if K > max_order:
        raise UnsupportedError(f"K={K} exceeds the configured maximum order {max_order}")
    return int(K)


def rising_factorial_reciprocal_coeffs(alpha: float, psi: float, J: int, K: int) -> List[List[float]]:
    """
    Expansion coefficients of 1/(alpha*s+psi)_j in powers of 1/s.

    1/(alpha*s+psi)_j = sum_k D[j][k] s^-k with D[j][k] = F_(j,k-j) / alpha^k,
    where F_(j,0) = 1 and
    F_(j,k) = (1/k) sum_(l<k) [C(-j-l, k-l+1) + (-1)^(k-l) j (psi+j)^(k-l)] F_(j,l).

    Args:
        alpha: Positive scale of s
        psi: Shift
        J: Largest index j
        K: Largest power k

    Returns:
        Rows D[0]..D[J], each of length K+1
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if J > K:
        raise DomainError("J must not exceed K")

    compensated = use_compensated(K)
    table: List[List[float]] = []
    for j in range(J + 1):
        F = [1.0]
        for k in range(1, K - j + 1):
            F.append(accumulate(
                (
                    (gen_binomial(-j - ell, k - ell + 1) + (-1) ** (k - ell) * j * (psi + j) ** (k - ell)) * F[ell]
                    for ell in range(k)
                ),
                compensated,
            ) / k)
        row = [0.0] * (K + 1)
        for k in range(j, K + 1):
            row[k] = F[k - j] / alpha ** k
        table.append(row)
    return table


def log_shift_coeffs(a: float, b: float, count: int) -> List[float]:
    """d_1..d_count of log e(as;b); index 0 holds 0."""
    ratio = b / a
    return [0.0] + [
        (-1) ** k * ratio ** k * (1.0 / (2 * k) - b / (k * (k + 1)))
        for k in range(1, count + 1)
    ]


def exp_e_coeffs(a: float, b: float, sign: int, K: int) -> CoefficientSeries:
    """
    Coefficients of e(as;b)^(+1 or -1) = exp(sign * sum_k d_k s^-k).

    Three cases: b = 0 gives the identity, b = 1 has d_1 = 0 and powers are
    normalized on d_2, anything else normalizes on d_1.
    """
    if a == 0:
        raise DomainError("a must be nonzero")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if K < 0:
        raise DomainError("K must be nonnegative")

    degenerate = engine_setting('DEGENERATE_SHIFT_TOL')
    if abs(b) <= degenerate:
        return CoefficientSeries.identity(K)

    d = log_shift_coeffs(a, b, K + 2)
    compensated = use_compensated(K)
    if abs(b - 1.0) <= degenerate:
        # d_1 vanishes: (sum_k d_k s^-k)^j starts at s^-2j
        lead, step = d[2], 2
        base = CoefficientSeries(tuple(d[2:K + 3]))
    else:
        lead, step = d[1], 1
        base = CoefficientSeries(tuple(d[1:K + 2]))

    powers = [miller_power(base, j, K) for j in range(K // step + 1)]
    coeffs = []
    for k in range(K + 1):
        coeffs.append(accumulate(
            (
                (sign * lead) ** j * powers[j].coefficient(k - step * j) / math.factorial(j)
                for j in range(k // step + 1)
            ),
            compensated,
        ))
    return CoefficientSeries(tuple(coeffs))


def scaled_gamma_shift_coeffs(a: float, b: float, reciprocal: bool, K: int) -> CoefficientSeries:
    """
    Coefficients of Gamma*(as+b) (or 1/Gamma*(as+b)) in powers of 1/s.

    b = 0 reduces to the plain Stirling series in as.
    """
    if a == 0:
        raise DomainError("a must be nonzero")
    if K < 0:
        raise DomainError("K must be nonnegative")
    if K == 0:
        return CoefficientSeries.identity(0)

    gammas = stirling_gamma_coeffs(K)
    compensated = use_compensated(K)
    coeffs = [1.0]
    for j in range(1, K + 1):
        inner = accumulate(
            (
                (1 if reciprocal else (-1) ** k) * gen_binomial(j - 1, j - k) * gammas[k - 1] * b ** (j - k)
                for k in range(1, j + 1)
            ),
            compensated,
        )
        coeffs.append((-1) ** j * inner / a ** j)
    return CoefficientSeries(tuple(coeffs))


def r_coeffs(params: PrabhakarParams, K: int) -> CoefficientSeries:
    """R(s) = e(s;gamma) e(alpha*s;psi) / (e(s;1) e(alpha*s;beta))."""
    alpha, beta, gamma, psi = params.alpha, params.beta, params.gamma, params.psi
    return four_series_product(
        exp_e_coeffs(1.0, gamma, 1, K),
        exp_e_coeffs(alpha, psi, 1, K),
        exp_e_coeffs(1.0, 1.0, -1, K),
        exp_e_coeffs(alpha, beta, -1, K),
        K,
    )


def upsilon_coeffs(params: PrabhakarParams, K: int) -> CoefficientSeries:
    """Upsilon(s) = Gamma*(s+gamma) Gamma*(alpha*s+psi) / (Gamma*(s+1) Gamma*(alpha*s+beta))."""
    alpha, beta, gamma, psi = params.alpha, params.beta, params.gamma, params.psi
    return four_series_product(
        scaled_gamma_shift_coeffs(1.0, gamma, False, K),
        scaled_gamma_shift_coeffs(alpha, psi, False, K),
        scaled_gamma_shift_coeffs(1.0, 1.0, True, K),
        scaled_gamma_shift_coeffs(alpha, beta, True, K),
        K,
    )


def c_coeffs(params: PrabhakarParams, K: Optional[int] = None) -> AsymptoticTable:
    """
    Build the full coefficient table for one parameter triple.

    The c_k solve sum_j c_j D[j][k] = (R * Upsilon)_k order by order.

    Args:
        params: Prabhakar parameters; gamma must not be a nonpositive integer
        K: Truncation order (defaults to ASYMPTOTIC_ORDER)

    Returns:
        AsymptoticTable with c_0..c_K
    """
    K = resolve_order(K)
    if params.is_polynomial:
        raise PolynomialCaseError(
            f"gamma={params.gamma} is a nonpositive integer: polynomial case, expansion undefined via this route"
        )

    psi = params.psi
    D = rising_factorial_reciprocal_coeffs(params.alpha, psi, K, K)
    R = r_coeffs(params, K).coeffs
    Upsilon = upsilon_coeffs(params, K).coeffs
    compensated = use_compensated(K)

    c = [R[0] * Upsilon[0] / D[0][0]]
    for k in range(1, K + 1):
        rhs = accumulate(
            chain(
                (R[k - j] * Upsilon[j] for j in range(k + 1)),
                (-c[j] * D[j][k] for j in range(k)),
            ),
            compensated,
        )
        c.append(rhs / D[k][k])

    logger.debug(f"Built asymptotic table for {params} with K={K}")
    return AsymptoticTable(
        params=params,
        psi=psi,
        K=K,
        c=tuple(c),
        R=tuple(R),
        Upsilon=tuple(Upsilon),
        D=tuple(tuple(row) for row in D),
    )


def table_cache_key(params: PrabhakarParams, K: int) -> str:
    """Cache key built from the exact bit patterns of the parameters."""
    return f"prabhakar:asym:{params.alpha.hex()}:{params.beta.hex()}:{params.gamma.hex()}:{K}"


def asymptotic_table(params: PrabhakarParams, K: Optional[int] = None) -> AsymptoticTable:
    """
    Cached c_coeffs.

    Tables are immutable; two threads building the same table at once
    store equal values, so no lock is taken.
    """
    K = resolve_order(K)
    key = table_cache_key(params, K)
    table = cache.get(key)
    if table is not None:
        logger.debug(f"Asymptotic table cache hit: {key}")
        return table

    table = c_coeffs(params, K)
    cache.set(key, table, timeout=engine_setting('TABLE_CACHE_TIMEOUT'))
    return table
