"""
Series Engine - Truncated power series in inverse powers of s

Arithmetic on truncated expansions sum_k coeffs[k] * s^(-offset-k) and the
combinatorial coefficient generators the asymptotic expansions are built from.
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from .conf import engine_setting
from .exceptions import DomainError, NormalizationError

logger = logging.getLogger(__name__)


def use_compensated(K: int) -> bool:
    """True when recursions of order K sum with compensation."""
    return K > engine_setting('COMPENSATED_ORDER')


def accumulate(terms: Iterable[float], compensated: bool = False) -> float:
    """
    Sum a stream of floats.

    Args:
        terms: Values to add
        compensated: Use exactly rounded summation (math.fsum)

    Returns:
        The sum
    """
    if compensated:
        return math.fsum(terms)
    return sum(terms, 0.0)


@dataclass(frozen=True)
class CoefficientSeries:
    """
    Truncated expansion sum_k coeffs[k] * s^(-offset-k).

    A series that tends to 1 at infinity has offset 0 and coeffs[0] == 1.
    """

    coeffs: Tuple[float, ...]
    offset: int = 0

    def __post_init__(self):
        values = tuple(float(c) for c in self.coeffs)
        if not values:
            raise DomainError("a coefficient series needs at least one coefficient")
        if not all(math.isfinite(c) for c in values):
            raise DomainError("coefficients must be finite")
        if int(self.offset) != self.offset or self.offset < 0:
            raise DomainError("offset must be a nonnegative integer")
        object.__setattr__(self, 'coeffs', values)
        object.__setattr__(self, 'offset', int(self.offset))

    @classmethod
    def identity(cls, K: int = 0) -> 'CoefficientSeries':
        return cls((1.0,) + (0.0,) * K)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> float:
        """Coefficient k, zero beyond the stored truncation."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0.0

    def truncate(self, K: int) -> 'CoefficientSeries':
        """Same series with exactly K+1 coefficients (zero padded)."""
        return CoefficientSeries(tuple(self.coefficient(k) for k in range(K + 1)), self.offset)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def evaluate(self, s: complex) -> complex:
        """Value of the truncated expansion at s (Horner in 1/s)."""
        inverse = 1.0 / s
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * inverse + c
        return total * inverse ** self.offset


def cauchy_product(a: CoefficientSeries, b: CoefficientSeries, K: int) -> CoefficientSeries:
    """
    Product of two series truncated to K+1 coefficients.

    Args:
        a: First factor
        b: Second factor
        K: Truncation order

    Returns:
        The product; offsets add
    """
    if K < 0:
        raise DomainError("K must be nonnegative")
    compensated = use_compensated(K)
    coeffs = [
        accumulate((a.coefficient(j) * b.coefficient(k - j) for j in range(k + 1)), compensated)
        for k in range(K + 1)
    ]
    return CoefficientSeries(tuple(coeffs), a.offset + b.offset)


def four_series_product(
    a: CoefficientSeries,
    b: CoefficientSeries,
    c: CoefficientSeries,
    d: CoefficientSeries,
    K: int,
) -> CoefficientSeries:
    """
    Product of four series of the form 1 + O(1/s).

    Coefficient k is the quadruple sum over j1 + j2 + j3 + j4 = k; the sum
    is evaluated with the two inner pair products factored out.
    """
    if K < 0:
        raise DomainError("K must be nonnegative")
    for factor in (a, b, c, d):
        if factor.offset != 0 or factor.coefficient(0) != 1.0:
            raise DomainError("four_series_product expects factors with offset 0 and leading coefficient 1")

    compensated = use_compensated(K)
    left = cauchy_product(a, b, K)
    right = cauchy_product(c, d, K)
    coeffs = [
        accumulate((left.coeffs[j] * right.coeffs[k - j] for j in range(k + 1)), compensated)
        for k in range(K + 1)
    ]
    return CoefficientSeries(tuple(coeffs))


def _miller_recursion(d: CoefficientSeries, n: float, K: int) -> List[float]:
    lead = d.coefficient(0)
    if lead == 0.0:
        raise NormalizationError("leading coefficient is zero; normalize with shifted case first")

    ratios = [d.coefficient(ell) / lead for ell in range(K + 1)]
    compensated = use_compensated(K)
    f: List[float] = [1.0]
    for k in range(1, K + 1):
        f.append(accumulate(
            (((n + 1) * ell / k - 1.0) * ratios[ell] * f[k - ell] for ell in range(1, k + 1)),
            compensated,
        ))
    return f


def miller_power(d: CoefficientSeries, n: int, K: int) -> CoefficientSeries:
    """
    n-th power of a series relative to its leading coefficient.

    Returns f with (sum_l d_l s^-l)^n = d_0^n s^(-n*offset) sum_k f_k s^-k,
    computed by the recursion f_k = sum_l ((n+1)l/k - 1) (d_l/d_0) f_(k-l).

    Args:
        d: Series to raise; d.coeffs[0] must be nonzero
        n: Nonnegative exponent (n = 0 gives the identity series)
        K: Truncation order

    Returns:
        The coefficients f_0..f_K (f_0 = 1)
    """
    if K < 0:
        raise DomainError("K must be nonnegative")
    if n < 0:
        raise DomainError("miller_power needs a nonnegative exponent")
    if n == 0:
        return CoefficientSeries.identity(K)
    return CoefficientSeries(tuple(_miller_recursion(d, n, K)), n * d.offset)


def series_power(d: CoefficientSeries, exponent: float, K: int) -> CoefficientSeries:
    """
    Real power of a series of offset 0, relative to its leading coefficient.

    Same recursion as miller_power; exponent = -1 gives the reciprocal.
    """
    if K < 0:
        raise DomainError("K must be nonnegative")
    if d.offset != 0:
        raise DomainError("series_power needs a series of offset 0")
    return CoefficientSeries(tuple(_miller_recursion(d, float(exponent), K)))


def _classical_binomial(n: int, k: int) -> float:
    try:
        return float(math.comb(n, k))
    except OverflowError:
        logger.warning(f"binomial({n}, {k}) overflows double precision")
        return math.inf


def gen_binomial(n: int, k: int) -> float:
    """
    Binomial coefficient for integers of either sign.

    Uses the four-case extension to negative arguments:
    0 <= k <= n is classical, n < 0 <= k gives (-1)^k C(-n+k-1, k),
    k <= n < 0 gives (-1)^(n-k) C(-k-1, n-k), anything else is 0.
    """
    if int(n) != n or int(k) != k:
        raise DomainError("gen_binomial takes integer arguments")
    n, k = int(n), int(k)
    if 0 <= k <= n:
        return _classical_binomial(n, k)
    if n < 0 <= k:
        return (-1) ** k * _classical_binomial(-n + k - 1, k)
    if k <= n < 0:
        return (-1) ** (n - k) * _classical_binomial(-k - 1, n - k)
    return 0.0


def stirling_b_coeffs(n: int) -> List[float]:
    """b_0..b_n of the recursion behind the Stirling coefficients."""
    if n < 1:
        raise DomainError("need at least b_0 and b_1")
    compensated = use_compensated(n // 2)
    b = [1.0, 1.0]
    for k in range(2, n + 1):
        inner = accumulate((j * b[j] * b[k - j + 1] for j in range(2, k)), compensated)
        b.append((b[k - 1] - inner) / (k + 1))
    return b


def stirling_gamma_coeffs(K: int) -> List[float]:
    """
    Coefficients gamma_1..gamma_K of the scaled gamma function
    Gamma*(z) ~ 1 + sum_k gamma_k z^-k.
    """
    if K < 1:
        raise DomainError("K must be at least 1")
    b = stirling_b_coeffs(2 * K + 1)
    return [math.prod(range(1, 2 * k + 2, 2)) * b[2 * k + 1] for k in range(1, K + 1)]
