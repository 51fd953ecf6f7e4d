"""
Prabhakar Function - evaluation of E^gamma_{alpha,beta}(z) in the whole complex plane

E^gamma_{alpha,beta}(z) = sum_k (gamma)_k z^k / (k! Gamma(alpha*k + beta))

Small arguments use the Taylor series above, large arguments the expansions
built from

    H(w) = w^-gamma sum_k (-1)^k (gamma)_k / (k! Gamma(beta - alpha(k+gamma))) w^-k
    F(z) = e^(z^(1/alpha)) z^((gamma-beta)/alpha) alpha^-gamma / Gamma(gamma) sum_k c_k z^(-k/alpha)

with the c_k from asym_coeffs.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import special

from .asym_coeffs import AsymptoticTable, asymptotic_table, resolve_order
from .conf import engine_setting
from .exceptions import DomainError, PolynomialCaseError
from .params import PrabhakarParams, Regime

logger = logging.getLogger(__name__)

__all__ = [
    'EvaluationResult', 'Method', 'PrabhakarParams', 'Regime',
    'c_term', 'deriv_z', 'deriv_z_dzhrbashyan', 'eval_asymptotic', 'eval_auto',
    'eval_auto_array', 'eval_negative_axis', 'eval_polynomial', 'eval_series',
    'eval_series_array', 'f_series', 'g_term', 'h_series', 'is_cm_region',
    'kernel', 'laplace_transform_rhs', 'negative_axis_term_count',
    'reduce_gamma', 'rgamma', 's_term', 'sector_term_count', 'series_threshold',
]


class Method(str, Enum):
    """How an EvaluationResult was produced."""

    SERIES = 'series'
    ALGEBRAIC_H = 'algebraic_H'
    EXPONENTIAL_F = 'exponential_F'
    MIXED = 'mixed'
    POLYNOMIAL = 'polynomial'


@dataclass(frozen=True)
class EvaluationResult:
    """
    Value of E^gamma_{alpha,beta}(z) with truncation diagnostics.

    last_term_magnitude is the magnitude of the final included term.
    discarded_imag is the imaginary part dropped on the negative axis for
    alpha > 2.
    """

    value: complex
    method: Method
    terms_used: int
    last_term_magnitude: float
    converged: bool = True
    below_threshold: bool = False
    discarded_imag: float = 0.0


# Reciprocal gamma and log-space coefficient helpers

def rgamma(x: float) -> float:
    """1/Gamma(x), exactly 0 at x = 0, -1, -2, ..."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("rgamma needs a finite argument")
    if x <= 0 and x.is_integer():
        return 0.0
    return float(special.rgamma(x))


def _log_rgamma(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """log|1/Gamma(x)| and its sign, (-inf, 0) at the poles."""
    x = np.asarray(x, dtype=float)
    poles = (x <= 0) & (x == np.floor(x))
    safe = np.where(poles, 0.5, x)
    log_abs = np.where(poles, -np.inf, -special.gammaln(safe))
    sign = np.where(poles, 0.0, special.gammasgn(safe))
    return log_abs, sign


def _log_pochhammer_ratio(a: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """log|(a)_k / k!| and its sign for k < count."""
    j = np.arange(count - 1, dtype=float)
    factors = (a + j) / (j + 1.0)
    with np.errstate(divide='ignore'):
        log_abs = np.concatenate(([0.0], np.cumsum(np.log(np.abs(factors)))))
    sign = np.concatenate(([1.0], np.cumprod(np.sign(factors))))
    return log_abs, sign


def _series_log_coefficients(params: PrabhakarParams, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """log|a_k| and sign(a_k) of the Taylor coefficients, k < count."""
    log_poch, sign_poch = _log_pochhammer_ratio(params.gamma, count)
    k = np.arange(count, dtype=float)
    log_rg, sign_rg = _log_rgamma(params.alpha * k + params.beta)
    sign = sign_poch * sign_rg
    log_abs = np.where(sign == 0, -np.inf, log_poch + log_rg)
    return log_abs, sign


def _peak_index(params: PrabhakarParams, log_abs_z: float) -> int:
    """Index near which the Taylor terms peak."""
    exponent = min(log_abs_z / params.alpha, 700.0)
    return int(math.ceil(math.exp(exponent) / params.alpha))


def _resolve_series_options(tol: Optional[float], max_terms: Optional[int]) -> Tuple[float, int]:
    tol = engine_setting('SERIES_TOL') if tol is None else tol
    max_terms = engine_setting('SERIES_MAX_TERMS') if max_terms is None else max_terms
    if not tol > 0:
        raise DomainError("tol must be positive")
    if max_terms < 1:
        raise DomainError("max_terms must be positive")
    return float(tol), int(max_terms)


def series_threshold(alpha: float) -> float:
    """
    Radius below which the Taylor series is used.

    max(floor, (scale*alpha)^alpha), capped so that the peak series term
    stays below exp(THRESHOLD_PEAK_LOG).
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    floor = engine_setting('THRESHOLD_FLOOR')
    scale = engine_setting('THRESHOLD_SCALE')
    peak_log = engine_setting('THRESHOLD_PEAK_LOG')
    log_radius = max(math.log(floor), alpha * math.log(scale * alpha))
    log_radius = min(log_radius, alpha * math.log(peak_log))
    if log_radius > 700.0:
        return math.inf
    return math.exp(log_radius)


# Taylor series

def _first_stop(magnitudes: np.ndarray, partial_abs: np.ndarray, tol: float, k_min: int) -> Optional[int]:
    """Index of the third consecutive small term at or after k_min."""
    small = magnitudes <= tol * partial_abs
    if small.size < 3:
        return None
    runs = small[:-2] & small[1:-1] & small[2:]
    candidates = np.flatnonzero(runs) + 2
    candidates = candidates[candidates >= k_min]
    return int(candidates[0]) if candidates.size else None


def _series_terms(params: PrabhakarParams, z: complex, count: int) -> np.ndarray:
    log_abs, sign = _series_log_coefficients(params, count)
    k = np.arange(count)
    with np.errstate(over='ignore', invalid='ignore'):
        magnitude = np.exp(log_abs + k * math.log(abs(z)))
    if z.imag == 0 and z.real > 0:
        return (sign * magnitude).astype(complex)
    if z.imag == 0:
        return (sign * magnitude * np.where(k % 2 == 1, -1.0, 1.0)).astype(complex)
    return sign * magnitude * np.exp(1j * k * cmath.phase(z))


def eval_series(
    params: PrabhakarParams,
    z: complex,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> EvaluationResult:
    """
    Partial sum of the Taylor series.

    Stops once three consecutive terms fall below tol times the partial sum
    (and the terms are past their peak). Hitting max_terms does not raise:
    the result comes back with converged=False.

    Args:
        params: Prabhakar parameters
        z: Argument
        tol: Relative stopping tolerance (SERIES_TOL by default)
        max_terms: Term cap (SERIES_MAX_TERMS by default)

    Returns:
        EvaluationResult with method SERIES
    """
    tol, max_terms = _resolve_series_options(tol, max_terms)
    z = complex(z)
    if z == 0:
        value = rgamma(params.beta)
        return EvaluationResult(complex(value), Method.SERIES, 1, abs(value))

    polynomial = params.is_polynomial
    if polynomial:
        max_terms = min(max_terms, params.polynomial_degree + 1)

    k_min = min(max_terms - 1, _peak_index(params, math.log(abs(z))))
    count = min(max_terms, max(64, 2 * k_min + 16))
    while True:
        terms = _series_terms(params, z, count)
        magnitudes = np.abs(terms)
        stop = _first_stop(magnitudes, np.abs(np.cumsum(terms)), tol, k_min)
        if stop is not None or count >= max_terms:
            break
        count = min(max_terms, 2 * count)

    converged = stop is not None or polynomial
    if stop is None:
        stop = count - 1
        if not polynomial:
            logger.warning(f"Taylor series for {params} at z={z} not converged after {count} terms")

    used = terms[:stop + 1]
    value = complex(math.fsum(used.real), math.fsum(used.imag))
    return EvaluationResult(value, Method.SERIES, stop + 1, float(magnitudes[stop]), converged)


def eval_series_array(
    params: PrabhakarParams,
    x: np.ndarray,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> np.ndarray:
    """
    Taylor series on a whole array of arguments.

    Real input gives real output. All points share one term count.
    """
    tol, max_terms = _resolve_series_options(tol, max_terms)
    x = np.asarray(x)
    real_input = not np.iscomplexobj(x)
    flat = x.ravel()
    dtype = float if real_input else complex
    if flat.size == 0:
        return np.zeros(x.shape, dtype=dtype)

    polynomial = params.is_polynomial
    if polynomial:
        max_terms = min(max_terms, params.polynomial_degree + 1)

    with np.errstate(divide='ignore'):
        log_abs = np.log(np.abs(flat))
    if real_input:
        negative = flat < 0
    else:
        angle = np.angle(flat)

    log_c, sign_c = _series_log_coefficients(params, max_terms)
    k_min = min(max_terms - 1, _peak_index(params, float(np.max(log_abs))))
    total = np.full(flat.shape, sign_c[0] * math.exp(log_c[0]) if sign_c[0] else 0.0, dtype=dtype)
    run = np.zeros(flat.shape, dtype=int)
    converged = polynomial
    for k in range(1, max_terms):
        if sign_c[k] == 0:
            term = np.zeros(flat.shape, dtype=dtype)
        else:
            with np.errstate(over='ignore'):
                magnitude = np.exp(log_c[k] + k * log_abs)
            if real_input:
                term = sign_c[k] * magnitude * np.where(negative & (k % 2 == 1), -1.0, 1.0)
            else:
                term = sign_c[k] * magnitude * np.exp(1j * k * angle)
        total = total + term
        run = np.where(np.abs(term) <= tol * np.abs(total), run + 1, 0)
        if k >= k_min and np.all(run >= 3):
            converged = True
            break

    if not converged:
        logger.warning(f"Vectorized Taylor series for {params} not converged after {max_terms} terms")
    return total.reshape(x.shape)


def _polynomial_terms(params: PrabhakarParams, z: complex) -> List[complex]:
    degree = params.polynomial_degree
    return [
        (-1) ** k * math.comb(degree, k) * z ** k * rgamma(params.alpha * k + params.beta)
        for k in range(degree + 1)
    ]


def eval_polynomial(params: PrabhakarParams, z: complex) -> complex:
    """E^(-j)_{alpha,beta}(z) = sum_(k<=j) (-1)^k C(j,k) z^k / Gamma(alpha*k + beta)."""
    if not params.is_polynomial:
        raise DomainError(f"gamma={params.gamma} is not a nonpositive integer")
    terms = _polynomial_terms(params, complex(z))
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


# Identities

def reduce_gamma(params: PrabhakarParams, z: complex, formula: str = 'reduction') -> complex:
    """
    E^(gamma+1)_{alpha,beta}(z) from order-gamma evaluations.

    formula='reduction':
        (E^gamma_{alpha,beta-1} + (1 - beta + alpha*gamma) E^gamma_{alpha,beta}) / (alpha*gamma)
    formula='corollary':
        (E^gamma_{alpha,beta-alpha-1} + (1 - beta + alpha) E^gamma_{alpha,beta-alpha}) / (alpha*gamma*z)
    """
    z = complex(z)
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    if gamma == 0:
        raise DomainError("gamma must be nonzero for the reduction formulas")

    if formula == 'reduction':
        lower = eval_auto(params.shifted(beta=beta - 1), z).value
        same = eval_auto(params, z).value
        return (lower + (1 - beta + alpha * gamma) * same) / (alpha * gamma)
    if formula == 'corollary':
        if z == 0:
            raise DomainError("z must be nonzero for the corollary reduction")
        lower = eval_auto(params.shifted(beta=beta - alpha - 1), z).value
        same = eval_auto(params.shifted(beta=beta - alpha), z).value
        return (lower + (1 - beta + alpha) * same) / (alpha * gamma * z)
    raise DomainError(f"Unknown reduction formula: {formula}")


def deriv_z(params: PrabhakarParams, z: complex, m: int = 1) -> complex:
    """m-th z-derivative: (gamma)_m E^(gamma+m)_{alpha, m*alpha+beta}(z)."""
    if m < 1:
        raise DomainError("m must be at least 1")
    pochhammer = math.prod(params.gamma + i for i in range(m))
    shifted = PrabhakarParams(params.alpha, m * params.alpha + params.beta, params.gamma + m)
    return pochhammer * eval_auto(shifted, z).value


def deriv_z_dzhrbashyan(params: PrabhakarParams, z: complex) -> complex:
    """First z-derivative as (E^gamma_{alpha,beta-1} + (1-beta) E^gamma_{alpha,beta}) / (alpha*z)."""
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero for the Dzhrbashyan form")
    lower = eval_auto(params.shifted(beta=params.beta - 1), z).value
    same = eval_auto(params, z).value
    return (lower + (1 - params.beta) * same) / (params.alpha * z)


# Large-argument building blocks

def _truncation_index(magnitudes: np.ndarray) -> int:
    """Optimal truncation point; isolated zero terms do not end the sum."""
    envelope = magnitudes.copy()
    envelope[:-1] = np.maximum(magnitudes[:-1], magnitudes[1:])
    return int(np.argmin(envelope))


def _h_sum(params: PrabhakarParams, log_abs: float, arg: float, K: Optional[int] = None) -> Tuple[complex, int, float]:
    """Optimally truncated H at w = exp(log_abs + i*arg)."""
    K = engine_setting('ASYMPTOTIC_MAX_ORDER') if K is None else resolve_order(K)
    k = np.arange(K + 1, dtype=float)
    log_poch, sign_poch = _log_pochhammer_ratio(params.gamma, K + 1)
    x = params.beta - params.alpha * (k + params.gamma)
    log_rg, sign_rg = _log_rgamma(x)
    # |1/Gamma(x)| <= Gamma(1-x)/pi for x <= 0, with equality up to the sine
    log_envelope = np.where(x > 0, log_rg, special.gammaln(np.where(x > 0, 1.0, 1.0 - x)) - math.log(math.pi))
    m = int(np.argmin(log_poch + log_envelope - k * log_abs))

    kept = slice(0, m + 1)
    sign = np.where(k[kept] % 2 == 1, -1.0, 1.0) * sign_poch[kept] * sign_rg[kept]
    log_mag = log_poch[kept] + log_rg[kept] - (params.gamma + k[kept]) * log_abs
    with np.errstate(invalid='ignore'):
        magnitude = np.where(sign == 0, 0.0, np.exp(log_mag))
    if arg == 0.0:
        terms = (sign * magnitude).astype(complex)
    else:
        terms = sign * magnitude * np.exp(-1j * (params.gamma + k[kept]) * arg)
    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return value, m + 1, float(abs(terms[-1]))


def h_series(params: PrabhakarParams, w: complex, K: Optional[int] = None) -> complex:
    """
    Algebraic part H(w) on the principal branch of w^-gamma.

    K caps the number of terms; the sum is cut at its smallest term.
    """
    w = complex(w)
    if w == 0:
        raise DomainError("H needs w != 0")
    return _h_sum(params, math.log(abs(w)), cmath.phase(w), K)[0]


def _f_sum(params: PrabhakarParams, table: AsymptoticTable, log_abs: float, arg: float) -> Tuple[complex, int, float]:
    """Optimally truncated F at z = exp(log_abs + i*arg), arg not reduced."""
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    L = complex(log_abs, arg)
    k = np.arange(table.K + 1, dtype=float)
    c = np.asarray(table.c)
    m = _truncation_index(np.abs(c) * np.exp(-k * log_abs / alpha))

    terms = c[:m + 1] * np.exp(-k[:m + 1] * L / alpha)
    series = complex(math.fsum(terms.real), math.fsum(terms.imag))
    log_prefactor = cmath.exp(L / alpha) + (gamma - beta) / alpha * L - gamma * math.log(alpha)
    try:
        prefactor = rgamma(gamma) * cmath.exp(log_prefactor)
    except OverflowError as exc:
        raise DomainError(f"E overflows double precision at |z|=exp({log_abs:.6g})") from exc
    return prefactor * series, m + 1, float(abs(prefactor * terms[-1]))


def f_series(params: PrabhakarParams, z: complex, K: Optional[int] = None, arg_offset: int = 0) -> complex:
    """
    Exponential part F(z) with z^(1/alpha) = exp((log|z| + i(Arg z + 2*pi*arg_offset)) / alpha).
    """
    z = complex(z)
    if z == 0:
        raise DomainError("F needs z != 0")
    if params.is_polynomial:
        raise PolynomialCaseError(f"gamma={params.gamma} is a nonpositive integer: F is not defined")
    table = asymptotic_table(params, K)
    arg = cmath.phase(z) + 2 * math.pi * arg_offset
    return _f_sum(params, table, math.log(abs(z)), arg)[0]


def sector_term_count(alpha: float) -> int:
    """P such that 2P+1 is the smallest odd integer larger than alpha/2."""
    odd = 1
    while odd <= alpha / 2:
        odd += 2
    return (odd - 1) // 2


def negative_axis_term_count(alpha: float) -> int:
    """Number of dominant C_r terms on the negative semi-axis."""
    if alpha < 2:
        return 0
    if alpha == 2:
        return 1
    return int(math.floor(0.5 * (alpha / 2 + 1)))


def _combine(parts: List[Tuple[complex, int, float]], weights: Optional[List[float]] = None) -> Tuple[complex, int, float]:
    weights = weights or [1.0] * len(parts)
    value = sum((w * p[0] for w, p in zip(weights, parts)), 0j)
    terms = sum(p[1] for p in parts)
    last = max(w * p[2] for w, p in zip(weights, parts))
    return value, terms, last


def _asymptotic_branch(
    params: PrabhakarParams,
    log_abs: float,
    theta: float,
    rotation: int,
    K: Optional[int],
) -> Tuple[Tuple[complex, int, float], Method]:
    """One rotation convention: rotation = -1 for the upper half-plane, +1 for the lower."""
    alpha = params.alpha
    regime = params.regime
    if regime is Regime.SUPER2:
        table = asymptotic_table(params, K)
        P = sector_term_count(alpha)
        parts = [_f_sum(params, table, log_abs, theta + 2 * math.pi * r) for r in range(-P, P + 1)]
        return _combine(parts), Method.EXPONENTIAL_F

    h = _h_sum(params, log_abs, theta + rotation * math.pi, K)
    if regime is Regime.EQ2:
        table = asymptotic_table(params, K)
        parts = [
            _f_sum(params, table, log_abs, theta),
            _f_sum(params, table, log_abs, theta + rotation * 2 * math.pi),
            h,
        ]
        return _combine(parts), Method.MIXED

    half_opening = alpha * math.pi / 2
    if math.isclose(abs(theta), half_opening, rel_tol=1e-12):
        # boundary ray: mean of the F+H and H-only forms
        f = _f_sum(params, asymptotic_table(params, K), log_abs, theta)
        return _combine([f, h], [0.5, 1.0]), Method.MIXED
    if abs(theta) < half_opening:
        f = _f_sum(params, asymptotic_table(params, K), log_abs, theta)
        return _combine([f, h]), Method.MIXED
    return h, Method.ALGEBRAIC_H


def eval_asymptotic(params: PrabhakarParams, z: complex, K: Optional[int] = None) -> EvaluationResult:
    """
    Large-argument expansion.

    alpha < 2: F(z) + H(z e^(-+pi i)) inside |arg z| < alpha*pi/2, H alone
    outside; alpha = 2: F(z) + F(z e^(-+2 pi i)) + H(z e^(-+pi i));
    alpha > 2: sum of F(z e^(2 pi i r)) for |r| <= P. The upper sign is
    used in the upper half-plane; on the positive real axis both are averaged.

    Args:
        params: Prabhakar parameters (gamma not a nonpositive integer)
        z: Nonzero argument
        K: Truncation order of the c_k table

    Returns:
        EvaluationResult; below_threshold marks |z| under series_threshold
    """
    z = complex(z)
    if z == 0:
        raise DomainError("the asymptotic expansion needs z != 0")
    if params.is_polynomial:
        raise PolynomialCaseError(f"gamma={params.gamma} is a nonpositive integer: use eval_polynomial")

    below = abs(z) < series_threshold(params.alpha)
    if below:
        logger.debug(f"Asymptotic evaluation below threshold: |z|={abs(z):.6g}, alpha={params.alpha}")

    log_abs = math.log(abs(z))
    theta = cmath.phase(z)
    if theta == 0.0 and params.regime is not Regime.SUPER2:
        upper, method = _asymptotic_branch(params, log_abs, theta, -1, K)
        lower, _ = _asymptotic_branch(params, log_abs, theta, 1, K)
        value, terms, last = _combine([upper, lower], [0.5, 0.5])
        terms = max(upper[1], lower[1])
    else:
        rotation = -1 if theta > 0 else 1
        (value, terms, last), method = _asymptotic_branch(params, log_abs, theta, rotation, K)
    return EvaluationResult(value, method, terms, last, below_threshold=below)


# Negative semi-axis

def _saddle_pair(params: PrabhakarParams, table: AsymptoticTable, t: float, r: int) -> Tuple[float, float, int, float]:
    """
    F(e^(pi r i) t) + F(e^(-pi r i) t) in cosine form and its sine companion.

    Returns (cosine sum, sine sum, terms used, last term magnitude).
    """
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    log_t = math.log(t)
    angle = r * math.pi / alpha
    rho = math.exp(log_t / alpha)
    k = np.arange(table.K + 1, dtype=float)
    c = np.asarray(table.c)
    weights = c * np.exp(-k * log_t / alpha)
    m = _truncation_index(np.abs(weights))

    phases = angle * (gamma - beta - k[:m + 1]) + rho * math.sin(angle)
    cos_sum = math.fsum(weights[:m + 1] * np.cos(phases))
    sin_sum = math.fsum(weights[:m + 1] * np.sin(phases))
    log_scale = rho * math.cos(angle) + (gamma - beta) / alpha * log_t - gamma * math.log(alpha)
    try:
        scale = 2 * rgamma(gamma) * math.exp(log_scale)
    except OverflowError as exc:
        raise DomainError(f"E overflows double precision at t={t:.6g}") from exc
    return scale * cos_sum, scale * sin_sum, m + 1, float(abs(scale * weights[m]))


def g_term(params: PrabhakarParams, t: float, r: int, K: Optional[int] = None) -> float:
    """G_r(t) = F(e^(pi r i) t) + F(e^(-pi r i) t)."""
    if not t > 0:
        raise DomainError("t must be positive")
    return _saddle_pair(params, asymptotic_table(params, K), t, r)[0]


def c_term(params: PrabhakarParams, t: float, r: int, K: Optional[int] = None) -> float:
    """C_r(t) = G_(2r+1)(t)."""
    return g_term(params, t, 2 * r + 1, K)


def s_term(params: PrabhakarParams, t: float, r: int, K: Optional[int] = None) -> float:
    """Sine companion S_r(t); F(e^((2r+1) pi i) t) = (C_r(t) + i S_r(t)) / 2."""
    if not t > 0:
        raise DomainError("t must be positive")
    return _saddle_pair(params, asymptotic_table(params, K), t, 2 * r + 1)[1]


def _negative_axis_weights(alpha: float, recessive: bool) -> Dict[int, float]:
    weights = {r: 1.0 for r in range(negative_axis_term_count(alpha))}
    if recessive:
        r = 0
        while 2 * r + 1 < alpha or math.isclose(2 * r + 1, alpha, rel_tol=1e-12):
            weights.setdefault(r, 0.5 if math.isclose(2 * r + 1, alpha, rel_tol=1e-12) else 1.0)
            r += 1
    return weights


def _negative_axis(
    params: PrabhakarParams,
    t: float,
    K: Optional[int] = None,
    recessive: Optional[bool] = None,
    series_fallback: bool = True,
) -> EvaluationResult:
    if not t > 0:
        raise DomainError("t must be positive")
    if params.is_polynomial:
        raise PolynomialCaseError(f"gamma={params.gamma} is a nonpositive integer: use eval_polynomial")
    if recessive is None:
        recessive = engine_setting('RECESSIVE_TERMS')

    alpha = params.alpha
    if series_fallback and alpha < 2 and t ** (1 / alpha) <= engine_setting('NEGATIVE_AXIS_SERIES_RHO'):
        result = eval_series(params, -t)
        if result.converged:
            return result
        logger.debug(f"Series did not converge for {params} at z={-t}, using the expansion")

    weights = _negative_axis_weights(alpha, recessive)
    table = asymptotic_table(params, K) if weights or alpha > 2 else None

    values: List[float] = []
    terms_used = 0
    last = 0.0
    for r, weight in sorted(weights.items()):
        cos_sum, _, used, magnitude = _saddle_pair(params, table, t, 2 * r + 1)
        values.append(weight * cos_sum)
        terms_used += used
        last = max(last, weight * magnitude)

    if alpha <= 2 or recessive:
        h_value, used, magnitude = _h_sum(params, math.log(t), 0.0, K)
        values.append(h_value.real)
        terms_used += used
        last = max(last, magnitude)

    discarded = 0.0
    if alpha > 2:
        P = negative_axis_term_count(alpha)
        discarded = abs(0.5 * _saddle_pair(params, table, t, 2 * P + 1)[1])
        method = Method.EXPONENTIAL_F
    elif weights:
        method = Method.MIXED
    else:
        method = Method.ALGEBRAIC_H

    below = t < series_threshold(alpha)
    return EvaluationResult(
        complex(math.fsum(values)),
        method,
        terms_used,
        last,
        below_threshold=below,
        discarded_imag=discarded,
    )


def eval_negative_axis(
    params: PrabhakarParams,
    t: float,
    K: Optional[int] = None,
    recessive: Optional[bool] = None,
    series_fallback: bool = True,
) -> float:
    """
    E^gamma_{alpha,beta}(-t) for large t > 0, real by construction.

    With recessive=False: H(t) for alpha < 2, C_0(t) + H(t) for alpha = 2 and
    the sum of C_r(t), r < P, for alpha > 2. With recessive=True (the
    RECESSIVE_TERMS default) every C_r with 2r+1 < alpha is added (half
    weight at 2r+1 = alpha) together with H(t).

    For alpha < 2 the optimally truncated H(t) leaves an error of order
    exp(-t^(1/alpha)) while the rounding error of the Taylor series grows
    like exp(t^(1/alpha)). Up to t^(1/alpha) = NEGATIVE_AXIS_SERIES_RHO the
    series is the more accurate of the two and is used instead, unless
    series_fallback=False.
    """
    return _negative_axis(params, t, K, recessive, series_fallback).value.real


# Dispatch

def eval_auto(
    params: PrabhakarParams,
    z: complex,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
    K: Optional[int] = None,
) -> EvaluationResult:
    """
    Evaluate with the method suited to z.

    Polynomial parameters use the finite sum; |z| up to series_threshold
    uses the Taylor series; larger arguments use the expansions, with the
    negative-axis form for real negative z. A Taylor series that fails to
    converge falls back to the expansions.
    """
    z = complex(z)
    if params.is_polynomial:
        terms = _polynomial_terms(params, z)
        value = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        return EvaluationResult(value, Method.POLYNOMIAL, len(terms), abs(terms[-1]))

    inside = abs(z) <= series_threshold(params.alpha)
    if inside:
        result = eval_series(params, z, tol, max_terms)
        if result.converged or z == 0:
            return result
        logger.warning(f"Falling back to the asymptotic expansion for {params} at z={z}")

    if z.imag == 0 and z.real < 0:
        return _negative_axis(params, -z.real, K, series_fallback=not inside)
    return eval_asymptotic(params, z, K)


def eval_auto_array(
    params: PrabhakarParams,
    x: np.ndarray,
    tol: Optional[float] = None,
    max_terms: Optional[int] = None,
) -> np.ndarray:
    """eval_auto over an array: one vectorized series for the small arguments."""
    x = np.asarray(x)
    real_input = not np.iscomplexobj(x)
    if real_input:
        x = x.astype(float)
    if params.is_polynomial:
        degree = params.polynomial_degree
        total = np.zeros(x.shape, dtype=float if real_input else complex)
        for k in range(degree + 1):
            total = total + (-1) ** k * math.comb(degree, k) * rgamma(params.alpha * k + params.beta) * x ** k
        return total

    out = np.empty(x.shape, dtype=float if real_input else complex)
    inside = np.abs(x) <= series_threshold(params.alpha)
    if inside.any():
        out[inside] = eval_series_array(params, x[inside], tol, max_terms)
    for index in np.flatnonzero(~inside):
        value = eval_auto(params, x.flat[index], tol, max_terms).value
        out.flat[index] = value.real if real_input else value
    return out


def kernel(params: PrabhakarParams, t: float, lam: float) -> float:
    """e^gamma_{alpha,beta}(t; lam) = t^(beta-1) E^gamma_{alpha,beta}(lam t^alpha)."""
    if not t > 0:
        raise DomainError("t must be positive")
    value = eval_auto(params, lam * t ** params.alpha).value
    return t ** (params.beta - 1) * value.real


def is_cm_region(params: PrabhakarParams) -> bool:
    """0 < alpha <= 1 and 0 < alpha*gamma <= beta <= 1."""
    return params.cm_region


def laplace_transform_rhs(params: PrabhakarParams, s: complex, z: complex) -> complex:
    """
    Laplace transform of t^(beta-1) E^gamma_{alpha,beta}(t^alpha z) at s:
    s^(alpha*gamma-beta) / (s^alpha - z)^gamma, on principal branches.

    For |z| < |s|^alpha it is written as s^-beta (1 - z s^-alpha)^-gamma.
    """
    s = complex(s)
    z = complex(z)
    if s.real <= 0:
        raise DomainError("Re(s) must be positive")
    s_alpha = s ** params.alpha
    if s_alpha == z:
        raise DomainError("s^alpha must differ from z")
    if abs(z) < abs(s_alpha):
        return s ** (-params.beta) * (1 - z / s_alpha) ** (-params.gamma)
    return s ** (params.alpha * params.gamma - params.beta) * (s_alpha - z) ** (-params.gamma)
