"""
Heat Solutions - separable solutions of the nonlinear fractional heat equations

The time factor f solves C(D^alpha + lam)^gamma f = -beta f with f(0) = 1,

    f(t) = sum_k (-beta)^k t^(alpha*gamma*k) E^(gamma*k)_{alpha,1+alpha*gamma*k}(-lam t^alpha),

and tends to phi_0 = lam^gamma / (lam^gamma + beta) with power-law corrections
for every beta >= 0.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy import special

from .conf import engine_setting
from .exceptions import ConvergenceError, DomainError, UnsupportedError
from .operators import OperatorKind, OperatorSpec
from .params import PrabhakarParams
from .prabhakar import eval_auto, eval_series_array, rgamma, series_threshold
from .series_engine import CoefficientSeries, series_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeatParams:
    """
    Time-factor parameters: operator (alpha, gamma, lam) and loss rate beta_loss.
    """

    alpha: float
    gamma: float
    lam: float
    beta_loss: float

    def __post_init__(self):
        for name in ('alpha', 'gamma', 'lam', 'beta_loss'):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if not 0 < self.alpha * self.gamma < 1:
            raise DomainError("alpha*gamma must lie in (0, 1)")
        if not self.lam > 0:
            raise DomainError("lambda must be positive")
        if not self.beta_loss >= 0:
            raise DomainError("beta_loss must be nonnegative")

    @property
    def ratio(self) -> float:
        """beta_loss / lam^gamma."""
        return self.beta_loss / self.lam ** self.gamma

    def operator_spec(self) -> OperatorSpec:
        return OperatorSpec(self.alpha, self.gamma, self.lam, OperatorKind.CAPUTO_DERIVATIVE)

    def inner_params(self, k: int) -> PrabhakarParams:
        """Parameters of the k-th inner Prabhakar function."""
        return PrabhakarParams(self.alpha, 1 + self.alpha * self.gamma * k, self.gamma * k)


def _outer_term(hp: HeatParams, t: float, k: int, tol: float) -> float:
    if k == 0:
        return 1.0
    inner = eval_auto(hp.inner_params(k), -hp.lam * t ** hp.alpha, tol).value.real
    log_scale = k * (math.log(hp.beta_loss) + hp.alpha * hp.gamma * math.log(t))
    return (-1) ** k * math.exp(log_scale) * inner


def eigenfunction_f(hp: HeatParams, t: float, tol: Optional[float] = None) -> float:
    """
    Sum the outer series for f(t).

    The sum stops after two consecutive terms below tol times the partial
    sum. Beyond HEAT_T_SWITCH the large-t expansion is used instead.

    Args:
        hp: Heat parameters
        t: Time, t >= 0
        tol: Relative stopping tolerance (SERIES_TOL by default)

    Returns:
        f(t)
    """
    tol = engine_setting('SERIES_TOL') if tol is None else tol
    if t < 0:
        raise DomainError("t must be nonnegative")
    if t == 0 or hp.beta_loss == 0:
        return 1.0
    if t > engine_setting('HEAT_T_SWITCH'):
        return f_asymptotic(hp, t, J=4, tol=tol)

    terms: List[float] = []
    small = 0
    for k in range(engine_setting('HEAT_OUTER_MAX_TERMS')):
        term = _outer_term(hp, t, k, tol)
        terms.append(term)
        total = math.fsum(terms)
        small = small + 1 if abs(term) < tol * abs(total) else 0
        if small >= 2:
            return total
    raise ConvergenceError(f"outer series for f({t}) did not converge; use f_asymptotic")


def eigenfunction_samples(hp: HeatParams, t: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """
    f on an array of times.

    Times whose inner arguments stay inside the series radius share one
    vectorized outer sum with Kahan compensation; the rest go through
    eigenfunction_f.
    """
    tol = engine_setting('SERIES_TOL') if tol is None else tol
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be nonnegative")
    out = np.ones(t.shape)
    if hp.beta_loss == 0:
        return out

    x = hp.lam * t ** hp.alpha
    inside = x <= series_threshold(hp.alpha)
    grid = t[inside]
    if grid.size:
        total = np.ones(grid.shape)
        compensation = np.zeros(grid.shape)
        scale = hp.beta_loss * grid ** (hp.alpha * hp.gamma)
        run = 0
        for k in range(1, engine_setting('HEAT_OUTER_MAX_TERMS')):
            inner = eval_series_array(hp.inner_params(k), -x[inside], tol)
            term = (-scale) ** k * inner
            y = term - compensation
            updated = total + y
            compensation = (updated - total) - y
            total = updated
            run = run + 1 if np.all(np.abs(term) < tol * np.abs(total)) else 0
            if run >= 2:
                break
        else:
            raise ConvergenceError("vectorized outer series did not converge; use f_asymptotic")
        out[inside] = total

    for index in np.flatnonzero(~inside):
        out.flat[index] = eigenfunction_f(hp, float(t.flat[index]), tol)
    return out


def eigenfunction_singular_terms(hp: HeatParams, max_exponent: float = 2.0) -> List[Tuple[float, float]]:
    """
    Terms c * t^s of f with s < max_exponent, from its double series
    sum_(k,n) (-beta)^k (gamma*k)_n (-lam)^n t^(alpha*gamma*k + alpha*n) / (n! Gamma(1 + alpha*gamma*k + alpha*n)).

    The k = 0 row is the constant 1 and is left out. Returns
    (coefficient, exponent) pairs for the operators' singular_terms.
    """
    if not max_exponent > 0:
        raise DomainError("max_exponent must be positive")
    terms: List[Tuple[float, float]] = []
    if hp.beta_loss == 0:
        return terms
    alpha_gamma = hp.alpha * hp.gamma
    k = 1
    while alpha_gamma * k < max_exponent:
        n = 0
        while alpha_gamma * k + hp.alpha * n < max_exponent:
            exponent = alpha_gamma * k + hp.alpha * n
            coefficient = ((-hp.beta_loss) ** k * special.poch(hp.gamma * k, n) * (-hp.lam) ** n
                           / math.factorial(n) * rgamma(1 + exponent))
            if coefficient != 0:
                terms.append((float(coefficient), exponent))
            n += 1
        k += 1
    return terms


def limit_value(hp: HeatParams) -> float:
    """phi_0 = lam^gamma / (lam^gamma + beta), the limit of f(t) as t grows."""
    lam_gamma = hp.lam ** hp.gamma
    return lam_gamma / (lam_gamma + hp.beta_loss)


def _phi_generating(hp: HeatParams, J: int) -> List[float]:
    # phi_j is the v^j coefficient of 1 / (1 + r (1+v)^-gamma), valid for every r
    r = hp.ratio
    denominator = CoefficientSeries(tuple(
        (1.0 + r) if j == 0 else r * float(special.binom(-hp.gamma, j)) for j in range(J + 1)
    ))
    reciprocal = series_power(denominator, -1.0, J)
    return [c / (1.0 + r) for c in reciprocal.coeffs]


def phi_coeffs(hp: HeatParams, J: int, tol: Optional[float] = None, method: str = 'auto') -> List[float]:
    """
    Coefficients phi_0..phi_J of the large-t expansion,
    phi_j = ((-1)^j / j!) sum_k (gamma*k)_j (-beta/lam^gamma)^k.

    method='direct' sums that series and needs beta/lam^gamma < 1.
    method='generating' takes the Taylor coefficients of its sum
    1 / (1 + r (1+v)^-gamma), r = beta/lam^gamma, which continue the series
    to r >= 1. 'auto' sums directly below r = 1 and uses the generating
    function from there on.
    """
    tol = engine_setting('SERIES_TOL') if tol is None else tol
    if J < 0:
        raise DomainError("J must be nonnegative")
    if method not in ('auto', 'direct', 'generating'):
        raise DomainError(f"Unknown method: {method}")
    r = hp.ratio
    if r == 0:
        return [1.0] + [0.0] * J
    if method == 'generating' or (method == 'auto' and r >= 1):
        return _phi_generating(hp, J)
    if r >= 1:
        raise UnsupportedError(
            f"series for phi_j not summable by direct method (beta/lambda^gamma = {r:.6g} >= 1)"
        )

    max_terms = engine_setting('PHI_MAX_TERMS')
    log_r = math.log(r)
    coefficients = []
    for j in range(J + 1):
        # k = 0: Gamma(j)/Gamma(0) vanishes except for j = 0
        terms = [1.0 if j == 0 else 0.0]
        running = terms[0]
        peak = j / -log_r
        small = 0
        for k in range(1, max_terms):
            term = special.poch(hp.gamma * k, j) * (-1) ** k * math.exp(k * log_r)
            terms.append(term)
            running += term
            small = small + 1 if abs(term) < tol * abs(running) else 0
            if small >= 2 and k > peak:
                break
        else:
            raise ConvergenceError(f"phi_{j} did not converge within {max_terms} terms")
        coefficients.append((-1) ** j / math.factorial(j) * math.fsum(terms))
    return coefficients


def f_asymptotic(hp: HeatParams, t: float, J: int = 2, tol: Optional[float] = None) -> float:
    """f(t) ~ sum_(j<=J) (t^alpha lam)^-j phi_j / Gamma(1 - alpha*j)."""
    if not t > 0:
        raise DomainError("t must be positive")
    x = t ** hp.alpha * hp.lam
    if x <= 10:
        logger.debug(f"f_asymptotic used at t^alpha*lam={x:.3g}, below the advisory 10")
    phi = phi_coeffs(hp, J, tol)
    return math.fsum(x ** -j * rgamma(1 - hp.alpha * j) * phi[j] for j in range(J + 1))


def f_tilde(hp: HeatParams, t: float, tol: Optional[float] = None) -> float:
    """f(t) - phi_0, the decaying part of f."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    return eigenfunction_f(hp, t, tol) - limit_value(hp)


def spatial_profile_power(x: float, C: float, xi: float) -> float:
    """(x + C)^(1/(1+xi))."""
    if not C > 0 or not xi > 0:
        raise DomainError("C and xi must be positive")
    if not x + C > 0:
        raise DomainError("x + C must be positive")
    return (x + C) ** (1.0 / (1.0 + xi))


def spatial_profile_exp(x: float, C: float, nu: float) -> float:
    """ln(x + C) / nu, defined for x > C."""
    if not C > 0 or not nu > 0:
        raise DomainError("C and nu must be positive")
    if not x > C:
        raise DomainError("the exponential-conductivity solution needs x > C")
    return math.log(x + C) / nu


def heat_solution_power(x: float, t: float, C: float, xi: float, hp: HeatParams, k0: float = 1.0) -> float:
    """
    T(x, t) = (x + C)^(1/(1+xi)) f(t).

    The flux k0 d/dx(T^xi dT/dx) vanishes on this profile, so k0 does not
    enter the value.
    """
    return spatial_profile_power(x, C, xi) * eigenfunction_f(hp, t)


def heat_solution_exp(x: float, t: float, C: float, nu: float, hp: HeatParams, k0: float = 1.0) -> float:
    """T(x, t) = ln(x + C)/nu f(t); k0 does not enter the value."""
    return spatial_profile_exp(x, C, nu) * eigenfunction_f(hp, t)


def eigenfunction_laplace(hp: HeatParams, s: complex) -> complex:
    """Laplace transform of f: s^-1 / (1 + beta / (s^alpha + lam)^gamma)."""
    s = complex(s)
    if s.real <= 0:
        raise DomainError("Re(s) must be positive")
    return 1.0 / (s * (1.0 + hp.beta_loss / (s ** hp.alpha + hp.lam) ** hp.gamma))
