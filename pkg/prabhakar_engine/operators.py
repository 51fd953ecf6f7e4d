"""
Prabhakar Operators - fractional integral and derivatives on uniform grids

All three operators are convolutions with a Prabhakar kernel
e^g_{alpha,b}(t; -lam) = t^(b-1) E^g_{alpha,b}(-lam t^alpha). The kernel is
weakly singular at 0, so the convolutions use product integration: the
sampled factor is interpolated per cell and the kernel moments over each
cell are taken exactly from its antiderivative t^b E^g_{alpha,b+1}.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DomainError, UnsupportedError
from .params import PrabhakarParams
from .prabhakar import eval_auto, eval_auto_array

logger = logging.getLogger(__name__)

# (coefficient, exponent) pairs of the non-smooth part c * t^exponent of a sample
SingularTerms = Sequence[Tuple[float, float]]


class OperatorKind(str, Enum):
    INTEGRAL = 'integral'
    RL_DERIVATIVE = 'rl_derivative'
    CAPUTO_DERIVATIVE = 'caputo_derivative'


@dataclass(frozen=True)
class SampledFunction:
    """
    Samples values[n] = f(t0 + n*h) on a uniform grid.

    low_accuracy_nodes counts the leading nodes an operator could not
    resolve to scheme accuracy.
    """

    h: float
    values: np.ndarray = field(compare=False)
    t0: float = 0.0
    low_accuracy_nodes: int = 0

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if not self.h > 0:
            raise DomainError("grid step h must be positive")
        if values.ndim != 1 or values.size < 2:
            raise DomainError("a sampled function needs at least 2 samples")
        if not np.all(np.isfinite(values)):
            raise DomainError("samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_callable(cls, func: Callable[[np.ndarray], np.ndarray], h: float, t_max: float) -> 'SampledFunction':
        """Sample a vectorized function on [0, t_max]."""
        if not t_max > 0:
            raise DomainError("t_max must be positive")
        count = int(round(t_max / h)) + 1
        grid = h * np.arange(count)
        return cls(h=h, values=np.asarray(func(grid), dtype=float))

    @property
    def grid(self) -> np.ndarray:
        return self.t0 + self.h * np.arange(self.values.size)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class OperatorSpec:
    """Operator parameters; m = ceil(alpha*gamma)."""

    alpha: float
    gamma: float
    lam: float
    kind: OperatorKind

    def __post_init__(self):
        if not 0 < self.alpha < 2:
            raise DomainError("operator alpha must lie in (0, 2)")
        if not self.gamma > 0:
            raise DomainError("operator gamma must be positive")
        object.__setattr__(self, 'kind', OperatorKind(self.kind))

    @property
    def m(self) -> int:
        return int(math.ceil(self.alpha * self.gamma))


# Kernel moments

def _antiderivatives(
    params: PrabhakarParams, lam: float, u: np.ndarray, tol: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    G1(u) = u^b E^g_{a,b+1}(lam u^a) and G2(u) = u^(b+1) E^g_{a,b+2}(lam u^a):
    G1' is the kernel and G2' = G1.
    """
    u = np.asarray(u, dtype=float)
    if np.any(u == 0) and params.beta <= 0:
        raise DomainError("kernel is not integrable at 0 for beta <= 0")
    x = lam * u ** params.alpha
    first = eval_auto_array(params.shifted(beta=params.beta + 1), x, tol)
    second = eval_auto_array(params.shifted(beta=params.beta + 2), x, tol)
    with np.errstate(divide='ignore', invalid='ignore'):
        G1 = np.where(u == 0, 0.0, u ** params.beta * first)
        G2 = np.where(u == 0, 0.0, u ** (params.beta + 1) * second)
    return G1, G2


def kernel_cell_moment(
    params: PrabhakarParams, lam: float, a: float, b: float, order: int = 0, tol: Optional[float] = None
) -> float:
    """
    Exact integral of u^order * e^gamma_{alpha,beta}(u; lam) over [a, b].

    Args:
        params: Kernel parameters
        lam: Kernel rate
        a: Lower limit, 0 <= a <= b
        b: Upper limit
        order: 0 for the plain moment, 1 for the first moment
        tol: Series tolerance of the kernel evaluations

    Returns:
        The moment (0 for an empty interval)
    """
    if order not in (0, 1):
        raise DomainError("order must be 0 or 1")
    if a < 0 or b < a:
        raise DomainError("need 0 <= a <= b")
    if a == b:
        return 0.0
    G1, G2 = _antiderivatives(params, lam, np.array([a, b]), tol)
    if order == 0:
        return float(G1[1] - G1[0])
    return float(b * G1[1] - a * G1[0] - (G2[1] - G2[0]))


def _cell_weights(
    params: PrabhakarParams, lam: float, h: float, cells: int, tol: Optional[float] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-cell moments of the kernel on [i*h, (i+1)*h], i < cells.

    Returns (M0, P) with M0 the plain moment and P the moment against the
    local hat (u - i*h)/h.
    """
    G1, G2 = _antiderivatives(params, lam, h * np.arange(cells + 1), tol)
    M0 = np.diff(G1)
    P = G1[1:] - np.diff(G2) / h
    return M0, P


def _product_integrate(
    values: np.ndarray,
    params: PrabhakarParams,
    lam: float,
    h: float,
    order: int = 2,
    tol: Optional[float] = None,
) -> np.ndarray:
    """
    out[n] ~ integral_0^(t_n) kernel(t_n - u) f(u) du for each node.

    order=2 interpolates f linearly per cell, order=1 holds f at the later
    sample of each cell.
    """
    N = values.size - 1
    M0, P = _cell_weights(params, lam, h, N, tol)
    out = np.zeros(values.size)
    if order == 1:
        # sum_(l<n) M0[l] f[n-l]
        out[1:] = np.convolve(values, M0)[1:N + 1] - np.append(M0[1:], 0.0) * values[0]
        return out
    if order != 2:
        raise DomainError("order must be 1 or 2")
    a = M0 - P
    # sum_(l<n) a[l] f[n-l] + P[l] f[n-1-l]
    upper = np.convolve(values, a)[1:N + 1] - np.append(a[1:], 0.0) * values[0]
    lower = np.convolve(values, P)[:N]
    out[1:] = upper + lower
    return out


def _integral_kernel(spec: OperatorSpec) -> PrabhakarParams:
    alpha_gamma = spec.alpha * spec.gamma
    if alpha_gamma <= 0:
        raise DomainError("alpha*gamma must be positive")
    return PrabhakarParams(spec.alpha, alpha_gamma, spec.gamma)


def _derivative_kernel(spec: OperatorSpec) -> PrabhakarParams:
    alpha_gamma = spec.alpha * spec.gamma
    if not 0 < alpha_gamma < 1:
        raise UnsupportedError(f"derivative operators need alpha*gamma in (0, 1), got {alpha_gamma}")
    return PrabhakarParams(spec.alpha, 1 - alpha_gamma, -spec.gamma)


def kernel_params(spec: OperatorSpec) -> PrabhakarParams:
    """Parameters (alpha, b, g) of the kernel e^g_{alpha,b}(t; -lam) the operator convolves with."""
    if spec.kind is OperatorKind.INTEGRAL:
        return _integral_kernel(spec)
    return _derivative_kernel(spec)


def _require_origin(f: SampledFunction) -> None:
    if f.t0 != 0:
        raise DomainError("operators integrate from 0: samples must start at t0 = 0")


def stencil_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order finite differences, one-sided near the ends."""
    g = np.asarray(values, dtype=float)
    if g.size < 5:
        raise DomainError("fourth-order differencing needs at least 5 samples")
    d = np.empty_like(g)
    d[2:-2] = (g[:-4] - 8 * g[1:-3] + 8 * g[3:-1] - g[4:]) / (12 * h)
    d[0] = (-25 * g[0] + 48 * g[1] - 36 * g[2] + 16 * g[3] - 3 * g[4]) / (12 * h)
    d[1] = (-3 * g[0] - 10 * g[1] + 18 * g[2] - 6 * g[3] + g[4]) / (12 * h)
    d[-1] = (25 * g[-1] - 48 * g[-2] + 36 * g[-3] - 16 * g[-4] + 3 * g[-5]) / (12 * h)
    d[-2] = (3 * g[-1] + 10 * g[-2] - 18 * g[-3] + 6 * g[-4] - g[-5]) / (12 * h)
    return d


def _difference_convolution(values: np.ndarray, M0: np.ndarray, h: float) -> np.ndarray:
    """sum_(l<n) M0[l] (f[n-l] - f[n-l-1]) / h, the kernel against the interpolant's slope."""
    slopes = np.diff(values) / h
    out = np.zeros(values.size)
    out[1:] = np.convolve(slopes, M0)[:values.size - 1]
    return out


def power_response(spec: OperatorSpec, exponent: float, t: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """
    The operator applied exactly to t^exponent.

    The kernel e^g_{alpha,b}(t; -lam) against t^s is
    Gamma(s+1) t^(s+b) E^g_{alpha,s+b+1}(-lam t^alpha); both derivatives
    differentiate that once, giving Gamma(s+1) t^(s+b-1) E^g_{alpha,s+b}(-lam t^alpha).
    Where the power of t is negative the value at t = 0 is inf.

    Args:
        spec: Operator
        exponent: s > -1 for the integral, s > 0 for the derivatives
        t: Nonnegative times
        tol: Series tolerance

    Returns:
        Values on t
    """
    params = kernel_params(spec)
    integral = spec.kind is OperatorKind.INTEGRAL
    if not exponent > (-1 if integral else 0):
        raise DomainError(f"exponent {exponent} out of range for {spec.kind.value}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be nonnegative")
    power = exponent + params.beta - (0 if integral else 1)
    values = eval_auto_array(params.shifted(beta=power + 1), -spec.lam * t ** spec.alpha, tol)
    with np.errstate(divide='ignore', invalid='ignore'):
        return math.gamma(exponent + 1) * t ** power * values


def _split_singular(f: SampledFunction, singular_terms: SingularTerms) -> np.ndarray:
    """f minus its listed non-smooth part."""
    grid = f.grid
    remainder = np.array(f.values, dtype=float)
    for coefficient, exponent in singular_terms:
        if not exponent > 0:
            raise DomainError(f"singular exponents must be positive, got {exponent}")
        remainder -= coefficient * grid ** exponent
    return remainder


def _add_singular(
    values: np.ndarray,
    f: SampledFunction,
    spec: OperatorSpec,
    singular_terms: SingularTerms,
    tol: Optional[float],
) -> np.ndarray:
    grid = f.grid
    for coefficient, exponent in singular_terms:
        values = values + coefficient * power_response(spec, exponent, grid, tol)
    return values


def _finite_origin(values: np.ndarray, low_accuracy_nodes: int) -> Tuple[np.ndarray, int]:
    """Repeat node 1 at node 0 when the exact value there is unbounded."""
    if np.isfinite(values[0]):
        return values, low_accuracy_nodes
    values = values.copy()
    values[0] = values[1]
    return values, max(low_accuracy_nodes, 1)


def prabhakar_integral(
    f: SampledFunction,
    spec: OperatorSpec,
    order: int = 2,
    singular_terms: SingularTerms = (),
    tol: Optional[float] = None,
) -> SampledFunction:
    """
    Prabhakar integral: e^gamma_{alpha,alpha*gamma}(t; -lam) convolved with f.

    Args:
        f: Samples from t0 = 0
        spec: Operator of kind INTEGRAL
        order: 2 (piecewise linear) or 1 (piecewise constant)
        singular_terms: Known terms c * t^s of f, integrated exactly
        tol: Series tolerance of the kernel evaluations

    Returns:
        Samples of the integral on the same grid
    """
    if spec.kind is not OperatorKind.INTEGRAL:
        raise DomainError(f"expected an integral operator, got {spec.kind.value}")
    _require_origin(f)
    remainder = _split_singular(f, singular_terms)
    values = _product_integrate(remainder, _integral_kernel(spec), -spec.lam, f.h, order, tol)
    values = _add_singular(values, f, spec, singular_terms, tol)
    return SampledFunction(h=f.h, values=values)


def prabhakar_deriv_rl(
    f: SampledFunction,
    spec: OperatorSpec,
    differentiation: str = 'stencil',
    singular_terms: SingularTerms = (),
    tol: Optional[float] = None,
) -> SampledFunction:
    """
    Riemann-Liouville-type Prabhakar derivative d/dt (e^-gamma_{alpha,1-alpha*gamma}(t; -lam) * f).

    differentiation='stencil' differences the product-integrated convolution;
    'exact' differentiates the piecewise-linear approximant in closed form,
    k(t) f(0) plus the kernel against the slopes. Node 0 is low-accuracy.
    The terms in singular_terms are taken out of f and differentiated exactly.
    """
    if spec.kind is not OperatorKind.RL_DERIVATIVE:
        raise DomainError(f"expected an rl_derivative operator, got {spec.kind.value}")
    _require_origin(f)
    params = _derivative_kernel(spec)
    lam = -spec.lam
    remainder = _split_singular(f, singular_terms)

    if differentiation == 'stencil':
        convolution = _product_integrate(remainder, params, lam, f.h, tol=tol)
        values = stencil_derivative(convolution, f.h)
    elif differentiation == 'exact':
        N = remainder.size - 1
        M0, _ = _cell_weights(params, lam, f.h, N, tol)
        grid = f.h * np.arange(1, N + 1)
        kernel_values = grid ** (params.beta - 1) * eval_auto_array(params, lam * grid ** params.alpha, tol)
        values = _difference_convolution(remainder, M0, f.h)
        values[1:] += kernel_values * remainder[0]
    else:
        raise DomainError(f"Unknown differentiation: {differentiation}")
    values = _add_singular(values, f, spec, singular_terms, tol)
    if differentiation == 'exact':
        # the derivative is unbounded at t = 0 unless f(0) = 0; node 0 repeats node 1
        values[0] = values[1]
    values, _ = _finite_origin(values, 1)
    return SampledFunction(h=f.h, values=values, low_accuracy_nodes=1)


def prabhakar_deriv_caputo(
    f: SampledFunction,
    spec: OperatorSpec,
    scheme: str = 'interpolant',
    singular_terms: SingularTerms = (),
    tol: Optional[float] = None,
) -> SampledFunction:
    """
    Caputo-type Prabhakar derivative: e^-gamma_{alpha,1-alpha*gamma}(t; -lam) convolved with f'.

    scheme='interpolant' uses the slopes of the piecewise-linear interpolant
    of f; scheme='stencil' differentiates f to fourth order first and then
    product-integrates.

    A sample with a non-smooth start, such as f(t) = 1 + c t^s + ... with
    0 < s < 2, loses accuracy near t = 0 in both schemes. Passing those
    terms as singular_terms differentiates them exactly and leaves only the
    smooth remainder to the scheme; node 0 is then exact too.
    """
    if spec.kind is not OperatorKind.CAPUTO_DERIVATIVE:
        raise DomainError(f"expected a caputo_derivative operator, got {spec.kind.value}")
    _require_origin(f)
    params = _derivative_kernel(spec)
    lam = -spec.lam
    remainder = _split_singular(f, singular_terms)

    if scheme == 'interpolant':
        M0, _ = _cell_weights(params, lam, f.h, remainder.size - 1, tol)
        values = _difference_convolution(remainder, M0, f.h)
    elif scheme == 'stencil':
        values = _product_integrate(stencil_derivative(remainder, f.h), params, lam, f.h, tol=tol)
    else:
        raise DomainError(f"Unknown scheme: {scheme}")
    values = _add_singular(values, f, spec, singular_terms, tol)
    values, low_accuracy_nodes = _finite_origin(values, 0 if singular_terms else 1)
    return SampledFunction(h=f.h, values=values, low_accuracy_nodes=low_accuracy_nodes)


def rl_calculus_on_kernel(params: PrabhakarParams, lam: float, rho: float, t: float, kind: str = 'integral') -> float:
    """
    Riemann-Liouville integral or derivative of order rho applied to the kernel:
    t^(beta+rho-1) E^gamma_{alpha,beta+rho}(lam t^alpha) for the integral and
    t^(beta-rho-1) E^gamma_{alpha,beta-rho}(lam t^alpha) for the derivative.
    """
    if not t > 0:
        raise DomainError("t must be positive")
    if not rho > 0:
        raise DomainError("rho must be positive")
    if kind == 'integral':
        shift = rho
    elif kind == 'derivative':
        shift = -rho
    else:
        raise DomainError(f"Unknown kind: {kind}")
    shifted = params.shifted(beta=params.beta + shift)
    value = eval_auto(shifted, lam * t ** params.alpha).value.real
    return t ** (shifted.beta - 1) * value
