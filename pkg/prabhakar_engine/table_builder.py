"""
Figure Data Builder - numeric tables behind the management commands
"""
import logging
import math
from typing import Callable, Dict, Optional

import numpy as np

from .asym_coeffs import asymptotic_table
from .conf import engine_setting
from .exceptions import DomainError
from .export_service import CsvTable
from .heat import HeatParams, eigenfunction_samples, eigenfunction_singular_terms, f_asymptotic, limit_value
from .operators import (
    OperatorKind,
    OperatorSpec,
    SampledFunction,
    kernel_params,
    prabhakar_deriv_caputo,
    prabhakar_deriv_rl,
    prabhakar_integral,
)
from .params import PrabhakarParams
from .prabhakar import eval_auto, eval_negative_axis, eval_series, negative_axis_term_count

logger = logging.getLogger(__name__)

TEST_FUNCTIONS = ('one', 't', 'sin', 'eigen')

OPERATOR_KINDS: Dict[str, OperatorKind] = {
    'integral': OperatorKind.INTEGRAL,
    'rl': OperatorKind.RL_DERIVATIVE,
    'caputo': OperatorKind.CAPUTO_DERIVATIVE,
}


def _params_comments(params: PrabhakarParams) -> Dict[str, str]:
    return {'alpha': repr(params.alpha), 'beta': repr(params.beta), 'gamma': repr(params.gamma)}


class FigureDataBuilder:
    """
    Builds the CSV tables printed by the management commands.

    Every table carries its parameters in comment lines so that a saved file
    documents how it was produced.
    """

    def __init__(self, tol: Optional[float] = None, max_terms: Optional[int] = None):
        """
        Initialize the FigureDataBuilder.

        Args:
            tol: Relative series tolerance threaded into every evaluator
            max_terms: Taylor series term cap
        """
        self.tol = engine_setting('SERIES_TOL') if tol is None else tol
        self.max_terms = engine_setting('SERIES_MAX_TERMS') if max_terms is None else max_terms
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        logger.info("FigureDataBuilder initialized")

    def build_coefficient_table(self, params: PrabhakarParams, n: int) -> CsvTable:
        """Columns k, c_k, R_k, Upsilon_k for k = 0..n."""
        table = asymptotic_table(params, n)
        csv_table = CsvTable(
            header=['k', 'c_k', 'R_k', 'Upsilon_k'],
            comments={**_params_comments(params), 'psi': repr(table.psi), 'K': str(table.K)},
        )
        for k in range(table.K + 1):
            csv_table.add_row([k, table.c[k], table.R[k], table.Upsilon[k]])
        return csv_table

    def _series_reference(self, params: PrabhakarParams, t: float) -> Optional[float]:
        # beyond this the peak Taylor term exceeds exp(THRESHOLD_PEAK_LOG)
        if t ** (1.0 / params.alpha) > engine_setting('THRESHOLD_PEAK_LOG'):
            return None
        result = eval_series(params, -t, self.tol, self.max_terms)
        return result.value.real if result.converged else None

    def build_negative_axis_table(
        self,
        params: PrabhakarParams,
        t_min: float,
        t_max: float,
        points: int,
    ) -> CsvTable:
        """
        Columns t, E_series, E_asymptotic, rel_gap, C_terms on a log-spaced grid.

        E_series is left empty where the Taylor series is not reliable;
        C_terms is the number of dominant C_r terms for this alpha.
        """
        if not 0 < t_min < t_max:
            raise DomainError("need 0 < t_min < t_max")
        if points < 2:
            raise DomainError("points must be at least 2")

        recessive = engine_setting('RECESSIVE_TERMS')
        c_terms = negative_axis_term_count(params.alpha)
        table = CsvTable(
            header=['t', 'E_series', 'E_asymptotic', 'rel_gap', 'C_terms'],
            comments={**_params_comments(params), 'recessive_terms': str(recessive).lower(),
                      'K': str(engine_setting('ASYMPTOTIC_ORDER'))},
        )
        for t in np.geomspace(t_min, t_max, points):
            t = float(t)
            series = self._series_reference(params, t)
            asymptotic = eval_negative_axis(params, t, recessive=recessive, series_fallback=False)
            gap = None
            if series is not None and series != 0:
                gap = abs(asymptotic - series) / abs(series)
            table.add_row([t, series, asymptotic, gap, c_terms])
        return table

    def build_heat_table(
        self,
        hp: HeatParams,
        t_max: float,
        points: int,
        log_tilde: bool = False,
        t_min: Optional[float] = None,
    ) -> CsvTable:
        """
        Columns t, f, f_tilde, f_asym2.

        The grid is linear on [0, t_max], or log-spaced on [t_min, t_max]
        with log_tilde for slope extraction. f_asym2 is empty at t = 0.
        """
        if not t_max > 0:
            raise DomainError("t_max must be positive")
        if points < 2:
            raise DomainError("points must be at least 2")
        if log_tilde:
            t_min = 1.0 if t_min is None else t_min
            if not 0 < t_min < t_max:
                raise DomainError("need 0 < t_min < t_max")
            grid = np.geomspace(t_min, t_max, points)
        else:
            grid = np.linspace(0.0, t_max, points)

        phi0 = limit_value(hp)
        f = eigenfunction_samples(hp, grid, self.tol)
        comments = {
            'alpha': repr(hp.alpha), 'gamma': repr(hp.gamma), 'lambda': repr(hp.lam),
            'beta_loss': repr(hp.beta_loss), 'phi_0': repr(phi0),
            'grid': 'log' if log_tilde else 'linear',
        }

        if hp.ratio >= 1:
            comments['f_asym2'] = 'phi_j from the generating function (beta_loss/lambda^gamma >= 1)'
        table = CsvTable(header=['t', 'f', 'f_tilde', 'f_asym2'], comments=comments)
        for t, value in zip(grid, f):
            t = float(t)
            asym = f_asymptotic(hp, t, J=2, tol=self.tol) if t > 0 else None
            table.add_row([t, float(value), float(value) - phi0, asym])
        return table

    def build_operator_table(
        self,
        kind: str,
        alpha: float,
        gamma: float,
        lam: float,
        h: float,
        t_max: float,
        test_fn: str,
        beta_loss: float = 1.0,
    ) -> CsvTable:
        """
        Columns t, numeric, reference, abs_err for one operator and test function.

        Test functions: one, t, sin, and eigen (the heat eigenfunction with
        loss beta_loss, whose non-smooth start is handled exactly). The
        reference column is empty where no closed form exists.
        """
        if kind not in OPERATOR_KINDS:
            raise DomainError(f"Unknown operator kind: {kind}")
        if test_fn not in TEST_FUNCTIONS:
            raise DomainError(f"Unknown test function: {test_fn}")
        spec = OperatorSpec(alpha, gamma, lam, OPERATOR_KINDS[kind])
        params = kernel_params(spec)

        hp = None
        singular_terms = ()
        if test_fn == 'eigen':
            hp = HeatParams(alpha, gamma, lam, beta_loss)
            sampled = SampledFunction.from_callable(lambda t: eigenfunction_samples(hp, t, self.tol), h, t_max)
            singular_terms = eigenfunction_singular_terms(hp)
        else:
            sampled = SampledFunction.from_callable(_TEST_CALLABLES[test_fn], h, t_max)

        if spec.kind is OperatorKind.INTEGRAL:
            result = prabhakar_integral(sampled, spec, singular_terms=singular_terms, tol=self.tol)
        elif spec.kind is OperatorKind.RL_DERIVATIVE:
            result = prabhakar_deriv_rl(sampled, spec, singular_terms=singular_terms, tol=self.tol)
        else:
            result = prabhakar_deriv_caputo(sampled, spec, singular_terms=singular_terms, tol=self.tol)

        comments = {
            'kind': kind, 'alpha': repr(spec.alpha), 'gamma': repr(spec.gamma), 'lambda': repr(spec.lam),
            'h': repr(h), 'test_fn': test_fn, 'low_accuracy_nodes': str(result.low_accuracy_nodes),
        }
        if hp is not None:
            comments['beta_loss'] = repr(hp.beta_loss)

        table = CsvTable(header=['t', 'numeric', 'reference', 'abs_err'], comments=comments)
        for t, numeric, f_value in zip(sampled.grid, result.values, sampled.values):
            t = float(t)
            reference = self._operator_reference(spec, params, test_fn, t, float(f_value), hp)
            error = None if reference is None else abs(float(numeric) - reference)
            table.add_row([t, float(numeric), reference, error])
        return table

    def _operator_reference(
        self,
        spec: OperatorSpec,
        params: PrabhakarParams,
        test_fn: str,
        t: float,
        f_value: float,
        hp: Optional[HeatParams],
    ) -> Optional[float]:
        differentiate = spec.kind is not OperatorKind.INTEGRAL
        caputo = spec.kind is OperatorKind.CAPUTO_DERIVATIVE
        lam = -spec.lam

        if test_fn == 'one':
            if caputo:
                return 0.0
            return monomial_response(params, lam, 0, t, differentiate)
        if test_fn == 't':
            return monomial_response(params, lam, 1, t, differentiate)
        if test_fn == 'sin':
            return self._sin_response(params, lam, t, differentiate)

        # eigen: the Caputo derivative is -beta_loss f; RL adds f(0) times the kernel
        if spec.kind is OperatorKind.INTEGRAL:
            return None
        if caputo:
            return -hp.beta_loss * f_value
        jump = monomial_response(params, lam, 0, t, True)
        return None if jump is None else -hp.beta_loss * f_value + jump

    def _sin_response(self, params: PrabhakarParams, lam: float, t: float, differentiate: bool) -> Optional[float]:
        if t == 0:
            return 0.0
        terms = []
        for n in range(200):
            term = (-1) ** n * monomial_response(params, lam, 2 * n + 1, t, differentiate)
            terms.append(term)
            if abs(term) <= 1e-17 * abs(math.fsum(terms)) and n > t:
                break
        return math.fsum(terms)


def monomial_response(params: PrabhakarParams, lam: float, p: int, t: float, differentiate: bool) -> Optional[float]:
    """
    Kernel e^g_{a,b}(t; lam) against the monomial t^p / p!.

    The convolution is t^(b+p) E^g_{a,b+p+1}(lam t^a); with differentiate
    it is differentiated once, t^(b+p-1) E^g_{a,b+p}(lam t^a). None where the
    value is unbounded (t = 0 with a negative power).
    """
    shift = p if differentiate else p + 1
    power = params.beta + shift - 1
    if t == 0:
        if power > 0:
            return 0.0
        if power == 0:
            return eval_auto(params.shifted(beta=params.beta + shift), 0.0).value.real
        return None
    value = eval_auto(params.shifted(beta=params.beta + shift), lam * t ** params.alpha).value.real
    return t ** power * value


_TEST_CALLABLES: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    'one': np.ones_like,
    't': lambda t: np.asarray(t, dtype=float),
    'sin': np.sin,
}
