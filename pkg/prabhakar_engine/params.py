"""
Prabhakar Parameters - the (alpha, beta, gamma) triple and its derived flags
"""
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from .exceptions import DomainError


class Regime(str, Enum):
    """Expansion regime selected by alpha."""

    SUB2 = 'sub2'
    EQ2 = 'eq2'
    SUPER2 = 'super2'


@dataclass(frozen=True)
class PrabhakarParams:
    """
    Parameters of E^gamma_{alpha,beta}.

    alpha must be positive; beta and gamma are real and finite.
    """

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ('alpha', 'beta', 'gamma'):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not math.isfinite(self.alpha) or self.alpha <= 0:
            raise DomainError("alpha must be positive")
        if not (math.isfinite(self.beta) and math.isfinite(self.gamma)):
            raise DomainError("beta and gamma must be finite")

    @property
    def psi(self) -> float:
        return 1.0 - self.gamma + self.beta

    @property
    def is_polynomial(self) -> bool:
        return self.gamma <= 0 and self.gamma.is_integer()

    @property
    def polynomial_degree(self) -> Optional[int]:
        return int(-self.gamma) if self.is_polynomial else None

    @property
    def cm_region(self) -> bool:
        alpha_gamma = self.alpha * self.gamma
        return 0 < self.alpha <= 1 and 0 < alpha_gamma <= self.beta <= 1

    @property
    def regime(self) -> Regime:
        if self.alpha < 2:
            return Regime.SUB2
        if self.alpha == 2:
            return Regime.EQ2
        return Regime.SUPER2

    def shifted(self, beta: Optional[float] = None, gamma: Optional[float] = None) -> 'PrabhakarParams':
        """Copy with beta and/or gamma replaced."""
        changes = {}
        if beta is not None:
            changes['beta'] = beta
        if gamma is not None:
            changes['gamma'] = gamma
        return replace(self, **changes)
