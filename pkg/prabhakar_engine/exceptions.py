"""
Exceptions - Error hierarchy of the Prabhakar engine
"""


class PrabhakarError(Exception):
    """Base exception for Prabhakar engine operations"""
    pass


class DomainError(PrabhakarError, ValueError):
    """A parameter or argument lies outside the domain of an operation"""
    pass


class PolynomialCaseError(DomainError):
    """gamma is a nonpositive integer and the asymptotic route does not apply"""
    pass


class UnsupportedError(DomainError):
    """The configuration is valid but not implemented"""
    pass


class NormalizationError(DomainError):
    """A power series has a zero leading coefficient"""
    pass


class ConvergenceError(PrabhakarError, ArithmeticError):
    """A summation did not reach its stopping rule"""
    pass
