"""Exception types shared across the package."""

from __future__ import annotations


class ConfigurationError(ValueError):
    """Rejected precision/context configuration (e.g. too few target digits)."""


class DomainError(ValueError):
    """Argument outside the documented domain of an operation."""


class NonConvergenceError(ArithmeticError):
    """Quadrature failed to converge within the level budget.

    Carries the last two refinement-level values so the caller can see how
    far the run got.
    """

    def __init__(self, message: str, *, levels: int, last_two: tuple):
        super().__init__(message)
        self.levels = levels
        self.last_two = last_two


class IntegrandError(ArithmeticError):
    """Integrand returned a non-finite value; names the offending abscissa."""

    def __init__(self, message: str, *, abscissa):
        super().__init__(message)
        self.abscissa = abscissa


class PrecisionError(ValueError):
    """Input precision too low for the requested search; carries a hint."""

    def __init__(self, message: str, *, min_digits: int):
        super().__init__(message)
        self.min_digits = min_digits


class RelationNotFoundError(ArithmeticError):
    """Integer-relation search did not produce the expected relation."""

    def __init__(self, message: str, *, precision: int, norm_bound):
        super().__init__(message)
        self.precision = precision
        self.norm_bound = norm_bound


class UnknownIdentityError(KeyError):
    """Identity id not present in the registry; carries the valid ids."""

    def __init__(self, identity_id: str, valid_ids: tuple):
        super().__init__(identity_id)
        self.identity_id = identity_id
        self.valid_ids = tuple(valid_ids)

    def __str__(self) -> str:
        return (f"unknown identity {self.identity_id!r}; "
                f"valid ids: {', '.join(self.valid_ids)}")
