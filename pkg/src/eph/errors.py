"""Exception and warning types shared by all modules."""


class InvalidInput(ValueError):
    """Arguments violate a documented precondition."""


class DomainError(ValueError):
    """A value falls outside the domain where an operation is defined."""


class DegenerateError(ArithmeticError):
    """A construction collapses (zero matrix, rank deficiency, no solution)."""


class PrecisionWarning(UserWarning):
    """A numerical procedure did not reach its requested accuracy."""
