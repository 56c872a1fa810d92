"""Exception types raised across the package."""


class CapabilityError(ValueError):
    """A parameter exceeds a configured cap (M_max, k_max, table size)."""


class PoleError(ZeroDivisionError):
    """Evaluation requested exactly at a pole."""


class DomainError(ValueError):
    """Argument outside the region where an algorithm is valid."""


class AccuracyError(ArithmeticError):
    """The requested accuracy cannot be certified.

    ``partial`` carries the best value computed before giving up.
    """

    def __init__(self, message, partial=None, bound=None):
        super().__init__(message)
        self.partial = partial
        self.bound = bound
