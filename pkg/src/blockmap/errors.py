"""Exception types shared across the package; the CLI maps them to exit codes."""


class DataValidationError(ValueError):
    """Coefficient data that is malformed or contradicts brute force."""


class CapExceededError(ValueError):
    """Requested size beyond the enumeration cap."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""


class OutsideAssumptionsError(ValueError):
    """Inputs for which the critical-point formulas do not apply."""
