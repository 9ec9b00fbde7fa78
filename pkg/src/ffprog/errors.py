"""Exception types shared across the library."""


class FFProgError(Exception):
    """Base class for all library errors."""


class CompositeModulus(FFProgError):
    """The requested modulus is not prime."""


class OddModulusRequired(FFProgError):
    """The operation needs an odd prime (it divides by 2 internally)."""


class OrderDoesNotDivide(FFProgError):
    """Requested character order does not divide p - 1."""


class BudgetExceeded(FFProgError):
    """Estimated elementary-term count exceeds the global budget."""


class ContextMismatch(FFProgError):
    """Functions passed to one operator live over different fields."""


class IndexOutOfRange(FFProgError):
    """Slot index lies outside the configuration."""


class DimensionBudget(FFProgError):
    """Linear-form evaluation grid is too large."""


class InvalidSpec(FFProgError):
    """Progression spec violates the degree condition.

    `witness` holds integer coefficients of a combination with degree < m.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroPhase(FFProgError):
    """The counterexample phase multiplier must be nonzero."""


class PrincipalCharacter(FFProgError):
    """The principal character is excluded from this bound."""


class DegenerateConfiguration(FFProgError):
    """All sample points coincide."""


class BoundViolation(FFProgError):
    """A theorem-backed numerical bound failed.

    `report` (if set) is the SweepReport assembled up to the failure.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ParseError(FFProgError):
    """Spec-string syntax error, with the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class IoFailure(FFProgError):
    """A report could not be written."""
