"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(DomainError):
    """An operation was called on input it does not accept (e.g. a partial factorization)."""


class UnknownOrderError(PreconditionError):
    """A multiplicative order cannot be decided because q^n - 1 is only partially factored."""


class CapabilityError(RuntimeError):
    """The instance is too large for an exhaustive or table-driven code path."""
