"""Existence of (r, k)-type pairs (eps, F(eps)) in finite fields: arithmetic, exhaustive oracles and criteria."""
from .errors import CapabilityError, DomainError, PreconditionError, UnknownOrderError
from .ffield import FieldCtx

__all__ = ["FieldCtx", "DomainError", "PreconditionError", "UnknownOrderError", "CapabilityError"]
__version__ = "0.1.0"
