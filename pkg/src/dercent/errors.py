"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class ResourceLimitError(RuntimeError):
    """A guard tripped (degree cap, monomial-count cap) before blowup."""


class PreconditionError(ValueError):
    """A documented operation precondition was violated by the caller."""


class RegistryError(ValueError):
    """A kernel-generator registry entry is missing or broken."""


class InternalInconsistencyError(RuntimeError):
    """A computation that is guaranteed solvable failed; indicates a bug."""


class NotDivisibleError(ArithmeticError):
    """Exact polynomial division was requested for a non-factor."""
