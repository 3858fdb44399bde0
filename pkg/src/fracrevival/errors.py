"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Arguments violate a documented precondition (bad dimension, norm, range)."""


class ResourceLimitError(RuntimeError):
    """Request exceeds a hard size guard and was refused instead of thrashing."""
