"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Malformed or out-of-range input."""


class ParityViolation(InvalidInput):
    """A type D element with an odd number of negative images."""


class ResourceLimit(RuntimeError):
    """A configured size or length budget would be exceeded."""


class InternalConsistencyError(ArithmeticError):
    """A result that can only arise from an arithmetic bug."""
