"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Arguments are inconsistent (mismatched fields, wrong lengths, out-of-range sizes)."""


class ConstructionError(RuntimeError):
    """A code could not be constructed for the requested parameters."""
