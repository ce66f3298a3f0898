"""Exception types shared across the package."""


class RangeLimitError(ValueError):
    """An enumeration parameter is outside the supported range."""


class ChainError(ValueError):
    """Input that was required to be a chain is not one."""


class DegenerateInputError(ValueError):
    """Geometric input is degenerate (e.g. coincident points)."""
