"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Two coordinate vectors (or a ball and a point) disagree on dimension."""


class DegeneracyError(ValueError):
    """A support set is affinely dependent and cannot define a circumscribing ball."""


class IterationLimitError(RuntimeError):
    """The dual solver exceeded its iteration tripwire; indicates a numerical problem."""


class SizeGuardError(ValueError):
    """An instance is too large for brute-force enumeration."""
