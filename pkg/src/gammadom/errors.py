"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to reach its tolerance."""


class UsageError(ValueError):
    """Bad CLI flags or configuration (exit code 2)."""


class DataError(ValueError):
    """Malformed input data or draw files (exit code 3)."""
