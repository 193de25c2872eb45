class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ConvergenceError(RuntimeError):
    """A truncated state did not reach the requested tail tolerance."""
