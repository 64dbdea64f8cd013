"""Exception hierarchy. Every error raised on bad input derives from
`DegenError`, which the CLI maps to exit code 2."""


class DegenError(ValueError):
    pass


class InvalidRankError(DegenError):
    pass


class DomainError(DegenError):
    pass


class ConeMembershipError(DegenError):
    pass


class PreconditionError(DegenError):
    pass


class UnsupportedWeightError(DegenError):
    pass


class InvariantViolation(RuntimeError):
    """Two independent computations disagreed. Always a bug, never bad input."""
