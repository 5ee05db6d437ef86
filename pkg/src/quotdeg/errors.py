"""Exceptions shared across the package."""


class RingMismatchError(ValueError):
    """Operands live in different rings."""


class DomainError(ValueError):
    """Arguments outside an operation's stated domain."""


class CrossCheckError(RuntimeError):
    """Two supposedly equal computation routes disagreed.

    Raised by every dual-route operation (degree pipelines, coefficient
    sums, localisation draws).  It signals a convention corruption, not a
    bad input, so callers should abort rather than retry.
    """
