"""Shared exception types.

DomainError: the input violates a documented precondition (wrong parity,
failed hypothesis, excluded pair, ...). ResourceError: the input is legal
but past the configured desk-scale bounds; campaigns record these per case
instead of aborting.
"""


class DomainError(ValueError):
    pass


class ResourceError(RuntimeError):
    pass


class InvariantError(AssertionError):
    """A computed value contradicts a proved property; signals a bug."""


class UnsupportedOperationError(NotImplementedError):
    """The request is meaningful but outside what this engine computes."""
