"""Shared exception types."""


class CapabilityError(NotImplementedError):
    """The operation does not support this section or subspace class."""


class ConsistencyError(AssertionError):
    """Two independent computation routes disagreed beyond tolerance."""
