"""Shared exception types."""


class FormatError(ValueError):
    """Malformed input file or out-of-range identifier."""


class SizeLimitError(RuntimeError):
    """An exact solver was asked for an instance above its size limit."""


class InternalCheckError(RuntimeError):
    """A property that is guaranteed by construction failed at runtime."""
