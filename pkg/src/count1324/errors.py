"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A configured resource budget (memory cap, oracle cap) was exceeded.

    ``partial`` carries whatever results were completed before the limit hit,
    so callers can report a usable prefix instead of nothing.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
