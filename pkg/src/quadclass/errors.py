"""Exception types shared across the package."""


class ConsistencyError(RuntimeError):
    """Two routes that must agree disagreed; signals a bug, not bad input."""


class ResourceError(RuntimeError):
    """A table or scan would exceed the configured memory budget."""
