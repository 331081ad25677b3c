"""Exception types shared across the package."""


class DomainError(ValueError):
    """Invalid input: a violated precondition or malformed domain object."""


class ResourceLimitError(RuntimeError):
    """Input exceeds a documented size cap for exact computation."""
