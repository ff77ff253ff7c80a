"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedError(NotImplementedError):
    """The requested parameter combination has no implementation."""


class ResourceError(RuntimeError):
    """A tolerance cannot be met within the iteration cap.

    ``achievable`` holds the tightest bracket width reachable at the cap.
    """

    def __init__(self, message, achievable=None):
        super().__init__(message)
        self.achievable = achievable
