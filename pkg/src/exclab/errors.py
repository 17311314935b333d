"""Exception hierarchy shared by every exclab module."""


class ExclabError(Exception):
    """Base class for all library errors."""


class DomainError(ExclabError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ParseError(DomainError):
    """A window string could not be parsed.

    ``position`` is the 1-based index of the offending token, or ``None``
    when the error concerns the window as a whole.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"token {position}: {message}"
        super().__init__(message)


class ResourceLimitError(ExclabError):
    """An enumeration would exceed the configured element cap."""
