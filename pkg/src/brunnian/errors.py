"""Exception types shared across the package."""


class BrunnianError(Exception):
    """Base class for errors raised by this package."""


class DomainError(BrunnianError, ValueError):
    """An argument is outside the domain where the operation is defined."""


class ParseError(BrunnianError, ValueError):
    """Malformed slice program or PD text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RewriteError(BrunnianError):
    """A diagram rewrite was requested where its local pattern does not occur."""


class ResourceError(BrunnianError):
    """A computation would exceed its configured size limit."""
