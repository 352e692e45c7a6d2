"""Exception hierarchy shared by every module."""


class AbmodError(Exception):
    """Base class for all errors raised by abmod."""


class InputError(AbmodError, ValueError):
    """Malformed or out-of-contract input."""


class ParseError(InputError):
    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


class ResourceError(AbmodError):
    """A configured budget (enumeration, DNF size, search nodes) was exhausted."""


class ContextMismatchError(AbmodError, ValueError):
    """Elements from two different ring contexts were combined."""
