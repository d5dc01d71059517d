"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class ComplroverError(Exception):
    """Base class for every error raised on bad input."""


class InputSyntaxError(ComplroverError):
    """Malformed input text. Always carries a 1-based line number."""

    def __init__(self, reason: str, line: int, source: str | None = None):
        self.reason = reason
        self.line = line
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason}")


class BlankNodeRejected(InputSyntaxError):
    pass


class ReservedNamespace(InputSyntaxError):
    pass


class EmptyPattern(InputSyntaxError):
    pass


class UnsafeQuery(ComplroverError):
    pass


class IllFormedConstruct(ComplroverError):
    pass


class NotAnInterpretation(ComplroverError):
    pass


class UniverseTooLarge(ComplroverError):
    pass
