"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class EndospecError(Exception):
    """Base class for every domain error raised by the package."""


class RankMismatch(EndospecError, ValueError):
    pass


class NotInSubgroup(EndospecError, ValueError):
    pass


class InfiniteIndex(EndospecError, ValueError):
    pass


class NotInvariant(EndospecError, ValueError):
    pass


class ZeroPolynomial(EndospecError, ValueError):
    pass


class ZeroDivisor(EndospecError, ZeroDivisionError):
    pass


class BothZero(EndospecError, ValueError):
    pass


class DegreeZero(EndospecError, ValueError):
    pass


class ShapeMismatch(EndospecError, ValueError):
    pass


class RankTooSmall(EndospecError, ValueError):
    pass


class LengthBudgetExceeded(EndospecError, RuntimeError):
    def __init__(self, length: int, cap: int):
        super().__init__(f"word length {length} exceeds the cap of {cap} letters")
        self.length = length
        self.cap = cap


class PropertyViolation(EndospecError, AssertionError):
    """A mathematical guarantee failed; this always indicates a bug."""


class ParseError(EndospecError, SyntaxError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UnknownGenerator(ParseError):
    pass
