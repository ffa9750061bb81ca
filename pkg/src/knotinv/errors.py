"""Exception hierarchy shared by every module.

``DomainError`` subclasses are the errors the command line maps to exit code 2.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for every error raised on valid-but-unusable input."""

    code = "DomainError"


class MalformedPD(DomainError):
    code = "MalformedPD"


class InvalidPD(DomainError):
    code = "InvalidPD"


class NotAKnot(DomainError):
    code = "NotAKnot"


class IndexOutOfRange(DomainError, IndexError):
    code = "IndexOutOfRange"


class NotADoublePoint(DomainError):
    code = "NotADoublePoint"


class UnknownVariable(DomainError, KeyError):
    code = "UnknownVariable"

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else "unknown variable"


class PoleAtZero(DomainError, ZeroDivisionError):
    code = "PoleAtZero"


class BranchUndefined(DomainError):
    code = "BranchUndefined"


class IncompleteGrid(DomainError):
    code = "IncompleteGrid"


class TooFewValues(DomainError):
    code = "TooFewValues"


class DiagramTooLarge(DomainError):
    code = "DiagramTooLarge"


class DegenerateG(DomainError):
    code = "DegenerateG"


class GridBudgetExceeded(DomainError):
    code = "GridBudgetExceeded"


class DescriptorSyntaxError(DomainError, SyntaxError):
    """Raised by the descriptor and scalar parsers; ``pos`` is a 0-based offset."""

    code = "SyntaxError"

    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at position {pos}")
        self.text = text
        self.pos = pos

    def __str__(self) -> str:
        return self.args[0]


class MalformedEntry(DomainError):
    code = "MalformedEntry"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class DuplicateName(DomainError):
    code = "DuplicateName"


class UnknownKnot(DomainError, KeyError):
    code = "UnknownKnot"

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown knot"
