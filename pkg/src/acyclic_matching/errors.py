"""Exception hierarchy shared by every module.

Each class carries the CLI exit code that reports it.
"""

from __future__ import annotations


class AcyclicMatchingError(Exception):
    exit_code = 1


class ValidationError(AcyclicMatchingError, ValueError):
    """Malformed graph, matching, formula or argument."""

    exit_code = 1


class ParseError(AcyclicMatchingError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ClassViolationError(AcyclicMatchingError):
    """The input graph lies outside the class an algorithm requires."""

    exit_code = 3

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        self.witness = tuple(witness)
        super().__init__(message)


class NotCographError(ClassViolationError):
    """Raised with an induced P4 (in path order) as the witness."""


class NotTwoP3FreeError(ClassViolationError):
    """Raised with two vertex-disjoint induced P3s as the witness."""


class VerificationError(AcyclicMatchingError):
    """A structural claim about a reduction instance did not hold."""

    exit_code = 4

    def __init__(self, claim: str, message: str):
        self.claim = claim
        super().__init__(f"{claim}: {message}")


class ResourceLimitError(AcyclicMatchingError):
    """An exhaustive routine was asked to go beyond its size guard."""

    exit_code = 5


class GenerationError(AcyclicMatchingError):
    exit_code = 1
