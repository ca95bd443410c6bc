"""Exception hierarchy shared by the simulator modules."""

from __future__ import annotations


class TlSimError(Exception):
    """Base class for every error raised by tlsim."""


# topology
class UnknownNode(TlSimError, KeyError):
    pass


class NoPath(TlSimError):
    pass


class MissingHierarchy(TlSimError, ValueError):
    pass


class EmptyAgentList(TlSimError, ValueError):
    pass


# agents
class UnclassifiablePair(TlSimError):
    """Only the target holds labels; the taxonomy has no category for it."""


class SignatureLengthMismatch(TlSimError, ValueError):
    pass


class EmptyDomain(TlSimError, ValueError):
    pass


# costmodel
class InvalidParams(TlSimError, ValueError):
    pass


class NonPositiveBandwidth(TlSimError, ValueError):
    pass


class NonPositiveDelay(TlSimError, ValueError):
    pass


class ZeroBaselinePerformance(TlSimError, ValueError):
    pass


class ZeroTrainingTime(TlSimError, ValueError):
    pass


# governance
class UnknownAgent(TlSimError, KeyError):
    pass


# scheduler
class NoFutureWindow(TlSimError):
    pass


class WrongClass(TlSimError, ValueError):
    pass


# repository
class DuplicateIdWithDifferentContent(TlSimError):
    pass


# quantization
class UnknownScheme(TlSimError, KeyError):
    pass


# scenario loading
class ValidationError(TlSimError):
    """Scenario failed validation; ``issues`` holds ``(field_path, message)`` pairs."""

    def __init__(self, issues: list[tuple[str, str]]):
        self.issues = list(issues)
        lines = [f"{path}: {msg}" for path, msg in self.issues]
        super().__init__("; ".join(lines) if lines else "invalid scenario")


class ParseError(TlSimError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
