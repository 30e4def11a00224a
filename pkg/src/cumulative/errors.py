"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class CumulativeError(Exception):
    """Base class for all errors raised by this package."""

    tag = "error"


class ParseError(CumulativeError):
    tag = "parse"

    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{line}:{column}: {message}"
        if expected:
            detail += f" (expected one of: {', '.join(sorted(expected))})"
        super().__init__(detail)


class ConfigurationError(CumulativeError):
    """A handler stack or analysis configuration is malformed."""

    tag = "configuration"


class UnhandledEffect(ConfigurationError):
    tag = "unhandled_effect"

    def __init__(self, op: str):
        self.op = op
        super().__init__(f"unhandled effect operation {op!r}")


class MissingHandlers(ConfigurationError):
    tag = "missing_handlers"

    def __init__(self, missing: list[str]):
        self.missing = missing
        super().__init__("no handler installed for: " + ", ".join(missing))


class ResumptionExpired(CumulativeError):
    tag = "resumption_expired"


class EvaluationError(CumulativeError):
    tag = "evaluation"


class Overflow(EvaluationError):
    tag = "overflow"


class AnyRejected(EvaluationError):
    tag = "any_rejected"


class CardinalityExceeded(CumulativeError):
    tag = "cardinality_exceeded"


class EnumerationTooLarge(CumulativeError):
    tag = "enumeration_too_large"
