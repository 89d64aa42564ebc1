"""Exception hierarchy shared across the package."""

from __future__ import annotations

__all__ = [
    "ValueRankError",
    "ParseError",
    "ValidationError",
    "AllZeroWeightsError",
    "EmptyInputError",
    "MissingDimensionError",
    "UndefinedMetricError",
]


class ValueRankError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ValueRankError):
    """Malformed input syntax (bad JSON, bad CSV row)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ValueRankError):
    """Well-formed input that violates a data invariant."""


class AllZeroWeightsError(ValueRankError):
    """All four slider weights are zero; at least one must be non-zero."""


class EmptyInputError(ValueRankError):
    """An operation that needs at least one value received none."""


class MissingDimensionError(ValueRankError):
    """A dataset lacks a dimension that carries non-zero weight."""


class UndefinedMetricError(ValueRankError):
    """The metric is undefined for the given input (all-zero relevance)."""
