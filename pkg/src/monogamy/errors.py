"""Exception types and size limits shared by every module."""

from __future__ import annotations

import os


class MonogamyError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MonogamyError, ValueError):
    """Malformed input: bad graph file, inconsistent behavior, etc."""


class SizeLimitError(MonogamyError):
    """An exact exponential algorithm was asked to run on too large an input."""


class NotChordalError(ValidationError):
    """Raised by constructions that require a chordal graph."""


class InconsistentBehaviorError(ValidationError):
    """Two contexts disagree on the marginal of their shared vertices."""

    def __init__(self, message: str, contexts: tuple = (), assignment: tuple = ()):
        super().__init__(message)
        self.contexts = contexts
        self.assignment = assignment


def size_limit(default: int) -> int:
    """Return the effective size cap; ``MONOGAMY_SIZE_LIMIT`` overrides *default*."""
    raw = os.environ.get("MONOGAMY_SIZE_LIMIT")
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"MONOGAMY_SIZE_LIMIT must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValidationError("MONOGAMY_SIZE_LIMIT must be positive")
    return value


def check_size(n: int, default: int, what: str) -> None:
    limit = size_limit(default)
    if n > limit:
        raise SizeLimitError(f"{what}: {n} vertices exceeds the limit of {limit}")
