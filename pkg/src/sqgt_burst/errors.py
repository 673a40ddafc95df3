"""Exception types raised by the builders, decoders and file readers."""

from __future__ import annotations


class ParameterError(ValueError):
    """Invalid construction or query parameters."""


class InconsistentOutcomeError(ValueError):
    """An outcome vector that no admissible burst can produce."""


class UnverifiedConstructionError(RuntimeError):
    """A built matrix failed its distinguishability check.

    ``witness`` holds the :class:`~sqgt_burst.oracle.CollisionWitness`
    that certifies the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CollisionError(UnverifiedConstructionError):
    """Two admissible bursts share an outcome where uniqueness is required."""


class ParseError(ValueError):
    """Malformed matrix or scheme file."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(ParseError):
    """Scheme metadata that is well-formed JSON but inconsistent."""
