"""Exception types shared across the package.

The CLI maps these onto exit codes: parse errors -> 1, resource caps -> 2,
internal invariant violations -> 3.
"""

from __future__ import annotations


class NmrError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(NmrError):
    """Malformed input text; carries a 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class VocabularyMismatchError(NmrError):
    """Two values over different vocabularies were combined."""


class ResourceCapError(NmrError):
    """An enumeration would exceed its configured size cap."""


class InternalInvariantError(NmrError):
    """A structural invariant the algorithms rely on was violated.

    Seeing this exception means a bug, not bad input: the fixpoint
    chains are provably monotone, so a non-increasing chain (or an
    inconsistent world-status pair) cannot arise from any theory.
    """
