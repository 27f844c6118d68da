"""Exception types shared across the package.

Every error the library raises derives from :class:`CtsesError`, so callers
(notably the CLI) can map any processing failure to a single exit path.
"""

from __future__ import annotations


class CtsesError(Exception):
    """Base class for all errors raised by this package."""


class LexError(CtsesError):
    """Malformed lexical input, reported with a 1-based source location."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UnterminatedStringError(LexError):
    """A string or character literal is never closed."""


class UnterminatedCommentError(LexError):
    """A block comment runs past the end of input."""


class ParseError(CtsesError):
    """Token stream falls outside the supported Java subset.

    Carries the first offending token's location and the production that was
    being parsed when the mismatch occurred.
    """

    def __init__(self, message: str, line: int, column: int, production: str) -> None:
        super().__init__(f"line {line}, column {column}: {message} (while parsing {production})")
        self.line = line
        self.column = column
        self.production = production


class EmptyCandidateError(CtsesError):
    """Candidate token stream is empty where a non-empty one is required."""


class DimensionMismatchError(CtsesError):
    """Vectors of different dimensionality were combined."""


class ZeroVectorError(CtsesError):
    """Cosine similarity is undefined for a zero vector."""


class UnnormalizedProfileError(CtsesError):
    """Weight profile components do not sum to one."""


class ManifestParseError(CtsesError):
    """Corpus manifest is malformed; message includes record context."""


class DuplicatePairIdError(ManifestParseError):
    """Two manifest records share a pair id."""


class MissingFileError(CtsesError):
    """A file referenced by a pair record does not exist."""


class SidecarParseError(CtsesError):
    """Embedding sidecar file is malformed."""


class PairScoringError(CtsesError):
    """Scoring one pair failed; wraps the underlying error with its pair id."""

    def __init__(self, pair_id: str, cause: Exception) -> None:
        super().__init__(f"pair {pair_id}: {cause}")
        self.pair_id = pair_id
        self.cause = cause
