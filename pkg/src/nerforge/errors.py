"""Exception types shared across the toolkit."""

from __future__ import annotations


class NerforgeError(Exception):
    """Base class for all toolkit errors."""


class ConllParseError(NerforgeError):
    """Malformed CoNLL input. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str, source: str | None = None):
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}line {line_no}: {message}")
        self.line_no = line_no
        self.message = message
        self.source = source


class UnknownLabelError(NerforgeError):
    """A tag string outside the 9-label inventory."""


class SnapshotError(NerforgeError):
    """Malformed or inconsistent article-graph snapshot."""


class VocabularyError(NerforgeError):
    """Invalid vocabulary file or vocabulary construction input."""


class AlignmentError(NerforgeError):
    """Two token streams that must be identical disagree."""


class MissingLemmaError(NerforgeError):
    """A token reached the matcher without a lemma."""
