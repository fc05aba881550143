"""Sentence segmentation, tokenization and pluggable lemmatization.

The tokenizer is deliberately fixed rather than pluggable: vocabulary
entries and corpus text must be tokenized identically or gazetteer
matching silently fails.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Callable, Iterable

from .core import Token

# A lemmatizer is any total, deterministic, case-normalizing
# surface -> lemma function.
Lemmatizer = Callable[[str], str]

SENTENCE_PUNCT = frozenset(".!?…")

_WORD_BEFORE = re.compile(r"(\w+)\Z", re.UNICODE)


def casefold_lemmatizer(surface: str) -> str:
    """Fallback lemmatizer: the case-folded surface itself."""
    return surface.casefold()


class LemmaTable:
    """Table-driven lemmatizer: case-folded surface -> lemma lookup.

    Misses fall back to the case-folded surface, so the table is total.
    One surface maps to one lemma; contextual disambiguation of ambiguous
    word forms is out of scope.
    """

    def __init__(self, entries: dict[str, str] | None = None):
        self.entries = {
            surface.casefold(): lemma for surface, lemma in (entries or {}).items()
        }

    def __call__(self, surface: str) -> str:
        folded = surface.casefold()
        return self.entries.get(folded, folded)

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def load(cls, path: str | Path) -> "LemmaTable":
        """Read a UTF-8 TSV of "surface<TAB>lemma" pairs, one per line."""
        entries: dict[str, str] = {}
        for line_no, raw in enumerate(
            Path(path).read_text(encoding="utf-8").splitlines(), start=1
        ):
            line = raw.strip()
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 2:
                raise ValueError(
                    f"{path}: line {line_no}: expected 'surface<TAB>lemma'"
                )
            entries[columns[0]] = columns[1]
        return cls(entries)


def load_abbreviations(path: str | Path) -> frozenset[str]:
    """Plain-text abbreviation list, one item per line, no trailing period."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(line.strip().casefold() for line in lines if line.strip())


def segment_sentences(
    text: str, abbreviations: Iterable[str] = ()
) -> list[str]:
    """Split text into sentences.

    A boundary is a sentence-final punctuation mark followed by
    whitespace and an uppercase letter, or by the end of input. A period
    directly after a known abbreviation never ends a sentence.
    """
    abbrev = {a.casefold() for a in abbreviations}
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in SENTENCE_PUNCT:
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            boundary = j == n or (j > i + 1 and text[j].isupper())
            if boundary and text[i] == "." and abbrev:
                match = _WORD_BEFORE.search(text, start, i)
                if match and match.group(1).casefold() in abbrev:
                    boundary = False
            if boundary:
                chunk = text[start : i + 1].strip()
                if chunk:
                    sentences.append(chunk)
                start = i + 1
                i = j
                continue
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def tokenize(sentence: str) -> list[Token]:
    """Split on whitespace, then peel leading/trailing punctuation off
    each chunk into tokens of their own. Word-internal punctuation
    (hyphens, apostrophes) stays put.
    """
    tokens: list[Token] = []
    for chunk in sentence.split():
        leading: list[str] = []
        trailing: list[str] = []
        while chunk and not chunk[0].isalnum():
            leading.append(chunk[0])
            chunk = chunk[1:]
        while chunk and not chunk[-1].isalnum():
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        tokens.extend(Token(ch) for ch in leading)
        if chunk:
            tokens.append(Token(chunk))
        tokens.extend(Token(ch) for ch in reversed(trailing))
    return tokens


def lemmatize(tokens: list[Token], lem: Lemmatizer) -> list[Token]:
    """Return the same tokens with lemma fields filled."""
    return [Token(t.surface, lem(t.surface)) for t in tokens]
