"""Morphology-aware gazetteer annotation.

Vocabulary surface forms are tokenized and lemmatized into lemma-sequence
patterns held in a prefix tree. Matching runs over the lemma sequence of
a sentence (never raw surfaces, so inflected mentions still hit) and
selects non-overlapping spans by the leftmost-longest rule. Matched
spans are tagged B-MISC/I-MISC unless a predefined label sequence is
attached and enabled.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Literal, Mapping, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .core import Label, Token, is_iob_valid
from .errors import MissingLemmaError, VocabularyError
from .textproc import Lemmatizer, casefold_lemmatizer, tokenize
from .wikivocab import Vocabulary

log = logging.getLogger(__name__)

Origin = Literal["general", "dictionary"]


@dataclass(frozen=True, slots=True)
class AnnotationLayer:
    """One annotator's IOB tags for a sentence."""

    tags: tuple[Label, ...]
    origin: Origin

    def __len__(self) -> int:
        return len(self.tags)


@dataclass(frozen=True, slots=True)
class Payload:
    """What a terminal trie node knows about its pattern."""

    surface: str
    labels: tuple[Label, ...] | None = None


class _Node:
    __slots__ = ("children", "payload")

    def __init__(self) -> None:
        self.children: dict[str, _Node] = {}
        self.payload: Payload | None = None


class MatchIndex:
    """Prefix tree over lemma sequences.

    No lemma sequence maps to two payloads: the first insertion wins and
    later duplicates are rejected (the builder reports them).
    """

    def __init__(self) -> None:
        self._root = _Node()
        self._size = 0
        self.collisions: list[tuple[str, str]] = []
        self.skipped: list[str] = []

    def __len__(self) -> int:
        return self._size

    def add(self, lemmas: Sequence[str], payload: Payload) -> Payload | None:
        """Insert a pattern; returns the existing payload on collision."""
        node = self._root
        for lemma in lemmas:
            node = node.children.setdefault(lemma, _Node())
        if node.payload is not None:
            return node.payload
        node.payload = payload
        self._size += 1
        return None

    def longest_match(
        self, lemmas: Sequence[str], start: int
    ) -> tuple[int, Payload] | None:
        """Longest pattern matching at ``start``, as (length, payload)."""
        node = self._root
        best: tuple[int, Payload] | None = None
        for i in range(start, len(lemmas)):
            node = node.children.get(lemmas[i])
            if node is None:
                break
            if node.payload is not None:
                best = (i - start + 1, node.payload)
        return best

    def patterns(self) -> Iterator[tuple[tuple[str, ...], Payload]]:
        stack: list[tuple[tuple[str, ...], _Node]] = [((), self._root)]
        while stack:
            prefix, node = stack.pop()
            if node.payload is not None:
                yield prefix, node.payload
            for lemma, child in node.children.items():
                stack.append((prefix + (lemma,), child))


def build_index(
    vocab: Vocabulary,
    lem: Lemmatizer = casefold_lemmatizer,
    predefined: Mapping[str, Sequence[Label]] | None = None,
) -> MatchIndex:
    """Tokenize and lemmatize every vocabulary surface into the index.

    Entries reducing to an empty lemma sequence are skipped; distinct
    entries colliding on one lemma sequence keep the first and report
    the rest. ``predefined`` optionally attaches a per-entry label
    sequence (must match the entry's token count).
    """
    index = MatchIndex()
    for entry in vocab:
        lemmas = tuple(lem(t.surface) for t in tokenize(entry.surface))
        if not lemmas:
            log.warning("vocabulary entry %r tokenizes to nothing, skipped", entry.surface)
            index.skipped.append(entry.surface)
            continue
        labels: tuple[Label, ...] | None = None
        if predefined and entry.surface in predefined:
            labels = tuple(predefined[entry.surface])
            if len(labels) != len(lemmas):
                raise VocabularyError(
                    f"predefined labels for {entry.surface!r} have length "
                    f"{len(labels)}, expected {len(lemmas)}"
                )
            if not is_iob_valid(labels):
                raise VocabularyError(
                    f"predefined labels for {entry.surface!r} are not IOB-valid"
                )
        existing = index.add(lemmas, Payload(entry.surface, labels))
        if existing is not None:
            log.warning(
                "lemma pattern of %r collides with %r, first wins",
                entry.surface,
                existing.surface,
            )
            index.collisions.append((entry.surface, existing.surface))
    return index


def annotate(
    tokens: Sequence[Token],
    index: MatchIndex,
    use_predefined_labels: bool = False,
) -> AnnotationLayer:
    """Tag all leftmost-longest vocabulary matches in a lemmatized sentence.

    Scans left to right, takes the longest match starting at each
    position and resumes after it, so output spans never overlap.
    """
    lemmas = []
    for position, token in enumerate(tokens):
        if token.lemma is None:
            raise MissingLemmaError(
                f"token {position} ({token.surface!r}) has no lemma"
            )
        lemmas.append(token.lemma)

    tags: list[Label] = [Label.O] * len(tokens)
    i = 0
    while i < len(lemmas):
        match = index.longest_match(lemmas, i)
        if match is None:
            i += 1
            continue
        length, payload = match
        if use_predefined_labels and payload.labels is not None:
            tags[i : i + length] = payload.labels
        else:
            tags[i] = Label.B_MISC
            for j in range(i + 1, i + length):
                tags[j] = Label.I_MISC
        i += length
    return AnnotationLayer(tags=tuple(tags), origin="dictionary")


def load_predefined_labels(path: str | Path) -> dict[str, tuple[Label, ...]]:
    """TSV of "surface<TAB>space-separated labels" per line, e.g.
    "Иван Грозный<TAB>B-PER I-PER".
    """
    table: dict[str, tuple[Label, ...]] = {}
    for line_no, raw in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = raw.strip()
        if not line:
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise VocabularyError(
                f"{path}: line {line_no}: expected 'surface<TAB>labels'"
            )
        table[columns[0]] = tuple(Label.parse(tag) for tag in columns[1].split())
    return table


class GazetteerAnnotator(BaseEstimator):
    """sklearn-style wrapper: fit on a Vocabulary, predict layers.

    ``predict`` accepts sentences as sequences of Tokens or raw surface
    strings; tokens without lemmas are lemmatized with the annotator's
    own lemmatizer, which is also the one used for the index, keeping
    both sides of the match morphologically consistent.
    """

    def __init__(
        self,
        lemmatizer: Lemmatizer | None = None,
        use_predefined_labels: bool = False,
        predefined_labels: Mapping[str, Sequence[Label]] | None = None,
    ):
        self.lemmatizer = lemmatizer
        self.use_predefined_labels = use_predefined_labels
        self.predefined_labels = predefined_labels

    def _lem(self) -> Lemmatizer:
        return self.lemmatizer if self.lemmatizer is not None else casefold_lemmatizer

    def fit(self, X: Vocabulary, y=None) -> "GazetteerAnnotator":
        self.index_ = build_index(X, self._lem(), self.predefined_labels)
        return self

    def predict(
        self, X: Sequence[Sequence[Token | str]]
    ) -> list[AnnotationLayer]:
        check_is_fitted(self, "index_")
        lem = self._lem()
        layers = []
        for sentence in X:
            tokens = [
                token if isinstance(token, Token) else Token(token)
                for token in sentence
            ]
            tokens = [
                token if token.lemma is not None else Token(token.surface, lem(token.surface))
                for token in tokens
            ]
            layers.append(
                annotate(tokens, self.index_, self.use_predefined_labels)
            )
        return layers
