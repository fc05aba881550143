"""Bit-exact CoNLL file I/O.

One "token<TAB>tag" pair per line, one blank line between sentences.
Output is UTF-8 with LF line endings, no BOM and no trailing blank line,
so ``parse_conll(write_conll(ds)) == ds`` holds exactly.
"""

from __future__ import annotations

import logging
from pathlib import Path

from .core import Dataset, Label, TaggedSentence, Token
from .errors import ConllParseError, UnknownLabelError

log = logging.getLogger(__name__)


def parse_conll(data: bytes | str) -> Dataset:
    """Parse CoNLL text into a Dataset, preserving file order.

    Sentences violating IOB validity (a dangling Inside tag) are accepted
    and flagged with a warning; repairing them is an explicit separate
    step (:func:`nerforge.core.repair_iob`).
    """
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data
    if text.startswith("﻿"):
        text = text[1:]

    sentences: list[TaggedSentence] = []
    tokens: list[Token] = []
    tags: list[Label] = []
    start_line = 1

    def flush() -> None:
        if not tokens:
            return
        sentence = TaggedSentence(tuple(tokens), tuple(tags))
        if not sentence.is_iob_valid:
            log.warning(
                "sentence %d (line %d): dangling Inside tag at token(s) %s",
                len(sentences),
                start_line,
                sentence.iob_violations(),
            )
        sentences.append(sentence)
        tokens.clear()
        tags.clear()

    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if not line:
            flush()
            start_line = line_no + 1
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise ConllParseError(
                line_no, f"expected 2 tab-separated columns, got {len(columns)}"
            )
        surface, tag_text = columns
        try:
            token = Token(surface)
        except ValueError as exc:
            raise ConllParseError(line_no, str(exc)) from None
        try:
            tag = Label.parse(tag_text)
        except UnknownLabelError as exc:
            raise ConllParseError(line_no, str(exc)) from None
        tokens.append(token)
        tags.append(tag)
    flush()

    return Dataset(tuple(sentences))


def write_conll(ds: Dataset) -> bytes:
    """Serialize a Dataset; exact inverse of :func:`parse_conll`."""
    blocks = [
        "".join(f"{token.surface}\t{tag}\n" for token, tag in zip(s.tokens, s.tags))
        for s in ds
    ]
    return "\n".join(blocks).encode("utf-8")


def load_conll(path: str | Path, provenance: str | None = None) -> Dataset:
    try:
        ds = parse_conll(Path(path).read_bytes())
    except ConllParseError as exc:
        raise ConllParseError(exc.line_no, exc.message, source=str(path)) from None
    if provenance is not None:
        return Dataset.of(ds.sentences, provenance)
    return ds


def save_conll(ds: Dataset, path: str | Path) -> None:
    Path(path).write_bytes(write_conll(ds))
