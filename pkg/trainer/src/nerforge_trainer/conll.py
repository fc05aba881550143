"""Minimal CoNLL I/O against the dataset toolkit's file contract.

"token<TAB>tag" lines, one blank line between sentences, UTF-8, LF,
no trailing blank line. This module is the trainer's half of the file
interface; it never imports the toolkit itself.
"""

from __future__ import annotations

from pathlib import Path

from .labels import check_label

Sentence = tuple[list[str], list[str]]  # (words, tags)


def read_conll(path: str | Path, validate_labels: bool = True) -> list[Sentence]:
    text = Path(path).read_text(encoding="utf-8")
    sentences: list[Sentence] = []
    words: list[str] = []
    tags: list[str] = []
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line:
            if words:
                sentences.append((words, tags))
                words, tags = [], []
            continue
        columns = line.split("\t")
        if len(columns) != 2:
            raise ValueError(
                f"{path}: line {line_no}: expected 'token<TAB>tag', got {line!r}"
            )
        word, tag = columns
        if not word or any(c.isspace() for c in word):
            raise ValueError(f"{path}: line {line_no}: bad token {word!r}")
        if validate_labels:
            check_label(tag, f"{path}: line {line_no}")
        words.append(word)
        tags.append(tag)
    if words:
        sentences.append((words, tags))
    return sentences


def write_conll(sentences: list[Sentence], path: str | Path) -> None:
    blocks = [
        "".join(f"{word}\t{tag}\n" for word, tag in zip(words, tags))
        for words, tags in sentences
    ]
    Path(path).write_bytes("\n".join(blocks).encode("utf-8"))
