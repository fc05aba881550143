"""Shared generators and independent brute-force oracles.

The oracles deliberately avoid the library's own data paths: matching is
plain list-slice comparison, unification enumerates span pairs position
by position, and metric counting uses bare dictionaries. They exist so
the optimized implementations have something dumb and obviously correct
to agree with.
"""

from __future__ import annotations

import random

from nerforge.core import ENTITY_TYPES, Label, TaggedSentence, Token
from nerforge.core import Dataset


def oracle_matches(
    lemmas: list[str], patterns: list[tuple[str, ...]]
) -> list[tuple[int, int]]:
    """Leftmost-longest spans (start, length) by exhaustive comparison."""
    i = 0
    spans = []
    n = len(lemmas)
    while i < n:
        best = 0
        for pattern in patterns:
            k = len(pattern)
            if 0 < k <= n - i and tuple(lemmas[i : i + k]) == pattern:
                best = max(best, k)
        if best:
            spans.append((i, best))
            i += best
        else:
            i += 1
    return spans


def oracle_unify_tags(
    general: list[Label], dictionary: list[Label]
) -> list[Label]:
    """Span-precedence merge computed the slow way.

    Spans are recovered by scanning; every pair (dict span, general
    span) is checked for any shared position.
    """

    def spans_of(tags: list[Label]) -> list[tuple[int, int]]:
        out = []
        start = None
        current = None
        for i, tag in enumerate(tags):
            if tag.is_inside and tag.entity_type == current and start is not None:
                continue
            if start is not None:
                out.append((start, i))
                start = current = None
            if not tag.is_outside:
                start, current = i, tag.entity_type
        if start is not None:
            out.append((start, len(tags)))
        return out

    g_spans = spans_of(general)
    d_spans = spans_of(dictionary)
    merged = [Label.O] * len(general)
    for s, e in g_spans:
        merged[s:e] = general[s:e]
    for s, e in d_spans:
        positions = set(range(s, e))
        clash = any(positions & set(range(gs, ge)) for gs, ge in g_spans)
        if not clash:
            merged[s:e] = dictionary[s:e]
    return merged


def oracle_evaluate(gold: Dataset, pred: Dataset) -> dict:
    """Per-label counts done with bare dicts over flattened tags."""
    gold_tags = [t for s in gold for t in s.tags]
    pred_tags = [t for s in pred for t in s.tags]
    labels = sorted(set(gold_tags) | set(pred_tags), key=lambda l: l.value)
    report = {}
    for label in labels:
        tp = sum(1 for g, p in zip(gold_tags, pred_tags) if g is label and p is label)
        support = sum(1 for g in gold_tags if g is label)
        predicted = sum(1 for p in pred_tags if p is label)
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        report[label] = (precision, recall, f1, support)
    total = len(gold_tags)
    weighted = tuple(
        sum(report[label][i] * report[label][3] for label in report) / total
        for i in range(3)
    )
    return {"per_label": report, "weighted": weighted, "total": total}


def random_iob_tags(rng: random.Random, length: int) -> list[Label]:
    """A random IOB-valid tag sequence."""
    tags: list[Label] = []
    prev: Label = Label.O
    for _ in range(length):
        choices = [Label.O] + [Label.begin(t) for t in ENTITY_TYPES]
        if not prev.is_outside:
            choices.append(Label.inside(prev.entity_type))
        tag = rng.choice(choices)
        tags.append(tag)
        prev = tag
    return tags


_SURFACE_ALPHABET = (
    "абвгдежзиклмнопрстуфхцчшщыьэюяёАБВГДЕЖЗИКЛМНОПРСТУФХЦЧШЩЫЬЭЮЯЁ"
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    ".,!?-«»()…:;"
)


def random_token(rng: random.Random) -> Token:
    length = rng.randint(1, 12)
    return Token("".join(rng.choice(_SURFACE_ALPHABET) for _ in range(length)))


def random_sentence(rng: random.Random, max_tokens: int = 20) -> TaggedSentence:
    length = rng.randint(1, max_tokens)
    tokens = tuple(random_token(rng) for _ in range(length))
    return TaggedSentence(tokens, tuple(random_iob_tags(rng, length)))


def random_dataset(rng: random.Random, sentences: int, max_tokens: int = 20) -> Dataset:
    return Dataset(tuple(random_sentence(rng, max_tokens) for _ in range(sentences)))
