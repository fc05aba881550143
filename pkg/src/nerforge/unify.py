"""Merge a general-domain annotation layer with the gazetteer layer.

Precedence is resolved at span granularity: every general-layer span is
kept verbatim, and a dictionary span survives only when its token range
does not intersect any general span. A partially overlapping dictionary
span is dropped whole rather than truncated, because a truncated span
would assert boundaries no annotator produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Label, TaggedSentence, Token, is_iob_valid, repair_iob
from .errors import AlignmentError
from .gazetteer import AnnotationLayer


@dataclass(frozen=True, slots=True)
class Span:
    """Half-open token range [start, end) of one entity mention."""

    start: int
    end: int
    entity_type: str

    def intersects(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


def layer_spans(tags: Sequence[Label]) -> list[Span]:
    """Decompose IOB tags into entity spans.

    A dangling Inside tag (invalid IOB) starts a new span, mirroring the
    repair rule, so decomposition is total.
    """
    spans: list[Span] = []
    start: int | None = None
    current: str | None = None
    for i, tag in enumerate(tags):
        continues = tag.is_inside and tag.entity_type == current and start is not None
        if continues:
            continue
        if start is not None:
            spans.append(Span(start, i, current))  # type: ignore[arg-type]
            start = current = None
        if not tag.is_outside:
            start, current = i, tag.entity_type
    if start is not None:
        spans.append(Span(start, len(tags), current))  # type: ignore[arg-type]
    return spans


def unify(
    tokens: Sequence[Token],
    general: AnnotationLayer,
    dictionary: AnnotationLayer,
) -> TaggedSentence:
    """Combine two layers with span-level precedence for the general one.

    Output tags are copied verbatim from the winning layer for each kept
    span, O elsewhere, then passed through repair (a no-op whenever both
    inputs were IOB-valid, which is asserted).
    """
    if general.origin != "general":
        raise ValueError(f"expected general layer, got origin={general.origin!r}")
    if dictionary.origin != "dictionary":
        raise ValueError(f"expected dictionary layer, got origin={dictionary.origin!r}")
    if len(general) != len(tokens) or len(dictionary) != len(tokens):
        raise AlignmentError(
            f"layer lengths {len(general)}/{len(dictionary)} do not match "
            f"{len(tokens)} tokens"
        )

    general_spans = layer_spans(general.tags)
    merged: list[Label] = [Label.O] * len(tokens)
    for span in general_spans:
        merged[span.start : span.end] = general.tags[span.start : span.end]
    for span in layer_spans(dictionary.tags):
        if not any(span.intersects(g) for g in general_spans):
            merged[span.start : span.end] = dictionary.tags[span.start : span.end]

    inputs_valid = is_iob_valid(general.tags) and is_iob_valid(dictionary.tags)
    repaired = repair_iob(merged)
    assert not inputs_valid or repaired == tuple(merged)
    return TaggedSentence(tuple(tokens), repaired)
