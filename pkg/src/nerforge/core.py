"""Domain types: IOB labels, tokens, tagged sentences and datasets.

The label inventory is fixed at 9 values: O plus B-/I- for the four
entity types LOC, MISC, ORG and PER.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, unique
from typing import Iterator, Sequence

from .errors import UnknownLabelError

ENTITY_TYPES = ("LOC", "MISC", "ORG", "PER")


@unique
class Label(Enum):
    """One IOB tag. String form is exactly "O", "B-<TYPE>" or "I-<TYPE>"."""

    B_LOC = "B-LOC"
    B_MISC = "B-MISC"
    B_ORG = "B-ORG"
    B_PER = "B-PER"
    I_LOC = "I-LOC"
    I_MISC = "I-MISC"
    I_ORG = "I-ORG"
    I_PER = "I-PER"
    O = "O"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Label":
        try:
            return cls(text)
        except ValueError:
            raise UnknownLabelError(f"unknown tag {text!r}") from None

    @classmethod
    def begin(cls, entity_type: str) -> "Label":
        return cls(f"B-{entity_type}")

    @classmethod
    def inside(cls, entity_type: str) -> "Label":
        return cls(f"I-{entity_type}")

    @property
    def prefix(self) -> str:
        return "O" if self is Label.O else self.value[0]

    @property
    def entity_type(self) -> str | None:
        return None if self is Label.O else self.value[2:]

    @property
    def is_outside(self) -> bool:
        return self is Label.O

    @property
    def is_begin(self) -> bool:
        return self.value.startswith("B-")

    @property
    def is_inside(self) -> bool:
        return self.value.startswith("I-")

    def as_begin(self) -> "Label":
        """The B- label of the same entity type; identity on O and B-."""
        if self.is_inside:
            return Label.begin(self.value[2:])
        return self


@dataclass(frozen=True, slots=True)
class Token:
    """A surface token, optionally carrying its lemma."""

    surface: str
    lemma: str | None = None

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if any(ch.isspace() for ch in self.surface):
            raise ValueError(f"token surface contains whitespace: {self.surface!r}")


def iob_violations(tags: Sequence[Label]) -> list[int]:
    """Positions whose Inside tag is not preceded by B/I of the same type."""
    bad = []
    prev: Label = Label.O
    for i, tag in enumerate(tags):
        if tag.is_inside and not (
            not prev.is_outside and prev.entity_type == tag.entity_type
        ):
            bad.append(i)
        prev = tag
    return bad


def is_iob_valid(tags: Sequence[Label]) -> bool:
    return not iob_violations(tags)


def repair_iob(tags: Sequence[Label]) -> tuple[Label, ...]:
    """Promote every dangling Inside tag to Begin.

    Idempotent; never touches O tags or changes an entity type, so the
    set of non-O positions is preserved.
    """
    out: list[Label] = []
    prev: Label = Label.O
    for tag in tags:
        if tag.is_inside and not (
            not prev.is_outside and prev.entity_type == tag.entity_type
        ):
            tag = tag.as_begin()
        out.append(tag)
        prev = tag
    return tuple(out)


@dataclass(frozen=True, slots=True)
class TaggedSentence:
    """A token sequence with one IOB tag per token.

    Length agreement is enforced; IOB validity is not, because parsed
    files may legitimately contain dangling Inside tags (they are
    flagged, and repair is an explicit separate step).
    """

    tokens: tuple[Token, ...]
    tags: tuple[Label, ...]

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.tags):
            raise ValueError(
                f"{len(self.tokens)} tokens but {len(self.tags)} tags"
            )

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    @property
    def is_iob_valid(self) -> bool:
        return is_iob_valid(self.tags)

    def iob_violations(self) -> list[int]:
        return iob_violations(self.tags)

    def is_all_outside(self) -> bool:
        return all(tag.is_outside for tag in self.tags)


@dataclass(frozen=True, slots=True)
class Dataset:
    """An ordered collection of tagged sentences.

    ``provenance`` carries an optional source tag per sentence; it is
    bookkeeping only and excluded from equality.
    """

    sentences: tuple[TaggedSentence, ...]
    provenance: tuple[str | None, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not self.provenance:
            object.__setattr__(self, "provenance", (None,) * len(self.sentences))
        elif len(self.provenance) != len(self.sentences):
            raise ValueError("provenance length must match sentence count")

    @classmethod
    def of(
        cls,
        sentences: Sequence[TaggedSentence],
        provenance: Sequence[str | None] | str | None = None,
    ) -> "Dataset":
        sents = tuple(sentences)
        if provenance is None:
            return cls(sents)
        if isinstance(provenance, str):
            return cls(sents, (provenance,) * len(sents))
        return cls(sents, tuple(provenance))

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self) -> Iterator[TaggedSentence]:
        return iter(self.sentences)

    def __getitem__(self, index: int) -> TaggedSentence:
        return self.sentences[index]

    def token_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    def label_counts(self) -> dict[Label, int]:
        counts = {label: 0 for label in Label}
        for sentence in self.sentences:
            for tag in sentence.tags:
                counts[tag] += 1
        return counts
