"""Entity vocabulary construction from a Wikipedia category-graph snapshot.

The pipeline is: seeded breadth-first traversal over subcategory edges,
entity harvesting from article titles and interlinks, frequency-based
filtering, and an optional merge of externally sourced surface forms.
Snapshots are local JSON-Lines files; nothing here touches the network.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from sklearn.base import BaseEstimator

from .errors import SnapshotError, VocabularyError

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CategoryNode:
    name: str
    subcategories: tuple[str, ...]
    articles: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class ArticleNode:
    title: str
    summary: str
    body: str
    categories: tuple[str, ...]
    interlinks: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class ArticleGraph:
    """Immutable snapshot of categories and articles.

    References that do not resolve within the snapshot never crash
    anything; they are collected into the dangling report at load time.
    """

    categories: dict[str, CategoryNode]
    articles: dict[str, ArticleNode]
    dangling_categories: frozenset[str] = frozenset()
    dangling_articles: frozenset[str] = frozenset()


@dataclass(frozen=True, slots=True)
class RawEntity:
    """A harvested candidate entity before filtering."""

    title: str
    interlink_freq: int
    categories: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.title:
            raise ValueError("entity title must be non-empty")
        if self.interlink_freq < 0:
            raise ValueError("interlink_freq must be >= 0")


@dataclass(frozen=True, slots=True)
class VocabEntry:
    """One vocabulary entity.

    ``interlink_freq`` is None for externally merged entries, which
    carry no interlink statistics and bypass the frequency filters.
    ``lemmas``, once computed, aligns 1:1 with the tokenization of the
    surface form.
    """

    surface: str
    lemmas: tuple[str, ...] = ()
    interlink_freq: int | None = None
    categories: tuple[str, ...] = ()
    source: str = "wiki"

    def __post_init__(self) -> None:
        if self.source not in ("wiki", "external"):
            raise ValueError(f"unknown source {self.source!r}")


@dataclass(frozen=True)
class Vocabulary:
    """Vocabulary entries, unique by surface form, in stable order."""

    entries: tuple[VocabEntry, ...] = ()
    _index: dict[str, VocabEntry] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        for entry in self.entries:
            if entry.surface in self._index:
                raise VocabularyError(f"duplicate surface {entry.surface!r}")
            self._index[entry.surface] = entry

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[VocabEntry]:
        return iter(self.entries)

    def __contains__(self, surface: str) -> bool:
        return surface in self._index

    def get(self, surface: str) -> VocabEntry | None:
        return self._index.get(surface)


def load_snapshot(path: str | Path) -> ArticleGraph:
    """Materialize an ArticleGraph from a JSON-Lines snapshot file.

    Records are {"kind": "category", "name", "subcategories", "articles"}
    or {"kind": "article", "title", "summary", "body", "categories",
    "interlinks"}. Duplicate names/titles and unknown kinds are errors;
    unresolved references go into the dangling report.
    """
    categories: dict[str, CategoryNode] = {}
    articles: dict[str, ArticleNode] = {}
    with open(path, "rb") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise SnapshotError(f"{path}: line {line_no}: {exc}") from None
            kind = record.get("kind")
            if kind == "category":
                name = record.get("name")
                if not name:
                    raise SnapshotError(f"{path}: line {line_no}: category without name")
                if name in categories:
                    raise SnapshotError(
                        f"{path}: line {line_no}: duplicate category {name!r}"
                    )
                categories[name] = CategoryNode(
                    name=name,
                    subcategories=tuple(record.get("subcategories", ())),
                    articles=tuple(record.get("articles", ())),
                )
            elif kind == "article":
                title = record.get("title")
                if not title:
                    raise SnapshotError(f"{path}: line {line_no}: article without title")
                if title in articles:
                    raise SnapshotError(
                        f"{path}: line {line_no}: duplicate article {title!r}"
                    )
                articles[title] = ArticleNode(
                    title=title,
                    summary=record.get("summary", ""),
                    body=record.get("body", ""),
                    categories=tuple(record.get("categories", ())),
                    interlinks=tuple(record.get("interlinks", ())),
                )
            else:
                raise SnapshotError(
                    f"{path}: line {line_no}: unknown record kind {kind!r}"
                )

    dangling_categories: set[str] = set()
    dangling_articles: set[str] = set()
    for category in categories.values():
        dangling_categories.update(
            sub for sub in category.subcategories if sub not in categories
        )
        dangling_articles.update(
            title for title in category.articles if title not in articles
        )
    for article in articles.values():
        dangling_categories.update(
            cat for cat in article.categories if cat not in categories
        )
        dangling_articles.update(
            link for link in article.interlinks if link not in articles
        )
    if dangling_categories or dangling_articles:
        log.info(
            "snapshot %s: %d dangling category and %d dangling article references",
            path,
            len(dangling_categories),
            len(dangling_articles),
        )
    return ArticleGraph(
        categories=categories,
        articles=articles,
        dangling_categories=frozenset(dangling_categories),
        dangling_articles=frozenset(dangling_articles),
    )


def traverse(
    graph: ArticleGraph, seeds: Sequence[str], depth: int = 1
) -> list[str]:
    """Breadth-first walk over subcategory edges from the seed categories.

    Every category reached within ``depth`` steps contributes its member
    articles. Only subcategory edges expand the frontier; article
    interlinks do not (unchecked cross-references blow the result up).
    Returns a sorted list, so the result is deterministic and independent
    of seed ordering.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not seeds:
        raise ValueError("at least one seed category is required")
    present = [seed for seed in seeds if seed in graph.categories]
    for seed in seeds:
        if seed not in graph.categories:
            log.warning("seed category %r not in snapshot, skipped", seed)
    if not present:
        raise SnapshotError("none of the seed categories exist in the snapshot")

    visited: set[str] = set(present)
    frontier = deque((seed, 0) for seed in sorted(set(present)))
    titles: set[str] = set()
    while frontier:
        name, dist = frontier.popleft()
        node = graph.categories[name]
        for title in node.articles:
            if title in graph.articles:
                titles.add(title)
            # dangling memberships are already in the load-time report
        if dist < depth:
            for sub in node.subcategories:
                if sub in graph.categories and sub not in visited:
                    visited.add(sub)
                    frontier.append((sub, dist + 1))
    return sorted(titles)


def harvest_entities(graph: ArticleGraph, articles: Iterable[str]) -> list[RawEntity]:
    """Collect candidate entities from traversed articles.

    Every traversed title and every title occurring as an interlink in a
    traversed article becomes an entity; the interlink frequency counts
    total occurrences across all traversed articles. Categories come
    from the entity's own article record when the snapshot has one.
    """
    traversed = list(articles)
    freq: Counter[str] = Counter()
    for title in traversed:
        node = graph.articles.get(title)
        if node is None:
            raise VocabularyError(f"traversed article {title!r} not in snapshot")
        freq.update(node.interlinks)

    entities = []
    for title in sorted(set(traversed) | set(freq)):
        node = graph.articles.get(title)
        entities.append(
            RawEntity(
                title=title,
                interlink_freq=freq.get(title, 0),
                categories=node.categories if node is not None else (),
            )
        )
    return entities


def category_frequencies(raw: Iterable[RawEntity]) -> Counter[str]:
    """Global table: category name -> number of entities listing it."""
    table: Counter[str] = Counter()
    for entity in raw:
        table.update(set(entity.categories))
    return table


def filter_vocabulary(
    raw: Sequence[RawEntity],
    min_interlink: int = 2,
    min_category: int = 3,
    seed_words: Sequence[str] = (),
) -> Vocabulary:
    """Apply the frequency and seed-word filters to harvested entities.

    An entity survives iff its interlink frequency is at least
    ``min_interlink`` AND the most widely shared of its categories is
    listed by at least ``min_category`` entities. With seed words given,
    at least one category name must additionally contain one of them as
    a case-insensitive substring.
    """
    if min_interlink < 0 or min_category < 0:
        raise ValueError("thresholds must be >= 0")
    table = category_frequencies(raw)
    folded_seeds = [w.casefold() for w in seed_words if w]

    kept: dict[str, VocabEntry] = {}
    for entity in raw:
        if entity.interlink_freq < min_interlink:
            continue
        category_freq = max(
            (table[c] for c in entity.categories), default=0
        )
        if category_freq < min_category:
            continue
        if folded_seeds:
            names = [c.casefold() for c in entity.categories]
            if not any(seed in name for seed in folded_seeds for name in names):
                continue
        if entity.title not in kept:
            kept[entity.title] = VocabEntry(
                surface=entity.title,
                interlink_freq=entity.interlink_freq,
                categories=entity.categories,
                source="wiki",
            )
    return Vocabulary(tuple(kept[surface] for surface in sorted(kept)))


def merge_external_entities(
    vocab: Vocabulary, extra: Sequence[str]
) -> Vocabulary:
    """Append externally sourced surface forms not already present.

    External entries carry no interlink statistics (frequency None) and
    are exempt from the frequency filters by construction: they are
    merged after filtering.
    """
    entries = list(vocab.entries)
    seen = {entry.surface for entry in entries}
    for surface in extra:
        if not surface:
            continue
        if surface in seen:
            log.warning("external entity %r already in vocabulary, skipped", surface)
            continue
        entries.append(VocabEntry(surface=surface, source="external"))
        seen.add(surface)
    return Vocabulary(tuple(entries))


def write_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    """JSON-Lines vocabulary serialization."""
    with open(path, "w", encoding="utf-8") as handle:
        for entry in vocab:
            handle.write(
                json.dumps(
                    {
                        "surface": entry.surface,
                        "lemmas": list(entry.lemmas),
                        "interlink_freq": entry.interlink_freq,
                        "categories": list(entry.categories),
                        "source": entry.source,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def load_vocabulary(path: str | Path) -> Vocabulary:
    entries = []
    with open(path, "r", encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                entries.append(
                    VocabEntry(
                        surface=record["surface"],
                        lemmas=tuple(record.get("lemmas", ())),
                        interlink_freq=record.get("interlink_freq"),
                        categories=tuple(record.get("categories", ())),
                        source=record.get("source", "wiki"),
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                raise VocabularyError(f"{path}: line {line_no}: {exc}") from None
    try:
        return Vocabulary(tuple(entries))
    except VocabularyError as exc:
        raise VocabularyError(f"{path}: {exc}") from None


def load_lines(path: str | Path) -> list[str]:
    """Plain UTF-8 text, one item per line; blank lines ignored."""
    return [
        line.strip()
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]


class VocabularyBuilder(BaseEstimator):
    """Estimator wrapper over the vocabulary pipeline.

    ``fit`` takes an ArticleGraph and exposes the traversed article
    titles, the harvested raw entities and the final vocabulary as
    fitted attributes.
    """

    def __init__(
        self,
        seeds: Sequence[str] = (),
        depth: int = 1,
        min_interlink: int = 2,
        min_category: int = 3,
        seed_words: Sequence[str] = (),
        extra_entities: Sequence[str] = (),
    ):
        self.seeds = seeds
        self.depth = depth
        self.min_interlink = min_interlink
        self.min_category = min_category
        self.seed_words = seed_words
        self.extra_entities = extra_entities

    def fit(self, X: ArticleGraph, y=None) -> "VocabularyBuilder":
        self.articles_ = traverse(X, list(self.seeds), self.depth)
        self.raw_entities_ = harvest_entities(X, self.articles_)
        vocab = filter_vocabulary(
            self.raw_entities_,
            min_interlink=self.min_interlink,
            min_category=self.min_category,
            seed_words=list(self.seed_words),
        )
        self.vocabulary_ = merge_external_entities(vocab, list(self.extra_entities))
        return self
