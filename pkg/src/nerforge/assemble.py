"""Dataset-level filtering, concatenation and deterministic splitting."""

from __future__ import annotations

import logging
import math
from typing import Sequence

from .core import Dataset

log = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


def deduplicate(ds: Dataset) -> Dataset:
    """Drop sentences whose token-surface sequence was already seen.

    The first occurrence (and its tags) is kept. The key is surfaces
    only: duplicates with conflicting tags would inject contradictory
    supervision, so the later copy loses and the conflict is reported.
    """
    seen: dict[tuple[str, ...], int] = {}
    keep: list[int] = []
    conflicts = 0
    for i, sentence in enumerate(ds):
        key = sentence.surfaces
        first = seen.get(key)
        if first is None:
            seen[key] = i
            keep.append(i)
        elif ds[first].tags != sentence.tags:
            conflicts += 1
    removed = len(ds) - len(keep)
    if removed:
        log.info(
            "deduplicate: removed %d duplicate sentence(s), %d with conflicting tags",
            removed,
            conflicts,
        )
    return Dataset(
        tuple(ds[i] for i in keep), tuple(ds.provenance[i] for i in keep)
    )


def drop_all_outside(ds: Dataset) -> Dataset:
    """Remove every sentence tagged with nothing but O."""
    keep = [i for i, sentence in enumerate(ds) if not sentence.is_all_outside()]
    if len(keep) != len(ds):
        log.info("drop_all_outside: removed %d all-O sentence(s)", len(ds) - len(keep))
    return Dataset(
        tuple(ds[i] for i in keep), tuple(ds.provenance[i] for i in keep)
    )


def concat(a: Dataset, b: Dataset) -> Dataset:
    """a's sentences followed by b's, provenance preserved."""
    return Dataset(a.sentences + b.sentences, a.provenance + b.provenance)


def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, (z ^ (z >> 31)) & _MASK64


def permutation(n: int, seed: int) -> list[int]:
    """Fisher-Yates shuffle of range(n) driven by splitmix64.

    The generator is pinned so splits reproduce bit-for-bit across
    platforms and implementations; no OS entropy is involved.
    """
    indices = list(range(n))
    state = seed & _MASK64
    for i in range(n - 1, 0, -1):
        state, value = _splitmix64(state)
        j = value % (i + 1)
        indices[i], indices[j] = indices[j], indices[i]
    return indices


def split_sizes(n: int, ratios: Sequence[float]) -> tuple[int, int, int]:
    """Allocation for (train, dev, test).

    Dev and test sizes are their ratios rounded half-up; train takes the
    remainder. This reproduces a 0.8/0.1/0.1 split of 204,778 sentences
    as 163,822/20,478/20,478.
    """
    if len(ratios) != 3:
        raise ValueError("exactly three ratios are required")
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive")
    if abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must sum to 1, got {sum(ratios)}")
    n_dev = math.floor(n * ratios[1] + 0.5)
    n_test = math.floor(n * ratios[2] + 0.5)
    n_train = n - n_dev - n_test
    if n_train < 0:
        raise ValueError(f"cannot allocate {n} sentences at ratios {tuple(ratios)}")
    return n_train, n_dev, n_test


def split(
    ds: Dataset, ratios: Sequence[float], seed: int
) -> tuple[Dataset, Dataset, Dataset]:
    """Deterministic pseudo-random (train, dev, test) split.

    The pieces are disjoint, exhaust the dataset, and are identical for
    identical (dataset, ratios, seed).
    """
    n_train, n_dev, n_test = split_sizes(len(ds), ratios)
    order = permutation(len(ds), seed)

    def take(indices: Sequence[int]) -> Dataset:
        return Dataset(
            tuple(ds[i] for i in indices),
            tuple(ds.provenance[i] for i in indices),
        )

    return (
        take(order[:n_train]),
        take(order[n_train : n_train + n_dev]),
        take(order[n_train + n_dev :]),
    )
