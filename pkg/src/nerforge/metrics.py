"""Token-level per-label Precision/Recall/F1 with support-weighted averages.

Metrics are token-level, not entity-span-level: the O label is counted
like any other, and the weighted averages use per-label gold support as
the weight. Precision or recall with an empty denominator is defined as
0, which matters for degenerate labels and is therefore pinned here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import Dataset, Label, TaggedSentence
from .parallel import parallel_map
from .validation import check_parallel_datasets


@dataclass(frozen=True, slots=True)
class LabelScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True, slots=True)
class Scores:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class EvalReport:
    """Per-label scores plus support-weighted averages.

    ``total_support`` equals the total gold token count; the weighted
    average of metric X is sum(support(L) * X(L)) / total_support.
    """

    per_label: dict[Label, LabelScores]
    weighted_avg: Scores
    total_support: int

    def as_dict(self) -> dict:
        def row(s: LabelScores) -> dict:
            return {
                "precision": s.precision,
                "recall": s.recall,
                "f1": s.f1,
                "support": s.support,
            }

        def rounded(value: float) -> float:
            return round(value, 2)

        return {
            "per_label": {str(label): row(s) for label, s in self.per_label.items()},
            "weighted_avg": {
                "precision": self.weighted_avg.precision,
                "recall": self.weighted_avg.recall,
                "f1": self.weighted_avg.f1,
            },
            "total_support": self.total_support,
            "per_label_rounded": {
                str(label): {
                    "precision": rounded(s.precision),
                    "recall": rounded(s.recall),
                    "f1": rounded(s.f1),
                    "support": s.support,
                }
                for label, s in self.per_label.items()
            },
            "weighted_avg_rounded": {
                "precision": rounded(self.weighted_avg.precision),
                "recall": rounded(self.weighted_avg.recall),
                "f1": rounded(self.weighted_avg.f1),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), ensure_ascii=False, indent=2)


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def weighted_average(values: Sequence[float], supports: Sequence[int]) -> float:
    """Support-weighted mean of per-label metric values."""
    if len(values) != len(supports):
        raise ValueError("values and supports must have the same length")
    total = sum(supports)
    if total == 0:
        return 0.0
    return sum(v * s for v, s in zip(values, supports)) / total


def _count_pair(
    pair: tuple[TaggedSentence, TaggedSentence]
) -> tuple[dict[Label, int], dict[Label, int], dict[Label, int]]:
    gold_count: dict[Label, int] = {}
    pred_count: dict[Label, int] = {}
    true_positive: dict[Label, int] = {}
    for g, p in zip(pair[0].tags, pair[1].tags):
        gold_count[g] = gold_count.get(g, 0) + 1
        pred_count[p] = pred_count.get(p, 0) + 1
        if g is p:
            true_positive[g] = true_positive.get(g, 0) + 1
    return gold_count, pred_count, true_positive


def evaluate(gold: Dataset, pred: Dataset, threads: int = 1) -> EvalReport:
    """Token-level evaluation of predictions against gold tags.

    Both datasets must have the same sentences token-for-token. The
    report covers every label that occurs in either side's tags.
    Counting is an associative reduction over sentences, so the result
    is identical for any thread count.
    """
    check_parallel_datasets(gold, pred)

    gold_count: dict[Label, int] = {label: 0 for label in Label}
    pred_count: dict[Label, int] = {label: 0 for label in Label}
    true_positive: dict[Label, int] = {label: 0 for label in Label}
    partials = parallel_map(_count_pair, list(zip(gold, pred)), threads)
    for sentence_gold, sentence_pred, sentence_tp in partials:
        for label, count in sentence_gold.items():
            gold_count[label] += count
        for label, count in sentence_pred.items():
            pred_count[label] += count
        for label, count in sentence_tp.items():
            true_positive[label] += count

    per_label: dict[Label, LabelScores] = {}
    for label in Label:
        support = gold_count[label]
        predicted = pred_count[label]
        if support == 0 and predicted == 0:
            continue
        tp = true_positive[label]
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        per_label[label] = LabelScores(
            precision=precision,
            recall=recall,
            f1=_f1(precision, recall),
            support=support,
        )

    total_support = sum(s.support for s in per_label.values())
    labels = list(per_label)
    supports = [per_label[label].support for label in labels]
    weighted = Scores(
        precision=weighted_average([per_label[l].precision for l in labels], supports),
        recall=weighted_average([per_label[l].recall for l in labels], supports),
        f1=weighted_average([per_label[l].f1 for l in labels], supports),
    )
    return EvalReport(per_label=per_label, weighted_avg=weighted, total_support=total_support)


_UNIFIED: Mapping[Label, Label] = {
    **{Label.begin(t): Label.B_MISC for t in ("LOC", "MISC", "ORG", "PER")},
    **{Label.inside(t): Label.I_MISC for t in ("LOC", "MISC", "ORG", "PER")},
    Label.O: Label.O,
}


def unify_labels(ds: Dataset) -> Dataset:
    """Collapse the 9-label inventory to {B-MISC, I-MISC, O}.

    Every Begin maps to B-MISC and every Inside to I-MISC, so per-label
    supports are conserved into the unified bins.
    """
    sentences = tuple(
        TaggedSentence(s.tokens, tuple(_UNIFIED[tag] for tag in s.tags)) for s in ds
    )
    return Dataset(sentences, ds.provenance)
