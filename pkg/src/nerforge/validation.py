"""Input validation helpers shared by the pipeline stages."""

from __future__ import annotations

from .core import Dataset
from .errors import AlignmentError


def check_parallel_datasets(gold: Dataset, pred: Dataset) -> None:
    """Require identical sentence counts and per-sentence token surfaces.

    Raises AlignmentError naming the first offending sentence and token.
    """
    if len(gold) != len(pred):
        raise AlignmentError(
            f"datasets have {len(gold)} vs {len(pred)} sentences"
        )
    for index, (g, p) in enumerate(zip(gold, pred)):
        if len(g) != len(p):
            raise AlignmentError(
                f"sentence {index}: {len(g)} vs {len(p)} tokens"
            )
        for position, (gt, pt) in enumerate(zip(g.tokens, p.tokens)):
            if gt.surface != pt.surface:
                raise AlignmentError(
                    f"sentence {index}, token {position}: "
                    f"{gt.surface!r} != {pt.surface!r}"
                )
