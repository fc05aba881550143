"""Training glue: CoNLL in, fine-tuned token classifier and CoNLL out."""

__version__ = "0.1.0"

from .labels import LABELS, label_to_id, id_to_label
from .conll import read_conll, write_conll
from .adapter import train, predict

__all__ = [
    "LABELS",
    "label_to_id",
    "id_to_label",
    "read_conll",
    "write_conll",
    "train",
    "predict",
]
