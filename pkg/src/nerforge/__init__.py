"""Weakly-supervised NER dataset construction and evaluation toolkit."""

__version__ = "0.1.0"

from .core import (
    Dataset,
    Label,
    TaggedSentence,
    Token,
    is_iob_valid,
    iob_violations,
    repair_iob,
)
from .conll import load_conll, parse_conll, save_conll, write_conll
from .gazetteer import AnnotationLayer, GazetteerAnnotator, MatchIndex, annotate, build_index
from .metrics import EvalReport, evaluate, unify_labels, weighted_average
from .textproc import LemmaTable, casefold_lemmatizer, lemmatize, segment_sentences, tokenize
from .unify import unify
from .wikivocab import (
    ArticleGraph,
    RawEntity,
    VocabEntry,
    Vocabulary,
    VocabularyBuilder,
    filter_vocabulary,
    harvest_entities,
    load_snapshot,
    load_vocabulary,
    merge_external_entities,
    traverse,
    write_vocabulary,
)
from .assemble import concat, deduplicate, drop_all_outside, split

__all__ = [
    "AnnotationLayer",
    "ArticleGraph",
    "Dataset",
    "EvalReport",
    "GazetteerAnnotator",
    "Label",
    "LemmaTable",
    "MatchIndex",
    "RawEntity",
    "TaggedSentence",
    "Token",
    "VocabEntry",
    "Vocabulary",
    "VocabularyBuilder",
    "annotate",
    "build_index",
    "casefold_lemmatizer",
    "concat",
    "deduplicate",
    "drop_all_outside",
    "evaluate",
    "filter_vocabulary",
    "harvest_entities",
    "is_iob_valid",
    "iob_violations",
    "lemmatize",
    "load_conll",
    "load_snapshot",
    "load_vocabulary",
    "merge_external_entities",
    "parse_conll",
    "repair_iob",
    "save_conll",
    "segment_sentences",
    "split",
    "tokenize",
    "traverse",
    "unify",
    "unify_labels",
    "weighted_average",
    "write_conll",
    "write_vocabulary",
]
