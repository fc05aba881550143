"""Command-line interface: every pipeline stage as a subcommand.

Stages communicate exclusively through files in the documented formats,
so any stage can be swapped for another tool (a different general-domain
model, for instance) without code changes. All randomness flows through
an explicit --seed; the only subcommand touching the network is
fetch-snapshot.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from . import __version__
from .assemble import concat, deduplicate, drop_all_outside, split
from .conll import load_conll, save_conll
from .core import Dataset, TaggedSentence, Token
from .errors import NerforgeError
from .gazetteer import (
    GazetteerAnnotator,
    AnnotationLayer,
    load_predefined_labels,
)
from .metrics import evaluate, unify_labels
from .parallel import parallel_map
from .textproc import LemmaTable, load_abbreviations, segment_sentences, tokenize
from .unify import unify
from .validation import check_parallel_datasets
from .wikivocab import (
    VocabularyBuilder,
    load_lines,
    load_snapshot,
    load_vocabulary,
    write_vocabulary,
)

log = logging.getLogger("nerforge")

_LOG_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def _configure_logging() -> None:
    level_name = os.environ.get("NERFORGE_LOG", "warn").lower()
    level = _LOG_LEVELS.get(level_name, logging.WARNING)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


@click.group()
@click.version_option(__version__, prog_name="nerforge")
def main() -> None:
    """Construct and evaluate weakly-supervised NER datasets."""
    _configure_logging()


def _fail(exc: Exception) -> "click.ClickException":
    return click.ClickException(str(exc))


@main.command("build-vocab")
@click.option("--snapshot", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seeds", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Seed category names, one per line.")
@click.option("--depth", default=1, show_default=True, type=click.IntRange(min=0),
              help="Category traversal depth; deeper walks mostly add "
                   "redundant cross-referenced titles.")
@click.option("--min-interlink", default=2, show_default=True, type=click.IntRange(min=0))
@click.option("--min-category", default=3, show_default=True, type=click.IntRange(min=0))
@click.option("--seed-words", type=click.Path(exists=True, dir_okay=False),
              help="Category-name seed words, one per line.")
@click.option("--extra-entities", type=click.Path(exists=True, dir_okay=False),
              help="External surface forms to merge, one per line.")
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
def build_vocab(snapshot, seeds, depth, min_interlink, min_category,
                seed_words, extra_entities, output) -> None:
    """Mine the entity vocabulary from a category-graph snapshot."""
    try:
        graph = load_snapshot(snapshot)
        builder = VocabularyBuilder(
            seeds=load_lines(seeds),
            depth=depth,
            min_interlink=min_interlink,
            min_category=min_category,
            seed_words=load_lines(seed_words) if seed_words else (),
            extra_entities=load_lines(extra_entities) if extra_entities else (),
        )
        builder.fit(graph)
        write_vocabulary(builder.vocabulary_, output)
    except NerforgeError as exc:
        raise _fail(exc)
    log.info(
        "build-vocab: %d traversed articles, %d raw entities, %d vocabulary entries",
        len(builder.articles_),
        len(builder.raw_entities_),
        len(builder.vocabulary_),
    )


def _read_sentences(path: str, input_format: str, abbreviations) -> list[list[str]]:
    if input_format == "auto":
        input_format = "conll" if path.endswith(".conll") else "text"
    if input_format == "conll":
        ds = load_conll(path)
        return [list(s.surfaces) for s in ds]
    text = Path(path).read_text(encoding="utf-8")
    return [
        [t.surface for t in tokenize(sentence)]
        for sentence in segment_sentences(text, abbreviations)
    ]


@main.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--vocab", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--lemmas", type=click.Path(exists=True, dir_okay=False),
              help="Lemma table TSV; defaults to case-fold lemmatization.")
@click.option("--abbrev", type=click.Path(exists=True, dir_okay=False),
              help="Abbreviation list for sentence segmentation.")
@click.option("--predefined-labels", type=click.Path(exists=True, dir_okay=False),
              help="Per-entity label sequences; enables the enrichment.")
@click.option("--input-format", type=click.Choice(["auto", "text", "conll"]),
              default="auto", show_default=True)
@click.option("--threads", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
def annotate(input_path, vocab, lemmas, abbrev, predefined_labels,
             input_format, threads, output) -> None:
    """Tag vocabulary mentions in text or re-tag a CoNLL token stream."""
    try:
        vocabulary = load_vocabulary(vocab)
        lemmatizer = LemmaTable.load(lemmas) if lemmas else None
        abbreviations = load_abbreviations(abbrev) if abbrev else ()
        predefined = (
            load_predefined_labels(predefined_labels) if predefined_labels else None
        )
        annotator = GazetteerAnnotator(
            lemmatizer=lemmatizer,
            use_predefined_labels=predefined is not None,
            predefined_labels=predefined,
        ).fit(vocabulary)
        sentences = _read_sentences(input_path, input_format, abbreviations)
        layers = parallel_map(
            lambda s: annotator.predict([s])[0], sentences, threads
        )
        ds = Dataset(
            tuple(
                TaggedSentence(
                    tuple(Token(surface) for surface in sentence), layer.tags
                )
                for sentence, layer in zip(sentences, layers)
            )
        )
        save_conll(ds, output)
    except NerforgeError as exc:
        raise _fail(exc)
    log.info("annotate: %d sentences, %d patterns", len(ds), len(annotator.index_))


@main.command("unify")
@click.argument("general_path", metavar="GENERAL", type=click.Path(exists=True, dir_okay=False))
@click.argument("dict_path", metavar="DICT", type=click.Path(exists=True, dir_okay=False))
@click.option("--threads", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
def unify_cmd(general_path, dict_path, threads, output) -> None:
    """Merge a general-domain layer with a gazetteer layer."""
    try:
        general_ds = load_conll(general_path)
        dict_ds = load_conll(dict_path)
        check_parallel_datasets(general_ds, dict_ds)
        pairs = list(zip(general_ds, dict_ds))
        merged = parallel_map(
            lambda pair: unify(
                pair[0].tokens,
                AnnotationLayer(pair[0].tags, "general"),
                AnnotationLayer(pair[1].tags, "dictionary"),
            ),
            pairs,
            threads,
        )
        save_conll(Dataset(tuple(merged)), output)
    except NerforgeError as exc:
        raise _fail(exc)


@main.command()
@click.argument("inputs", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--dedup", is_flag=True, help="Drop repeated token sequences.")
@click.option("--drop-all-o", is_flag=True, help="Drop sentences tagged all O.")
@click.option("--split", "split_ratios", metavar="R1,R2,R3",
              help="Write train/dev/test at these ratios instead of one file.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("-o", "--output", required=True, type=click.Path(file_okay=True))
def assemble(inputs, dedup, drop_all_o, split_ratios, seed, output) -> None:
    """Concatenate CoNLL files in argument order, filter and split."""
    try:
        ds = load_conll(inputs[0], provenance=inputs[0])
        for path in inputs[1:]:
            ds = concat(ds, load_conll(path, provenance=path))
        if dedup:
            ds = deduplicate(ds)
        if drop_all_o:
            ds = drop_all_outside(ds)
        if split_ratios:
            try:
                ratios = tuple(float(r) for r in split_ratios.split(","))
            except ValueError:
                raise click.UsageError(f"bad --split value {split_ratios!r}")
            try:
                train, dev, test = split(ds, ratios, seed)
            except ValueError as exc:
                raise _fail(exc)
            out_dir = Path(output)
            out_dir.mkdir(parents=True, exist_ok=True)
            save_conll(train, out_dir / "train.conll")
            save_conll(dev, out_dir / "dev.conll")
            save_conll(test, out_dir / "test.conll")
            log.info(
                "assemble: %d/%d/%d train/dev/test sentences",
                len(train), len(dev), len(test),
            )
        else:
            save_conll(ds, output)
            log.info("assemble: %d sentences", len(ds))
    except NerforgeError as exc:
        raise _fail(exc)


@main.command("eval")
@click.argument("gold_path", metavar="GOLD", type=click.Path(exists=True, dir_okay=False))
@click.argument("pred_path", metavar="PRED", type=click.Path(exists=True, dir_okay=False))
@click.option("--unify-labels", "unify_flag", is_flag=True,
              help="Collapse both sides to the B-MISC/I-MISC/O inventory first.")
@click.option("--threads", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("-o", "--output", type=click.Path(dir_okay=False),
              help="Write the JSON report here instead of stdout.")
def eval_cmd(gold_path, pred_path, unify_flag, threads, output) -> None:
    """Score predictions against gold tags, token-level."""
    try:
        gold = load_conll(gold_path)
        pred = load_conll(pred_path)
        if unify_flag:
            gold = unify_labels(gold)
            pred = unify_labels(pred)
        report = evaluate(gold, pred, threads=threads)
    except NerforgeError as exc:
        raise _fail(exc)
    text = report.to_json()
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


@main.command()
@click.argument("input_path", metavar="FILE", type=click.Path(exists=True, dir_okay=False))
def stats(input_path) -> None:
    """Print sentence, token and per-label counts."""
    try:
        ds = load_conll(input_path)
    except NerforgeError as exc:
        raise _fail(exc)
    click.echo(f"sentences\t{len(ds)}")
    click.echo(f"tokens\t{ds.token_count()}")
    for label, count in ds.label_counts().items():
        click.echo(f"{label}\t{count}")


@main.command("fetch-snapshot")
@click.option("--category", "categories", multiple=True, required=True,
              help="Seed category name (repeatable).")
@click.option("--depth", default=1, show_default=True, type=click.IntRange(min=0))
@click.option("--api", default="https://ru.wikipedia.org/w/api.php", show_default=True)
@click.option("--max-articles", default=500, show_default=True, type=click.IntRange(min=1))
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
def fetch_snapshot(categories, depth, api, max_articles, output) -> None:
    """Build a snapshot from the live MediaWiki API.

    The only network-touching subcommand; everything else consumes local
    snapshots so pipelines stay hermetic and reproducible.
    """
    from .snapshot_fetcher import fetch

    try:
        count = fetch(list(categories), depth, api, max_articles, output)
    except OSError as exc:
        raise _fail(exc)
    click.echo(f"wrote {count} records to {output}")


if __name__ == "__main__":
    main()
