"""Fine-tuning and prediction around a Hugging Face token classifier.

The loop is deliberately hand-rolled (plain AdamW over shuffled batches)
so the adapter stays thin and survives Trainer API churn. Subword
predictions collapse to the first subword's tag; a word the tokenizer
maps to zero subwords (or that falls past the model's length limit) is
tagged O with a warning.
"""

from __future__ import annotations

import json
import logging
import time
from pathlib import Path

import torch
from torch.utils.data import DataLoader

import transformers
from transformers import (
    AutoModelForMaskedLM,
    AutoModelForTokenClassification,
    AutoTokenizer,
)

from .conll import Sentence, read_conll, write_conll
from .labels import LABELS, id_to_label, label_to_id

log = logging.getLogger(__name__)

IGNORE_INDEX = -100


def _quiet_transformers() -> None:
    transformers.utils.logging.set_verbosity_error()
    transformers.utils.logging.disable_progress_bar()


def _max_length(tokenizer, model) -> int:
    limit = getattr(model.config, "max_position_embeddings", None) or 512
    model_max = getattr(tokenizer, "model_max_length", limit)
    return min(limit, model_max if model_max and model_max < 10**6 else limit)


def _encode(tokenizer, batch: list[Sentence], max_length: int):
    """Tensorize sentences; label only each word's first subword."""
    words = [sentence[0] for sentence in batch]
    encoding = tokenizer(
        words,
        is_split_into_words=True,
        padding=True,
        truncation=True,
        max_length=max_length,
        return_tensors="pt",
    )
    labels = torch.full(encoding["input_ids"].shape, IGNORE_INDEX, dtype=torch.long)
    for i, (_, tags) in enumerate(batch):
        seen: set[int] = set()
        for position, word_index in enumerate(encoding.word_ids(i)):
            if word_index is None or word_index in seen:
                continue
            seen.add(word_index)
            labels[i][position] = label_to_id[tags[word_index]]
    encoding["labels"] = labels
    return encoding


def _batches(sentences: list[Sentence], batch_size: int, generator=None):
    order = torch.randperm(len(sentences), generator=generator).tolist() \
        if generator is not None else range(len(sentences))
    chunk: list[Sentence] = []
    for index in order:
        chunk.append(sentences[index])
        if len(chunk) == batch_size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


@torch.no_grad()
def _dev_metrics(model, tokenizer, sentences, max_length, batch_size) -> dict:
    model.eval()
    correct = total = 0
    loss_sum = 0.0
    batches = 0
    for batch in _batches(sentences, batch_size):
        encoding = _encode(tokenizer, batch, max_length)
        output = model(**encoding)
        loss_sum += float(output.loss)
        batches += 1
        mask = encoding["labels"] != IGNORE_INDEX
        predictions = output.logits.argmax(dim=-1)
        correct += int((predictions[mask] == encoding["labels"][mask]).sum())
        total += int(mask.sum())
    return {
        "dev_loss": loss_sum / max(batches, 1),
        "dev_token_accuracy": correct / max(total, 1),
        "dev_tokens": total,
    }


def adapt_language_model(
    base_model: str, corpus_path: str | Path, out_dir: str | Path,
    epochs: int = 1, batch_size: int = 8, learning_rate: float = 5e-5,
    seed: int = 0,
) -> str:
    """Optional pre-step: masked-LM fine-tuning on raw domain text.

    Kept deliberately small; it carries no acceptance criteria and full
    domain adaptation is not reproducible at desk scale.
    """
    _quiet_transformers()
    torch.manual_seed(seed)
    tokenizer = AutoTokenizer.from_pretrained(base_model)
    model = AutoModelForMaskedLM.from_pretrained(base_model)
    lines = [
        line.strip()
        for line in Path(corpus_path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    max_length = _max_length(tokenizer, model)
    optimizer = torch.optim.AdamW(model.parameters(), lr=learning_rate)
    generator = torch.Generator().manual_seed(seed)
    mask_id = tokenizer.mask_token_id
    model.train()
    for _ in range(epochs):
        order = torch.randperm(len(lines), generator=generator).tolist()
        for start in range(0, len(order), batch_size):
            chunk = [lines[i] for i in order[start : start + batch_size]]
            encoding = tokenizer(
                chunk, padding=True, truncation=True,
                max_length=max_length, return_tensors="pt",
            )
            input_ids = encoding["input_ids"].clone()
            labels = input_ids.clone()
            maskable = encoding["attention_mask"].bool()
            noise = torch.rand(input_ids.shape, generator=generator) < 0.15
            noise &= maskable
            labels[~noise] = IGNORE_INDEX
            input_ids[noise] = mask_id
            output = model(
                input_ids=input_ids,
                attention_mask=encoding["attention_mask"],
                labels=labels,
            )
            optimizer.zero_grad()
            output.loss.backward()
            optimizer.step()
    out = str(out_dir)
    model.save_pretrained(out)
    tokenizer.save_pretrained(out)
    return out


def train(
    train_path: str | Path,
    dev_path: str | Path,
    base_model: str,
    out_dir: str | Path,
    epochs: int = 5,
    batch_size: int = 16,
    learning_rate: float = 5e-5,
    seed: int = 0,
    adapt_corpus: str | Path | None = None,
) -> Path:
    """Fine-tune a token classifier; returns the saved model directory.

    Aborts before touching the model if any tag falls outside the
    9-label inventory. The training log records the full effective
    configuration plus per-epoch dev metrics.
    """
    _quiet_transformers()
    train_sentences = read_conll(train_path)
    dev_sentences = read_conll(dev_path)

    if adapt_corpus is not None:
        base_model = adapt_language_model(
            base_model, adapt_corpus, Path(out_dir) / "adapted-lm", seed=seed
        )

    torch.manual_seed(seed)
    tokenizer = AutoTokenizer.from_pretrained(base_model)
    model = AutoModelForTokenClassification.from_pretrained(
        base_model,
        num_labels=len(LABELS),
        id2label=id_to_label,
        label2id=label_to_id,
    )
    max_length = _max_length(tokenizer, model)
    optimizer = torch.optim.AdamW(model.parameters(), lr=learning_rate)
    generator = torch.Generator().manual_seed(seed)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    log_path = out / "training_log.jsonl"
    config = {
        "event": "config",
        "base_model": str(base_model),
        "train": str(train_path),
        "dev": str(dev_path),
        "train_sentences": len(train_sentences),
        "dev_sentences": len(dev_sentences),
        "epochs": epochs,
        "batch_size": batch_size,
        "learning_rate": learning_rate,
        "seed": seed,
        "max_length": max_length,
        "labels": LABELS,
        "adapt_corpus": str(adapt_corpus) if adapt_corpus else None,
    }
    with open(log_path, "w", encoding="utf-8") as log_file:
        log_file.write(json.dumps(config, ensure_ascii=False) + "\n")
        for epoch in range(1, epochs + 1):
            model.train()
            started = time.monotonic()
            loss_sum = 0.0
            steps = 0
            for batch in _batches(train_sentences, batch_size, generator):
                encoding = _encode(tokenizer, batch, max_length)
                output = model(**encoding)
                optimizer.zero_grad()
                output.loss.backward()
                optimizer.step()
                loss_sum += float(output.loss.detach())
                steps += 1
            record = {
                "event": "epoch",
                "epoch": epoch,
                "train_loss": loss_sum / max(steps, 1),
                "seconds": round(time.monotonic() - started, 2),
                **_dev_metrics(model, tokenizer, dev_sentences, max_length, batch_size),
            }
            log_file.write(json.dumps(record, ensure_ascii=False) + "\n")
            log.info("epoch %d: %s", epoch, record)

    model.save_pretrained(out)
    tokenizer.save_pretrained(out)
    return out


@torch.no_grad()
def predict(
    model_dir: str | Path,
    input_path: str | Path,
    output_path: str | Path,
    batch_size: int = 32,
) -> Path:
    """Tag a CoNLL file; output is token-aligned with the input."""
    _quiet_transformers()
    sentences = read_conll(input_path, validate_labels=False)
    tokenizer = AutoTokenizer.from_pretrained(model_dir)
    model = AutoModelForTokenClassification.from_pretrained(model_dir)
    model.eval()
    max_length = _max_length(tokenizer, model)

    predicted: list[Sentence] = []
    for start in range(0, len(sentences), batch_size):
        batch = sentences[start : start + batch_size]
        words = [sentence[0] for sentence in batch]
        encoding = tokenizer(
            words,
            is_split_into_words=True,
            padding=True,
            truncation=True,
            max_length=max_length,
            return_tensors="pt",
        )
        logits = model(**encoding).logits.argmax(dim=-1)
        for i, sentence_words in enumerate(words):
            tags = [None] * len(sentence_words)
            for position, word_index in enumerate(encoding.word_ids(i)):
                if word_index is None:
                    continue
                if tags[word_index] is None:
                    tags[word_index] = id_to_label[int(logits[i][position])]
            for word_index, tag in enumerate(tags):
                if tag is None:
                    log.warning(
                        "sentence %d: word %r got no subwords, tagged O",
                        start + i,
                        sentence_words[word_index],
                    )
                    tags[word_index] = "O"
            predicted.append((sentence_words, tags))

    write_conll(predicted, output_path)
    return Path(output_path)
