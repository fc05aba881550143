from pathlib import Path

import pytest
from tokenizers import Tokenizer, models, normalizers, pre_tokenizers, processors
from transformers import BertConfig, BertForMaskedLM, PreTrainedTokenizerFast

DATA_DIR = Path(__file__).parent / "data"

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]


@pytest.fixture(scope="session")
def fixture_conll() -> Path:
    return DATA_DIR / "fixture.conll"


@pytest.fixture(scope="session")
def tiny_base_model(tmp_path_factory, fixture_conll) -> str:
    """A throwaway 2-layer BERT with a word-level tokenizer built from the
    fixture's own vocabulary. Random weights: the smoke tests check
    plumbing, not scores, and nothing is downloaded.
    """
    words: set[str] = set()
    for line in fixture_conll.read_text(encoding="utf-8").splitlines():
        if line:
            words.add(line.split("\t")[0].casefold())
    vocab = {token: i for i, token in enumerate(SPECIALS + sorted(words))}

    tokenizer = Tokenizer(models.WordLevel(vocab=vocab, unk_token="[UNK]"))
    tokenizer.normalizer = normalizers.Lowercase()
    tokenizer.pre_tokenizer = pre_tokenizers.WhitespaceSplit()
    tokenizer.post_processor = processors.TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    fast = PreTrainedTokenizerFast(
        tokenizer_object=tokenizer,
        pad_token="[PAD]",
        unk_token="[UNK]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )

    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    model_dir = tmp_path_factory.mktemp("tiny-base-model")
    BertForMaskedLM(config).save_pretrained(model_dir)
    fast.save_pretrained(model_dir)
    return str(model_dir)
