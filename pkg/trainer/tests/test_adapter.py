import json
import subprocess
import sys

import pytest

from nerforge_trainer.adapter import predict, train
from nerforge_trainer.conll import read_conll, write_conll
from nerforge_trainer.labels import LABELS


class TestConll:
    def test_read_fixture(self, fixture_conll):
        sentences = read_conll(fixture_conll)
        assert len(sentences) == 50
        assert all(len(w) == len(t) for w, t in sentences)

    def test_round_trip(self, fixture_conll, tmp_path):
        sentences = read_conll(fixture_conll)
        out = tmp_path / "copy.conll"
        write_conll(sentences, out)
        assert out.read_bytes() == fixture_conll.read_bytes()

    def test_label_outside_inventory_rejected(self, tmp_path):
        bad = tmp_path / "bad.conll"
        bad.write_text("слово\tB-GPE\n", encoding="utf-8")
        with pytest.raises(ValueError, match="9-label inventory"):
            read_conll(bad)

    def test_fixture_uses_only_inventory_labels(self, fixture_conll):
        tags = {
            t for _, sentence_tags in read_conll(fixture_conll)
            for t in sentence_tags
        }
        assert tags <= set(LABELS)


@pytest.fixture(scope="session")
def trained_model(tiny_base_model, fixture_conll, tmp_path_factory):
    out = tmp_path_factory.mktemp("trained")
    train(
        train_path=fixture_conll,
        dev_path=fixture_conll,
        base_model=tiny_base_model,
        out_dir=out,
        epochs=1,
        batch_size=8,
        seed=0,
    )
    return out


class TestTrain:
    def test_smoke_produces_loadable_artifact(self, trained_model):
        assert (trained_model / "config.json").exists()
        assert (trained_model / "model.safetensors").exists()
        config = json.loads((trained_model / "config.json").read_text())
        assert len(config["id2label"]) == 9

    def test_training_log_has_config_and_epoch_metrics(self, trained_model):
        lines = (trained_model / "training_log.jsonl").read_text().splitlines()
        records = [json.loads(line) for line in lines]
        assert records[0]["event"] == "config"
        assert records[0]["epochs"] == 1
        assert records[0]["labels"] == LABELS
        epochs = [r for r in records if r["event"] == "epoch"]
        assert len(epochs) == 1
        assert "dev_token_accuracy" in epochs[0]
        assert "train_loss" in epochs[0]

    def test_aborts_on_foreign_label_before_training(
        self, tiny_base_model, tmp_path
    ):
        bad = tmp_path / "bad.conll"
        bad.write_text("слово\tB-EVENT\n", encoding="utf-8")
        with pytest.raises(ValueError, match="9-label inventory"):
            train(bad, bad, tiny_base_model, tmp_path / "out", epochs=1)


class TestPredict:
    def test_output_token_aligned_with_input(
        self, trained_model, fixture_conll, tmp_path
    ):
        out = tmp_path / "pred.conll"
        predict(trained_model, fixture_conll, out)
        gold = read_conll(fixture_conll)
        pred = read_conll(out)
        assert len(pred) == len(gold)
        for (gold_words, _), (pred_words, pred_tags) in zip(gold, pred):
            assert pred_words == gold_words
            assert len(pred_tags) == len(pred_words)
            assert set(pred_tags) <= set(LABELS)

    def test_primary_eval_cli_accepts_predictions(
        self, trained_model, fixture_conll, tmp_path
    ):
        # the adapter talks to the toolkit only through files and its CLI
        pred = tmp_path / "pred.conll"
        predict(trained_model, fixture_conll, pred)
        report_path = tmp_path / "report.json"
        result = subprocess.run(
            [
                "nerforge", "eval", str(fixture_conll), str(pred),
                "-o", str(report_path),
            ],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0, result.stderr
        report = json.loads(report_path.read_text(encoding="utf-8"))
        assert report["total_support"] == sum(
            len(words) for words, _ in read_conll(fixture_conll)
        )
        assert 0.0 <= report["weighted_avg"]["f1"] <= 1.0
        assert report["per_label"]

    def test_cli_round_trip(self, trained_model, fixture_conll, tmp_path):
        from nerforge_trainer.cli import main

        out = tmp_path / "cli-pred.conll"
        code = main([
            "predict", "--model", str(trained_model),
            "--input", str(fixture_conll), "--out", str(out),
        ])
        assert code == 0
        assert len(read_conll(out)) == 50


class TestAdaptPreStep:
    def test_mlm_adaptation_then_training(
        self, tiny_base_model, fixture_conll, tmp_path
    ):
        corpus = tmp_path / "domain.txt"
        corpus.write_text(
            "иван грозный ввёл опричнину .\nопричнина изменила страну .\n",
            encoding="utf-8",
        )
        out = tmp_path / "adapted"
        train(
            train_path=fixture_conll,
            dev_path=fixture_conll,
            base_model=tiny_base_model,
            out_dir=out,
            epochs=1,
            batch_size=8,
            adapt_corpus=corpus,
        )
        assert (out / "adapted-lm" / "config.json").exists()
        config = json.loads((out / "training_log.jsonl").read_text().splitlines()[0])
        assert config["adapt_corpus"] == str(corpus)
