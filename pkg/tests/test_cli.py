import json

import pytest

from aclite.utils.AcLiteCLI import AcLiteCLI
from aclite.utils.AcLiteException import ConfigurationError
from aclite.utils.DatasetManifest import DatasetManifest
from aclite.utils.EncoderCostTable import EncoderCostTable
from aclite.utils.RunConfig import RunConfig
from aclite.utils.Vocabulary import Vocabulary


@pytest.fixture(scope="module")
def trained(tmp_path_factory):
    """Toy corpus, vocabulary and a two-epoch desk checkpoint, all written through the CLI."""
    out = tmp_path_factory.mktemp("cli")
    assert AcLiteCLI(["gen-toy", "--desk", "--out", str(out), "--count", "40"]).exitCode == 0
    manifest, vocab, checkpoint = str(out / "manifest.json"), str(out / "vocab.txt"), str(out / "model.aclc")
    assert AcLiteCLI(["build-vocab", "--manifest", manifest, "--out", vocab]).exitCode == 0
    assert AcLiteCLI(["train", "--desk", "--manifest", manifest, "--vocab", vocab, "--checkpoint", checkpoint,
                      "--epochs", "2"]).exitCode == 0
    return {"dir": out, "manifest": manifest, "vocab": vocab, "checkpoint": checkpoint}


def _stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


class TestExitCodes:

    def test_help(self, capsys):
        assert AcLiteCLI(["help"]).exitCode == 0
        assert "build-vocab" in capsys.readouterr().err

    def test_help_for_command(self, capsys):
        assert AcLiteCLI(["help", "profile"]).exitCode == 0
        assert "--convention" in capsys.readouterr().err

    def test_unknown_command(self):
        assert AcLiteCLI(["fly"]).exitCode == 2

    def test_bad_option_value(self):
        assert AcLiteCLI(["profile", "--convention", "flops"]).exitCode == 2

    def test_unknown_option(self):
        assert AcLiteCLI(["profile", "--colour", "red"]).exitCode == 2

    def test_missing_manifest(self, tmp_path):
        code = AcLiteCLI(["build-vocab", "--manifest", str(tmp_path / "none.json"), "--out", str(tmp_path / "v")])
        assert code.exitCode == 3

    def test_missing_required_setting(self):
        assert AcLiteCLI(["gen-toy"]).exitCode == 2

    def test_option_of_another_command(self):
        assert AcLiteCLI(["profile", "--epochs", "5"]).exitCode == 2
        assert AcLiteCLI(["gen-toy", "--out", "x", "--backbone", "ResNet101"]).exitCode == 2

    def test_unknown_backbone(self):
        assert AcLiteCLI(["profile", "--backbone", "VGG19"]).exitCode == 2


class TestRunConfig:

    def test_defaults_and_desk(self):
        assert RunConfig()["d_h"] == 512
        assert RunConfig(desk=True)["d_h"] == 32
        assert RunConfig(desk=True)["beam_size"] == 3

    def test_file_then_command_line(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"beam_size": 4, "split": "val"}), encoding="utf-8")
        config = RunConfig.load(str(path)).override({"beam_size": 2})
        assert config["beam_size"] == 2 and config["split"] == "val"

    def test_unknown_keys(self, tmp_path):
        with pytest.raises(ConfigurationError):
            RunConfig({"colour": "red"})
        path = tmp_path / "run.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            RunConfig.load(str(path))

    def test_require(self):
        with pytest.raises(ConfigurationError):
            RunConfig().require("manifest")


class TestCommands:

    def test_generated_files(self, trained):
        manifest = DatasetManifest.load(trained["manifest"])
        assert len(manifest) == 40
        vocab = Vocabulary.load(trained["vocab"])
        assert vocab.tokens[:4] == Vocabulary.RESERVED
        assert (trained["dir"] / "model.aclc.meta.json").is_file()

    def test_caption_greedy_matches_beam_one(self, trained, capsys):
        common = ["--checkpoint", trained["checkpoint"], "--manifest", trained["manifest"], "--vocab", trained["vocab"]]
        assert AcLiteCLI(["caption"] + common + ["--greedy"]).exitCode == 0
        greedy = _stdout_json(capsys)
        assert AcLiteCLI(["caption"] + common + ["--beam", "1", "--workers", "2"]).exitCode == 0
        assert _stdout_json(capsys) == greedy
        test_ids = [e["id"] for e in DatasetManifest.load(trained["manifest"]).split("test")]
        assert list(greedy) == test_ids

    def test_caption_worker_count_keeps_order(self, trained, capsys):
        common = ["--checkpoint", trained["checkpoint"], "--manifest", trained["manifest"], "--vocab", trained["vocab"],
                  "--beam", "3", "--split", "train"]
        assert AcLiteCLI(["caption"] + common).exitCode == 0
        one = capsys.readouterr().out
        assert AcLiteCLI(["caption"] + common + ["--workers", "3"]).exitCode == 0
        assert capsys.readouterr().out == one

    def test_evaluate_references_as_hypotheses(self, trained, tmp_path, capsys):
        manifest = DatasetManifest.load(trained["manifest"])
        hypotheses = {e["id"]: e["captions"][0] for e in manifest.split("test")}
        path = tmp_path / "hyp.json"
        path.write_text(json.dumps(hypotheses), encoding="utf-8")
        assert AcLiteCLI(["evaluate", "--manifest", trained["manifest"], "--hypotheses", str(path)]).exitCode == 0
        report = _stdout_json(capsys)
        assert report["n_images"] == len(hypotheses)
        assert report["bleu"][0] == pytest.approx(100.0)
        assert report["cider"] > 0.0

    def test_evaluate_checkpoint(self, trained, tmp_path):
        out = tmp_path / "report.json"
        code = AcLiteCLI(["evaluate", "--manifest", trained["manifest"], "--checkpoint", trained["checkpoint"],
                          "--vocab", trained["vocab"], "--beam", "2", "--out", str(out)]).exitCode
        assert code == 0
        report = json.loads(out.read_text(encoding="utf-8"))
        assert report["beam_size"] == 2 and len(report["bleu"]) == 4

    def test_evaluate_unknown_image(self, trained, tmp_path):
        path = tmp_path / "hyp.json"
        path.write_text(json.dumps({"nobody": "red circle"}), encoding="utf-8")
        assert AcLiteCLI(["evaluate", "--manifest", trained["manifest"], "--hypotheses", str(path)]).exitCode == 3

    def test_training_is_deterministic(self, trained, tmp_path):
        paths = [tmp_path / "a.aclc", tmp_path / "b.aclc"]
        for path in paths:
            assert AcLiteCLI(["train", "--desk", "--manifest", trained["manifest"], "--vocab", trained["vocab"],
                              "--checkpoint", str(path), "--epochs", "1", "--seed", "3"]).exitCode == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_scst_fine_tuning(self, trained, tmp_path):
        out = str(tmp_path / "scst.aclc")
        code = AcLiteCLI(["train", "--desk", "--mode", "scst", "--manifest", trained["manifest"],
                          "--vocab", trained["vocab"], "--init-checkpoint", trained["checkpoint"],
                          "--checkpoint", out, "--epochs", "1"]).exitCode
        assert code == 0
        meta = json.loads((tmp_path / "scst.aclc.meta.json").read_text(encoding="utf-8"))
        assert meta["mode"] == "scst" and meta["scst_steps"] > 0

    def test_profile_json(self, capsys):
        assert AcLiteCLI(["profile", "--format", "json"]).exitCode == 0
        document = _stdout_json(capsys)
        assert document["reports"][0]["encoder"] == EncoderCostTable.DEFAULT
        assert document["params"]["tensors"]["out.W_o.bias"] == 12912

    def test_profile_all_markdown(self, capsys):
        assert AcLiteCLI(["profile", "--backbone", "all", "--convention", "2mac"]).exitCode == 0
        text = capsys.readouterr().out
        for name in EncoderCostTable.names():
            assert f"| {name} |" in text

    def test_selftest_suites(self, capsys):
        assert AcLiteCLI(["selftest", "--suites", "bleu", "cider"]).exitCode == 0
        results = _stdout_json(capsys)["results"]
        assert set(results) == {"bleu", "cider"}
