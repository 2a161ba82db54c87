import json
import os

import numpy as np
import pytest

from aclite.utils.AcLiteException import ConfigurationError, DataError, EncodingError, VocabularyError
from aclite.utils.CaptionRecord import CaptionRecord
from aclite.utils.DatasetManifest import DatasetManifest
from aclite.utils.FeatureMap import FeatureMap
from aclite.utils.Tokenizer import Tokenizer
from aclite.utils.ToyCorpus import ToyCorpus
from aclite.utils.Vocabulary import Vocabulary


class TestTokenizer:

    def test_danda_is_punctuation(self):
        assert Tokenizer().tokenize("এজন মানুহ। এটা গছ") == ["এজন", "মানুহ", "এটা", "গছ"]

    def test_danda_without_space_separates_words(self):
        assert Tokenizer().tokenize("এজন মানুহ।এটা গছ") == ["এজন", "মানুহ", "এটা", "গছ"]
        assert Tokenizer().tokenize("red,blue") == ["red", "blue"]

    def test_nfc_normalization(self):
        assert Tokenizer().tokenize("cafe\u0301") == ["caf\u00e9"]

    def test_no_case_folding(self):
        assert Tokenizer().tokenize("A Red, red!") == ["A", "Red", "red"]

    def test_reserved_tokens_survive(self):
        assert Tokenizer(reserved=[Vocabulary.UNK]).tokenize("a <unk> b") == ["a", "<unk>", "b"]

    def test_bytes_input(self):
        assert Tokenizer().tokenize("গছ।".encode("utf-8")) == ["গছ"]

    def test_invalid_utf8(self):
        with pytest.raises(EncodingError):
            Tokenizer().tokenize(b"\xff\xfe")

    def test_lone_surrogate(self):
        with pytest.raises(EncodingError):
            Tokenizer().tokenize("a \ud800 b")


class TestVocabulary:

    def test_reserved_prefix(self):
        vocab = Vocabulary.build([])
        assert vocab.tokens == ["<pad>", "<bos>", "<eos>", "<unk>"]
        assert (Vocabulary.PAD_ID, Vocabulary.BOS_ID, Vocabulary.EOS_ID, Vocabulary.UNK_ID) == (0, 1, 2, 3)

    def test_threshold_is_strict(self):
        """x seen 6 times is kept, y seen 5 times is not."""
        vocab = Vocabulary.build([["x"]] * 6 + [["y"]] * 5, min_occurrences=5)
        assert "x" in vocab and "y" not in vocab
        assert vocab.tokenId("x") == 4

    def test_frequency_then_code_point_order(self):
        vocab = Vocabulary.build([["b", "a", "c", "c"]] * 6, min_occurrences=5)
        assert vocab.tokens[4:] == ["c", "a", "b"]

    def test_encode(self):
        vocab = Vocabulary(Vocabulary.RESERVED + ["a", "b"])
        assert vocab.encode(["a", "zzz", "b"]) == [1, 4, 3, 5, 2]

    def test_encode_truncates_interior(self):
        vocab = Vocabulary(Vocabulary.RESERVED + ["a"])
        ids = vocab.encode(["a"] * 20, max_len=16)
        assert len(ids) == 18
        assert ids[0] == Vocabulary.BOS_ID and ids[-1] == Vocabulary.EOS_ID

    def test_decode_drops_control_ids(self):
        vocab = Vocabulary(Vocabulary.RESERVED + ["a", "b"])
        assert vocab.decode([1, 4, 3, 5, 2, 0]) == "a <unk> b"
        with pytest.raises(VocabularyError):
            vocab.decode([9])

    def test_save_load(self, tmp_path):
        vocab = Vocabulary(Vocabulary.RESERVED + ["গছ", "a"])
        path = str(tmp_path / "vocab.txt")
        vocab.save(path)
        assert Vocabulary.load(path).tokens == vocab.tokens

    def test_bad_files(self, tmp_path):
        with pytest.raises(DataError):
            Vocabulary.load(str(tmp_path / "missing.txt"))
        path = tmp_path / "bad.txt"
        path.write_text("a\nb\n", encoding="utf-8")
        with pytest.raises(DataError):
            Vocabulary.load(str(path))
        with pytest.raises(DataError):
            Vocabulary(Vocabulary.RESERVED + ["a", "a"])


class TestManifest:

    def _entries(self):
        return [
            {"id": "a", "split": "train", "features": "f/a.aclf", "captions": ["red circle.", "a red circle"]},
            {"id": "b", "split": "test", "features": "f/b.aclf", "captions": ["blue square"]},
            {"id": "c", "split": "train", "features": "f/c.aclf", "captions": []},
        ]

    def test_splits_and_paths(self):
        manifest = DatasetManifest(self._entries(), root="/data")
        assert [e["id"] for e in manifest.split("train")] == ["a", "c"]
        assert manifest.source(manifest.images[0]) == os.path.join("/data", "f/a.aclf")
        with pytest.raises(DataError):
            manifest.source(manifest.images[0], encoder_uses_images=True)

    def test_training_examples(self):
        manifest = DatasetManifest(self._entries(), root="/data")
        vocab = Vocabulary(Vocabulary.RESERVED + ["red", "circle"])
        examples = manifest.trainingExamples(vocab, Tokenizer(), "train")
        assert len(examples) == 2
        assert examples[0].tokens == [1, 4, 5, 2]
        assert examples[1].tokens == [1, 3, 4, 5, 2]
        assert examples[0].references == [[4, 5], [3, 4, 5]]
        assert len(manifest.trainingExamples(vocab, Tokenizer(), "train", per_image=True)) == 1

    def test_caption_record(self):
        vocab = Vocabulary(Vocabulary.RESERVED + ["red"])
        record = CaptionRecord.fromText("a", "train", "red red dog", vocab, Tokenizer())
        assert record.interior == [4, 4, 3]

    def test_rejects_bad_entries(self):
        with pytest.raises(DataError):
            DatasetManifest([{"id": "a", "split": "holdout"}])
        with pytest.raises(DataError):
            DatasetManifest([{"id": "a", "split": "train"}, {"id": "a", "split": "test"}])
        with pytest.raises(DataError):
            DatasetManifest([{"id": "a", "split": "train", "extra": 1}])
        with pytest.raises(DataError):
            DatasetManifest([{"id": "a", "split": "train", "captions": "not a list"}])

    def test_load_errors(self, tmp_path):
        with pytest.raises(DataError):
            DatasetManifest.load(str(tmp_path / "missing.json"))
        path = tmp_path / "m.json"
        path.write_text("{\"images\": 3}", encoding="utf-8")
        with pytest.raises(DataError):
            DatasetManifest.load(str(path))


class TestToyCorpus:

    def test_generation_is_deterministic(self, tmp_path):
        first = ToyCorpus(seed=3, n_images=20).generate(str(tmp_path / "one"))
        second = ToyCorpus(seed=3, n_images=20).generate(str(tmp_path / "two"))
        assert first.toBytes() == second.toBytes()
        a = FeatureMap.load(str(tmp_path / "one" / "features" / "toy-0007.aclf")).toBytes()
        b = FeatureMap.load(str(tmp_path / "two" / "features" / "toy-0007.aclf")).toBytes()
        assert a == b
        assert (tmp_path / "one" / "manifest.json").read_bytes() == (tmp_path / "two" / "manifest.json").read_bytes()

    def test_layout(self, toy_dir):
        manifest = DatasetManifest.load(str(toy_dir / "manifest.json"))
        assert len(manifest) == 90
        assert [len(manifest.split(s)) for s in DatasetManifest.SPLITS] == [72, 9, 9]
        entry = manifest.images[0]
        assert FeatureMap.load(manifest.source(entry)).values.shape == (64, 4, 4)
        image = np.load(manifest.source(entry, encoder_uses_images=True))
        assert image.shape == (32, 32, 3)
        assert image.min() >= 0.0 and image.max() <= 1.0

    def test_every_class_appears(self, toy_dir):
        manifest = DatasetManifest.load(str(toy_dir / "manifest.json"))
        assert len(set(manifest.captions())) == len(ToyCorpus().combinations()) == 18

    def test_vocabulary_covers_grammar(self, toy_vocab):
        for slot in ("color", "shape", "background"):
            for word in ToyCorpus.DEFAULT_GRAMMAR[slot]:
                assert word in toy_vocab
        assert "on" in toy_vocab

    def test_manifest_json_shape(self, toy_dir):
        document = json.loads((toy_dir / "manifest.json").read_text(encoding="utf-8"))
        assert set(document["images"][0]) == set(DatasetManifest.KEYS)

    def test_bad_grammar(self):
        with pytest.raises(ConfigurationError):
            ToyCorpus(grammar={"template": "{color} {shape}", "color": ["red"]})
