import numpy as np
import pytest

from aclite.utils.AttentionDecoder import AttentionDecoder
from aclite.utils.ModelConfig import ModelConfig
from aclite.utils.SelfTest import SelfTest
from aclite.utils.Tokenizer import Tokenizer
from aclite.utils.ToyCorpus import ToyCorpus
from aclite.utils.Vocabulary import Vocabulary


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tiny_config():
    return ModelConfig.tiny()


@pytest.fixture(params=ModelConfig.WIRINGS)
def tiny_decoder(request):
    config = ModelConfig.tiny()
    config.wiring = request.param
    return AttentionDecoder(config, seed=7)


@pytest.fixture
def tiny_features(tiny_config):
    return SelfTest.randomFeatures(tiny_config, np.random.default_rng(99))


@pytest.fixture(scope="session")
def toy_dir(tmp_path_factory):
    """90-image toy corpus with rendered images, generated once per session."""
    out = tmp_path_factory.mktemp("toy")
    ToyCorpus(seed=0, n_images=90).generate(str(out), images=True)
    return out


@pytest.fixture(scope="session")
def toy_vocab(toy_dir):
    from aclite.utils.DatasetManifest import DatasetManifest

    manifest = DatasetManifest.load(str(toy_dir / "manifest.json"))
    tokenizer = Tokenizer()
    vocab = Vocabulary.build([tokenizer.tokenize(c) for c in manifest.captions("train")], min_occurrences=5)
    vocab.save(str(toy_dir / "vocab.txt"))
    return vocab
