import struct

import numpy as np
import pytest

from aclite.utils.AcLiteException import DataError, DimensionError, FormatError
from aclite.utils.FeatureMap import FeatureMap
from aclite.utils.FileFeatureProvider import FileFeatureProvider
from aclite.utils.GradientCheck import GradientCheck
from aclite.utils.ModelConfig import ModelConfig
from aclite.utils.ModelParams import ModelParams
from aclite.utils.Tensor import Tensor
from aclite.utils.TinyCnnProvider import TinyCnnProvider


class TestAdaptivePool:

    def test_same_size_is_identity(self, rng):
        fm = FeatureMap(rng.normal(size=(3, 4, 5)))
        assert fm.adaptivePool(4, 5) is fm

    def test_constant_field(self):
        pooled = FeatureMap(np.full((1, 4, 4), 2.0)).adaptivePool(2, 2)
        np.testing.assert_allclose(pooled.values.data, np.full((1, 2, 2), 2.0))

    def test_uneven_bins(self):
        """Bins {1}, {2,3}, {4,7}, {5,6,8,9}."""
        pooled = FeatureMap(np.arange(1.0, 10.0).reshape(1, 3, 3)).adaptivePool(2, 2)
        np.testing.assert_allclose(pooled.values.data[0], [[1.0, 2.5], [5.5, 7.0]])

    def test_upsampling_rejected(self):
        with pytest.raises(DimensionError):
            FeatureMap(np.zeros((1, 2, 2))).adaptivePool(3, 2)


class TestFlatten:

    def test_columns_are_spatial_fibers(self):
        values = np.array([[[1.0, 2.0]], [[3.0, 4.0]]])
        features = FeatureMap(values).flatten()
        np.testing.assert_array_equal(features.A.data, [[1.0, 2.0], [3.0, 4.0]])
        assert features.n_a == 2 and features.d_a == 2

    def test_constant_map(self):
        c = np.array([0.5, -1.0, 2.0])
        features = FeatureMap(np.broadcast_to(c.reshape(3, 1, 1), (3, 2, 3)).copy()).flatten()
        for j in range(features.n_a):
            np.testing.assert_array_equal(features.A.data[:, j], c)
        np.testing.assert_allclose(features.meanPooled.data, c)

    def test_mean_pooled_is_column_mean(self, rng):
        features = FeatureMap(rng.normal(size=(6, 3, 4))).flatten()
        np.testing.assert_allclose(features.meanPooled.data, features.A.data.sum(axis=1) / 12, rtol=0, atol=1e-12)


class TestFeatureFile:

    def test_save_load(self, tmp_path, rng):
        fm = FeatureMap(rng.normal(size=(4, 2, 3)))
        path = str(tmp_path / "x.aclf")
        fm.save(path)
        loaded = FeatureMap.load(path)
        assert (loaded.channels, loaded.height, loaded.width) == (4, 2, 3)
        np.testing.assert_array_equal(loaded.values.data, fm.values.data.astype(np.float32))

    def test_header_layout(self):
        raw = FeatureMap(np.zeros((2, 1, 3))).toBytes()
        assert raw[:4] == b"ACLF"
        assert struct.unpack("<IIII", raw[4:20]) == (1, 2, 1, 3)
        assert len(raw) == 20 + 4 * 6

    def test_bad_magic(self):
        raw = b"XXXX" + FeatureMap(np.zeros((1, 1, 1))).toBytes()[4:]
        with pytest.raises(FormatError) as e:
            FeatureMap.fromBytes(raw)
        assert e.value.offset == 0

    def test_truncated(self):
        raw = FeatureMap(np.zeros((2, 2, 2))).toBytes()
        with pytest.raises(FormatError):
            FeatureMap.fromBytes(raw[:-1])
        with pytest.raises(FormatError):
            FeatureMap.fromBytes(raw[:10])

    def test_unsupported_version(self):
        raw = bytearray(FeatureMap(np.zeros((1, 1, 1))).toBytes())
        raw[4] = 9
        with pytest.raises(FormatError):
            FeatureMap.fromBytes(bytes(raw))


class TestFileFeatureProvider:

    def test_encode_pools_to_grid(self, tmp_path, rng):
        config = ModelConfig.tiny()
        FeatureMap(rng.normal(size=(config.d_a, 4, 4))).save(str(tmp_path / "a.aclf"))
        provider = FileFeatureProvider(config, root=str(tmp_path))
        features = provider.encode("a.aclf")
        assert features.A.shape == (config.d_a, config.n_a)
        assert provider.load("a.aclf") is provider.load("a.aclf")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            FileFeatureProvider(ModelConfig.tiny(), root=str(tmp_path)).encode("nope.aclf")

    def test_channel_mismatch(self, rng):
        with pytest.raises(DimensionError):
            FileFeatureProvider(ModelConfig.tiny()).encode(FeatureMap(rng.normal(size=(3, 2, 2))))


class TestTinyCnn:

    def test_zero_image_zero_params(self):
        config = ModelConfig(d_a=8, n_h=4, n_w=4, d_h=4, d_e=4, d_w=4, vocab_size=6, encoder="tiny-cnn")
        params = ModelParams()
        provider = TinyCnnProvider(config, params)
        for _, t in params.items():
            t.data = np.zeros_like(t.data)
        fm = provider.forward(np.zeros((32, 32, 3)))
        np.testing.assert_array_equal(fm.values.data, np.zeros((8, 4, 4)))

    def test_three_stride_two_layers(self, rng):
        config = ModelConfig(d_a=8, n_h=4, n_w=4, d_h=4, d_e=4, d_w=4, vocab_size=6, encoder="tiny-cnn")
        provider = TinyCnnProvider(config, ModelParams())
        assert len(provider.layers) == 3
        assert provider.forward(rng.random((32, 32, 3))).values.shape == (8, 4, 4)
        assert [s[2] for s in TinyCnnProvider.layerShapes(config)] == [16, 8, 4]

    def test_gradients(self, rng):
        config = ModelConfig(d_a=3, n_h=2, n_w=2, d_h=4, d_e=4, d_w=4, vocab_size=6, encoder="tiny-cnn",
                             cnn_channels=[2], image_size=8).validate()
        params = ModelParams(seed=2)
        provider = TinyCnnProvider(config, params)
        image = rng.random((8, 8, 3))
        weights = Tensor(rng.normal(size=(3, 2, 2)))
        check = GradientCheck()
        check.check(lambda: (provider.forward(image).values * weights).sum(), params)
        assert check.passed(1e-4)

    def test_indivisible_image(self):
        config = ModelConfig(d_a=8, n_h=4, n_w=4, d_h=4, d_e=4, d_w=4, vocab_size=6, encoder="tiny-cnn")
        with pytest.raises(DimensionError):
            TinyCnnProvider(config, ModelParams()).forward(np.zeros((30, 30, 3)))
