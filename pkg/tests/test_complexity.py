import json

import numpy as np
import pytest

from aclite.utils.AcLiteException import BackboneLookupError, ConfigurationError
from aclite.utils.AttentionDecoder import AttentionDecoder
from aclite.utils.ComplexityAnalyzer import ComplexityAnalyzer
from aclite.utils.ComplexityReport import ComplexityReport
from aclite.utils.ComputationTape import ComputationTape
from aclite.utils.EncoderCostTable import EncoderCostTable
from aclite.utils.LayerCost import LayerCost
from aclite.utils.ModelConfig import ModelConfig
from aclite.utils.ModelParams import ModelParams
from aclite.utils.SelfTest import SelfTest
from aclite.utils.TinyCnnProvider import TinyCnnProvider


def _cnn_config():
    return ModelConfig(d_a=8, n_h=4, n_w=4, d_h=6, d_e=5, d_w=4, vocab_size=9, encoder="tiny-cnn")


class TestParams:

    def test_full_size_output_projection(self):
        tensors = ComplexityAnalyzer(ModelConfig.full()).countParams()["tensors"]
        assert tensors["out.W_o.weight"] + tensors["out.W_o.bias"] == 6623856

    def test_literal_attention_gru(self):
        config = ModelConfig(wiring=ModelConfig.WIRING_LITERAL)
        tensors = ComplexityAnalyzer(config).countParams()["tensors"]
        assert sum(n for name, n in tensors.items() if name.startswith("gru_a.")) == 3147264
        assert "embed.table" not in tensors

    @pytest.mark.parametrize("config", [ModelConfig.tiny(), ModelConfig.desk(vocab_size=17), _cnn_config(),
                                        ModelConfig(d_a=3, n_h=1, n_w=2, d_h=2, d_e=4, d_w=5, vocab_size=6,
                                                    wiring="literal", bias_gru=False, bias_output=False,
                                                    bias_attention=True)])
    def test_enumeration_matches_instantiated_model(self, config):
        decoder = AttentionDecoder(config, seed=0)
        decoder.provider()
        counts = ComplexityAnalyzer(config).countParams()
        assert list(counts["tensors"].items()) == [(name, t.size) for name, t in decoder.params.items()]
        assert counts["total"] == decoder.params.countScalars() == sum(counts["components"].values())

    def test_incomplete_config(self):
        with pytest.raises(ConfigurationError):
            ComplexityAnalyzer(ModelConfig(vocab_size=None)).countParams()

    def test_render_params(self):
        text = ComplexityAnalyzer.renderParams(ComplexityAnalyzer(ModelConfig.full()).countParams(),
                                               reported_params_m=25.65)
        assert "| out.W_o.weight | decoder | 6,610,944 |" in text
        assert "25.65M" in text


class TestFlops:

    def test_two_mac_doubles_every_entry(self):
        analyzer = ComplexityAnalyzer(ModelConfig.full())
        mac = analyzer.countFlops(convention=ComplexityReport.MAC).components()
        two = analyzer.countFlops(convention=ComplexityReport.TWO_MAC).components()
        for component in (LayerCost.ATTENTION, LayerCost.DECODER):
            assert two[component]["mflops"] == 2 * mac[component]["mflops"]

    @pytest.mark.parametrize("wiring", ModelConfig.WIRINGS)
    @pytest.mark.parametrize("bias_attention", [False, True])
    def test_tape_oracle_small(self, wiring, bias_attention, rng):
        config = ModelConfig(d_a=7, n_h=3, n_w=2, d_h=5, d_e=4, d_w=3, vocab_size=13, wiring=wiring,
                             bias_attention=bias_attention)
        decoder = AttentionDecoder(config, seed=1)
        for seq_len in (1, 4, 16):
            expected = ComplexityAnalyzer(config).countFlops(seq_len=seq_len).nonEncoderMacs
            assert SelfTest.tapeMacs(decoder, rng, seq_len) == expected

    def test_tape_oracle_full_size(self, rng):
        config = ModelConfig.full()
        macs = SelfTest.tapeMacs(AttentionDecoder(config, seed=0), rng, 16)
        assert macs == ComplexityAnalyzer(config).countFlops(seq_len=16).nonEncoderMacs

    def test_tiny_cnn_encoder_against_tape(self, rng):
        config = _cnn_config()
        provider = TinyCnnProvider(config, ModelParams())
        with ComputationTape(profile=True) as tape:
            provider.forward(rng.random((32, 32, 3)))
        report = ComplexityAnalyzer(config).countFlops()
        assert tape.totalMacs() == report.macs(LayerCost.ENCODER)

    def test_non_encoder_cost_constant_across_backbones(self):
        reports = ComplexityAnalyzer(ModelConfig.full()).ablation()
        assert [r.encoder for r in reports] == EncoderCostTable.names()
        assert len(reports) == 10
        assert len({r.nonEncoderMacs for r in reports}) == 1
        assert len({r.nonEncoderParams for r in reports}) == 1
        resnet = [r for r in reports if r.encoder == "ResNet101"][0]
        assert resnet.components()[LayerCost.ENCODER]["mflops"] == 7600
        assert "gap_mflops" in resnet.to_dict()

    def test_seq_len_scales_step_terms(self):
        analyzer = ComplexityAnalyzer(ModelConfig.tiny())
        one, two = analyzer.countFlops(seq_len=1).nonEncoderMacs, analyzer.countFlops(seq_len=2).nonEncoderMacs
        per_image = sum(layer.totalMacs for layer in analyzer.layers(1) if layer.invocations == 1
                        and layer.name in ("mean_pool", "att.W_ea"))
        assert two - one == one - per_image

    def test_invalid_arguments(self):
        analyzer = ComplexityAnalyzer(ModelConfig.tiny())
        with pytest.raises(ConfigurationError):
            analyzer.countFlops(convention="flops")
        with pytest.raises(ConfigurationError):
            analyzer.countFlops(seq_len=0)


class TestEncoderTable:

    def test_lookup_is_case_insensitive(self):
        assert EncoderCostTable.lookup("shufflenetv2x1.5").mflops == 299

    def test_unknown_backbone(self):
        with pytest.raises(BackboneLookupError):
            ComplexityAnalyzer(ModelConfig.tiny()).countFlops(backbone="VGG19")

    def test_render_markdown(self):
        reports = ComplexityAnalyzer(ModelConfig.full()).ablation()
        text = ComplexityAnalyzer.renderTable(reports, baselines=True)
        for name in EncoderCostTable.names():
            assert f"| {name} |" in text
        assert "| AoANet |" in text

    def test_render_json(self):
        reports = [ComplexityAnalyzer(ModelConfig.full()).countFlops(backbone=EncoderCostTable.DEFAULT)]
        document = json.loads(ComplexityAnalyzer.renderTable(reports, fmt="json"))
        assert document["reports"][0]["encoder"] == EncoderCostTable.DEFAULT
        assert np.isclose(document["reports"][0]["reported_total_mflops"], 1097.575)

    def test_render_rejects_unknown_format(self):
        with pytest.raises(ConfigurationError):
            ComplexityAnalyzer.renderTable([ComplexityAnalyzer(ModelConfig.tiny()).countFlops()], fmt="csv")
