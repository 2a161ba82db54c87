import math

import numpy as np
import pytest

from aclite.utils.AcLiteException import ConfigurationError
from aclite.utils.AttentionDecoder import AttentionDecoder
from aclite.utils.CaptionDecoder import CaptionDecoder
from aclite.utils.ModelConfig import ModelConfig
from aclite.utils.SelfTest import SelfTest

EOS = AttentionDecoder.EOS


def _force_eos(decoder):
    decoder.params["out.W_o.weight"].data[:] = 0.0
    decoder.params["out.W_o.bias"].data[:] = 0.0
    decoder.params["out.W_o.bias"].data[EOS] = 100.0


def _five_word_model(seed):
    config = ModelConfig(d_a=4, n_h=2, n_w=1, d_h=3, d_e=3, d_w=3, vocab_size=5)
    return AttentionDecoder(config, seed=seed)


class TestGreedy:

    def test_immediate_eos(self, tiny_decoder, tiny_features):
        _force_eos(tiny_decoder)
        assert CaptionDecoder(tiny_decoder).greedyDecode(tiny_features) == [EOS]

    def test_argmax_trace(self, rng):
        """Step-wise argmax recomputed outside the decoder."""
        decoder = _five_word_model(11)
        features = SelfTest.randomFeatures(decoder.config, rng)
        tokens = CaptionDecoder(decoder, max_len=6).greedyDecode(features)

        state = decoder.initialState()
        trace = list()
        for _ in range(6):
            out = decoder.step(features, state)
            token = int(np.argmax(out.probs.data))
            trace.append(token)
            if token == EOS:
                break
            state = out.newState.withToken(token)
        assert tokens == trace
        assert len(tokens) <= 6

    def test_max_len_bounds_output(self, tiny_decoder, tiny_features):
        tiny_decoder.params["out.W_o.bias"].data[:] = 0.0
        tiny_decoder.params["out.W_o.bias"].data[5] = 100.0
        tiny_decoder.params["out.W_o.weight"].data[:] = 0.0
        assert CaptionDecoder(tiny_decoder, max_len=4).greedyDecode(tiny_features) == [5, 5, 5, 5]

    def test_invalid_max_len(self, tiny_decoder):
        with pytest.raises(ConfigurationError):
            CaptionDecoder(tiny_decoder, max_len=0)


class TestBeam:

    def test_beam_one_is_greedy(self, tiny_decoder, rng):
        captioner = CaptionDecoder(tiny_decoder, max_len=8)
        for _ in range(5):
            features = SelfTest.randomFeatures(tiny_decoder.config, rng)
            assert captioner.beamDecode(features, beam_size=1)[0].tokens == captioner.greedyDecode(features)
            assert captioner.decode(features, beam_size=1) == captioner.greedyDecode(features)

    @pytest.mark.parametrize("seed", range(10))
    def test_wide_beam_matches_enumeration(self, seed):
        decoder = _five_word_model(seed)
        features = SelfTest.randomFeatures(decoder.config, np.random.default_rng(seed + 100))
        best, score = SelfTest.exhaustiveDecode(decoder, features, max_len=3)
        top = CaptionDecoder(decoder, max_len=3).beamDecode(features, beam_size=125)[0]
        assert top.tokens == best
        assert top.logProb == pytest.approx(score, abs=1e-12)

    def test_deterministic(self, tiny_decoder, tiny_features):
        captioner = CaptionDecoder(tiny_decoder, max_len=6)
        first = [h.to_dict() for h in captioner.beamDecode(tiny_features, beam_size=4)]
        second = [h.to_dict() for h in captioner.beamDecode(tiny_features, beam_size=4)]
        assert first == second

    def test_hypotheses_sorted_and_scored(self, tiny_decoder, tiny_features):
        beams = CaptionDecoder(tiny_decoder, max_len=5).beamDecode(tiny_features, beam_size=3)
        assert len(beams) == 3
        assert [b.logProb for b in beams] == sorted((b.logProb for b in beams), reverse=True)
        for hyp in beams:
            expected = tiny_decoder.sequenceLogProb(tiny_features, [AttentionDecoder.BOS] + hyp.tokens).item()
            assert hyp.logProb == pytest.approx(expected, abs=1e-10)

    def test_invalid_beam(self, tiny_decoder, tiny_features):
        with pytest.raises(ConfigurationError):
            CaptionDecoder(tiny_decoder).beamDecode(tiny_features, beam_size=0)


class TestSampling:

    def test_degenerate_distribution(self, tiny_decoder, tiny_features, rng):
        _force_eos(tiny_decoder)
        for _ in range(5):
            tokens, logps = CaptionDecoder(tiny_decoder).sampleDecode(tiny_features, rng)
            assert tokens == [EOS]
            assert logps[0] == pytest.approx(0.0, abs=1e-12)

    def test_first_token_frequencies(self, tiny_decoder, tiny_features):
        """10^5 draws: frequency of the most likely first token stays within 3 sigma."""
        probs = tiny_decoder.step(tiny_features, tiny_decoder.initialState()).probs.data
        token = int(np.argmax(probs))
        rng = np.random.default_rng(2024)
        draws = 100000
        hits = sum(CaptionDecoder.drawToken(probs, rng) == token for _ in range(draws))
        sigma = math.sqrt(draws * probs[token] * (1.0 - probs[token]))
        assert abs(hits - draws * probs[token]) <= 3.0 * sigma

    def test_recorded_log_probs(self, tiny_decoder, tiny_features, rng):
        tokens, logps = CaptionDecoder(tiny_decoder, max_len=6).sampleDecode(tiny_features, rng)
        state = tiny_decoder.initialState()
        for token, logp in zip(tokens, logps):
            out = tiny_decoder.step(tiny_features, state)
            assert logp == pytest.approx(math.log(out.probs.data[token]), abs=1e-12)
            state = out.newState.withToken(token)
