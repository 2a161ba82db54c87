from typing import List, Optional, Tuple, Union

import numpy as np

from .AcLiteException import ConfigurationError
from .AttentionDecoder import AttentionDecoder
from .AttentionMemory import AttentionMemory
from .BeamHypothesis import BeamHypothesis
from .VisualFeatures import VisualFeatures

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class CaptionDecoder():
    """Greedy, beam and sampling generation over an AttentionDecoder.

    Returned sequences exclude BOS and include EOS when it was emitted;
    max_len bounds the number of generated tokens, EOS included. Scores are
    summed log-softmax values without length normalization.
    """

    def __init__(self, decoder: AttentionDecoder, max_len: int = 16) -> None:

        if max_len < 1:
            raise ConfigurationError(message=f"max_len must be at least 1, got {max_len}")
        self.decoder = decoder
        self.maxLen = max_len

    def _maxLen(self, max_len: Optional[int]) -> int:

        value = self.maxLen if max_len is None else max_len
        if value < 1:
            raise ConfigurationError(message=f"max_len must be at least 1, got {value}")
        return value

    def greedyDecode(self, features: Union[VisualFeatures, AttentionMemory], max_len: Optional[int] = None) -> List[int]:

        memory = self.decoder.prepare(features)
        state = self.decoder.initialState()
        tokens: List[int] = list()
        for _ in range(self._maxLen(max_len)):
            out = self.decoder.step(memory, state)
            # np.argmax returns the lowest id among ties
            token = int(np.argmax(out.logProbs()))
            tokens.append(token)
            if token == AttentionDecoder.EOS:
                break
            state = out.newState.withToken(token)
        return tokens

    def beamDecode(self, features: Union[VisualFeatures, AttentionMemory], beam_size: int,
                   max_len: Optional[int] = None) -> List[BeamHypothesis]:

        if beam_size < 1:
            raise ConfigurationError(message=f"beam size must be at least 1, got {beam_size}")

        memory = self.decoder.prepare(features)
        beams = [BeamHypothesis(tokens=list(), log_prob=0.0, state=self.decoder.initialState(), finished=False)]
        for _ in range(self._maxLen(max_len)):
            candidates: List[BeamHypothesis] = list()
            for hyp in beams:
                if hyp.finished:
                    candidates.append(hyp)
                    continue
                out = self.decoder.step(memory, hyp.state)
                logp = out.logProbs()
                # only the best beam_size continuations of a hypothesis can survive pruning
                ids = np.lexsort((np.arange(logp.shape[0]), -logp))[:beam_size]
                for token in ids:
                    token = int(token)
                    candidates.append(BeamHypothesis(
                        tokens=hyp.tokens + [token],
                        log_prob=hyp.logProb + float(logp[token]),
                        state=out.newState.withToken(token),
                        finished=token == AttentionDecoder.EOS))
            candidates.sort(key=BeamHypothesis.rankKey)
            beams = candidates[:beam_size]
            if all(hyp.finished for hyp in beams):
                break

        LOGGER.debug("beam %i best: %s" % (beam_size, beams[0]))
        return beams

    @staticmethod
    def drawToken(probs: np.ndarray, rng: np.random.Generator) -> int:

        return int(rng.choice(probs.shape[0], p=probs))

    def sampleDecode(self, features: Union[VisualFeatures, AttentionMemory], rng: np.random.Generator,
                     max_len: Optional[int] = None) -> Tuple[List[int], List[float]]:

        memory = self.decoder.prepare(features)
        state = self.decoder.initialState()
        tokens: List[int] = list()
        logProbs: List[float] = list()
        for _ in range(self._maxLen(max_len)):
            out = self.decoder.step(memory, state)
            token = CaptionDecoder.drawToken(out.probs.data, rng)
            tokens.append(token)
            logProbs.append(float(out.logProbs()[token]))
            if token == AttentionDecoder.EOS:
                break
            state = out.newState.withToken(token)
        return tokens, logProbs

    def decode(self, features: Union[VisualFeatures, AttentionMemory], beam_size: int = 1,
               max_len: Optional[int] = None) -> List[int]:
        """Best sequence: greedy for beam_size 1, beam search otherwise."""

        if beam_size == 1:
            return self.greedyDecode(features, max_len=max_len)
        return self.beamDecode(features, beam_size=beam_size, max_len=max_len)[0].tokens

    def __str__(self) -> str:

        return f"CaptionDecoder(max_len={self.maxLen})"
