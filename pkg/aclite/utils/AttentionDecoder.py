from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .AcLiteException import ConfigurationError, DataError, DimensionError, VocabularyError
from .AttentionMemory import AttentionMemory
from .AttentionOutput import AttentionOutput
from .DecoderState import DecoderState
from .Embedding import Embedding
from .FeatureProvider import FeatureProvider
from .FileFeatureProvider import FileFeatureProvider
from .GruCell import GruCell
from .Linear import Linear
from .ModelConfig import ModelConfig
from .ModelParams import ModelParams
from .StepOutput import StepOutput
from .TeacherForcedOutput import TeacherForcedOutput
from .Tensor import Tensor
from .TinyCnnProvider import TinyCnnProvider
from .VisualFeatures import VisualFeatures

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class AttentionDecoder():
    """Dual-GRU caption decoder with low-rank bilinear attention.

    One step, for attention memory A = [a_1 .. a_n_a] with column mean a_bar:

        x     = [h_G : a_bar]                (literal wiring)
        x     = [h_G : a_bar : embed(prev)]  (butd-style wiring)
        h_A'  = GRU_A(x, h_A)
        beta  = w_A^T ((W_eh h_A') * (W_ea A))
        alpha = softmax(beta)
        a_hat = A alpha
        h_G'  = GRU(a_hat, h_G)
        y     = softmax(W_o h_G')

    W_ea A does not depend on the step and is computed once per image in
    prepare(). Hidden states start at zero.
    """

    PAD = 0
    BOS = 1
    EOS = 2
    UNK = 3

    def __init__(self, config: ModelConfig, params: Optional[ModelParams] = None, seed: int = 0) -> None:

        self.config = config.validate()
        self.params = params if params is not None else ModelParams(seed=seed)
        c = config

        self.attentionGru = GruCell(self.params, "gru_a", c.attentionInputSize, c.d_h, bias=c.bias_gru)
        self.hiddenProjection = Linear(self.params, "att.W_eh", c.d_e, c.d_h, bias=c.bias_attention)
        self.featureProjection = Linear(self.params, "att.W_ea", c.d_e, c.d_a, bias=c.bias_attention)
        self.attentionVector = Linear(self.params, "att.w_A", 1, c.d_e, bias=c.bias_attention)
        self.languageGru = GruCell(self.params, "gru_g", c.d_a, c.d_h, bias=c.bias_gru)
        self.output = Linear(self.params, "out.W_o", c.vocab_size, c.d_h, bias=c.bias_output)
        self.embedding: Optional[Embedding] = Embedding(self.params, "embed", c.vocab_size, c.d_w) \
            if c.butdStyle else None
        self._provider: Optional[FeatureProvider] = None

    @property
    def vocabSize(self) -> int:

        return self.config.vocab_size

    def provider(self, root: Optional[str] = None) -> FeatureProvider:
        """Feature provider matching config.encoder; a tiny CNN registers its parameters once."""

        if self._provider is None:
            if self.config.encoder == ModelConfig.ENCODER_TINY_CNN:
                self._provider = TinyCnnProvider(self.config, self.params)
            else:
                self._provider = FileFeatureProvider(self.config, root=root)
        elif isinstance(self._provider, FileFeatureProvider) and root is not None:
            self._provider.root = root
        return self._provider

    def initialState(self) -> DecoderState:

        return DecoderState.initial(self.config.d_h, AttentionDecoder.BOS)

    def prepare(self, features: Union[VisualFeatures, AttentionMemory]) -> AttentionMemory:

        if isinstance(features, AttentionMemory):
            return features
        if features.d_a != self.config.d_a:
            raise DimensionError.mismatch("attention memory", (features.d_a, features.n_a),
                                          (self.config.d_a, self.config.n_a))
        return AttentionMemory(features=features, projected=self.featureProjection.linearApply(features.A))

    def embed(self, token: int) -> Tensor:

        if self.embedding is None:
            raise ConfigurationError(message="literal wiring has no word embedding")
        return self.embedding.embed(token)

    def attentionStep(self, memory: Union[VisualFeatures, AttentionMemory], state: DecoderState,
                      word_vec: Optional[Tensor] = None) -> Tuple[Tensor, AttentionOutput]:

        memory = self.prepare(memory)
        if self.config.butdStyle and word_vec is None:
            raise ConfigurationError(message="butd-style wiring needs the previous word vector")
        if not self.config.butdStyle and word_vec is not None:
            raise ConfigurationError(message="literal wiring takes no word vector")

        features = memory.features
        parts = [state.h_G, features.meanPooled] + ([word_vec] if word_vec is not None else [])
        h_A = self.attentionGru.gruStep(Tensor.concat(parts), state.h_A)

        query = self.hiddenProjection.linearApply(h_A).reshape(self.config.d_e, 1)
        joint = query * memory.projected
        beta = self.attentionVector.linearApply(joint).reshape(features.n_a)
        alpha = beta.softmax()
        attended = features.A.matmul(alpha)
        return h_A, AttentionOutput(alpha=alpha, attended=attended, beta=beta)

    def decodeStep(self, attended: Tensor, state: DecoderState, attention: Optional[AttentionOutput] = None,
                   probabilities: bool = True) -> StepOutput:
        """Language GRU and output projection; state.h_A is carried into the new state unchanged."""

        h_G = self.languageGru.gruStep(attended, state.h_G)
        logits = self.output.linearApply(h_G)
        probs = logits.softmax() if probabilities else None
        return StepOutput(logits=logits, probs=probs, new_state=DecoderState(state.h_A, h_G, state.prevToken),
                          attention=attention)

    def step(self, memory: Union[VisualFeatures, AttentionMemory], state: DecoderState,
             probabilities: bool = True) -> StepOutput:

        word_vec = self.embed(state.prevToken) if self.config.butdStyle else None
        h_A, attention = self.attentionStep(memory, state, word_vec)
        return self.decodeStep(attention.attended, DecoderState(h_A, state.h_G, state.prevToken),
                               attention=attention, probabilities=probabilities)

    def _checkTokens(self, tokens: Sequence[int]) -> None:

        if len(tokens) < 2:
            raise DataError(message=f"teacher forcing needs at least BOS and one target, got {list(tokens)}")
        bad = [t for t in tokens if not 0 <= int(t) < self.vocabSize]
        if bad:
            raise VocabularyError(message=f"token ids {bad} outside [0, {self.vocabSize})")

    def _teacherLogits(self, memory: AttentionMemory, tokens: Sequence[int]) -> Tuple[Tensor, np.ndarray]:

        self._checkTokens(tokens)
        state = self.initialState()
        logits = list()
        alphas = list()
        for t in range(len(tokens) - 1):
            state = state.withToken(int(tokens[t]))
            out = self.step(memory, state, probabilities=False)
            logits.append(out.logits)
            alphas.append(out.attention.alpha.data)
            state = out.newState
        return Tensor.stack(logits), np.stack(alphas)

    def forwardTeacherForced(self, features: Union[VisualFeatures, AttentionMemory],
                             tokens: Sequence[int]) -> TeacherForcedOutput:
        """Mean cross-entropy of tokens[1:] given gold history tokens[:-1]."""

        logits, alphas = self._teacherLogits(self.prepare(features), tokens)
        targets = [int(t) for t in tokens[1:]]
        return TeacherForcedOutput(loss=logits.crossEntropy(targets), logits=logits, targets=targets, alphas=alphas)

    def sequenceLogProb(self, features: Union[VisualFeatures, AttentionMemory], tokens: Sequence[int]) -> Tensor:
        """Sum of ln y_t[tokens[t+1]] along a BOS-prefixed sequence."""

        logits, _ = self._teacherLogits(self.prepare(features), tokens)
        return logits.logSoftmax(axis=1).gatherEntries([int(t) for t in tokens[1:]]).sum()

    def to_dict(self) -> dict:

        return {"config": self.config.to_dict(), "params": self.params.countScalars()}

    def __str__(self) -> str:

        return f"AttentionDecoder({self.config}, params={self.params.countScalars()})"
