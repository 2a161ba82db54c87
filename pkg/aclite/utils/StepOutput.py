import numpy as np

from .AttentionOutput import AttentionOutput
from .DecoderState import DecoderState
from .Tensor import Tensor


class StepOutput():

    def __init__(self, logits: Tensor, probs: Tensor, new_state: DecoderState, attention: AttentionOutput) -> None:

        self.logits = logits
        self.probs = probs
        self.newState = new_state
        self.attention = attention

    def logProbs(self) -> np.ndarray:
        """Log-softmax of the logits, shifted by the max for stability."""

        shifted = self.logits.data - np.max(self.logits.data)
        return shifted - np.log(np.sum(np.exp(shifted)))

    def __str__(self) -> str:

        return f"StepOutput(|V|={self.logits.shape[0]}, argmax={int(self.probs.data.argmax())})"
