from typing import List

import numpy as np

from .Tensor import Tensor


class TeacherForcedOutput():

    def __init__(self, loss: Tensor, logits: Tensor, targets: List[int], alphas: np.ndarray) -> None:

        self.loss = loss
        self.logits = logits
        self.targets = list(targets)
        self.alphas = alphas

    @property
    def probs(self) -> np.ndarray:

        shifted = self.logits.data - np.max(self.logits.data, axis=1, keepdims=True)
        e = np.exp(shifted)
        return e / np.sum(e, axis=1, keepdims=True)

    def correctTokens(self) -> int:

        return int(np.sum(np.argmax(self.logits.data, axis=1) == np.asarray(self.targets)))

    def tokenAccuracy(self) -> float:

        return self.correctTokens() / len(self.targets)

    def to_dict(self) -> dict:

        return {"loss": self.loss.item(), "steps": len(self.targets), "token_accuracy": self.tokenAccuracy()}

    def __str__(self) -> str:

        return f"TeacherForcedOutput(loss={self.loss.item():.4f}, steps={len(self.targets)})"
