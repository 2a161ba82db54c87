from .Tensor import Tensor


class AttentionOutput():
    """beta: pre-softmax scores, alpha: attention weights, attended: weighted feature."""

    def __init__(self, alpha: Tensor, attended: Tensor, beta: Tensor) -> None:

        self.alpha = alpha
        self.attended = attended
        self.beta = beta

    def to_dict(self) -> dict:

        return {"alpha": self.alpha.data.tolist(), "beta": self.beta.data.tolist()}

    def __str__(self) -> str:

        return f"AttentionOutput(n_a={self.alpha.shape[0]}, argmax={int(self.alpha.data.argmax())})"
