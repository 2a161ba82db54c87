from .Tensor import Tensor
from .VisualFeatures import VisualFeatures


class AttentionMemory():
    """Per-image attention inputs: the features and W_e^a A, computed once per caption."""

    def __init__(self, features: VisualFeatures, projected: Tensor) -> None:

        self.features = features
        self.projected = projected

    def __str__(self) -> str:

        return f"AttentionMemory({self.features}, d_e={self.projected.shape[0]})"
