from typing import Optional

from .AcLiteException import DimensionError
from .ModelParams import ModelParams
from .Tensor import Tensor


class Linear():
    """Affine map y = W x (+ b); x may be a vector or a matrix of column vectors."""

    def __init__(self, params: ModelParams, name: str, out_features: int, in_features: int, bias: bool = True) -> None:

        self.name = name
        self.outFeatures = out_features
        self.inFeatures = in_features
        self.weight: Tensor = params.glorot(f"{name}.weight", (out_features, in_features),
                                            fan_in=in_features, fan_out=out_features)
        self.bias: Optional[Tensor] = params.zeros(f"{name}.bias", (out_features,)) if bias else None

    @staticmethod
    def countParams(out_features: int, in_features: int, bias: bool = True) -> int:

        return out_features * in_features + (out_features if bias else 0)

    def linearApply(self, x: Tensor) -> Tensor:

        if x.data.ndim not in (1, 2) or x.shape[0] != self.inFeatures:
            raise DimensionError.mismatch(f"{self.name}", (self.outFeatures, self.inFeatures), x.shape)
        y = self.weight.matmul(x)
        if self.bias is None:
            return y
        if x.data.ndim == 2:
            return y + self.bias.reshape(self.outFeatures, 1)
        return y + self.bias

    def __call__(self, x: Tensor) -> Tensor:

        return self.linearApply(x)

    def __str__(self) -> str:

        return f"Linear(name={self.name}, out={self.outFeatures}, in={self.inFeatures}, bias={self.bias is not None})"
