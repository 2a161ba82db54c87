from typing import Optional

from .AcLiteException import DimensionError
from .ModelParams import ModelParams
from .Tensor import Tensor


class GruCell():
    """Fully gated GRU, reset applied before the candidate projection:

        z  = sigmoid(W_z [x; h] + b_z)
        r  = sigmoid(W_r [x; h] + b_r)
        h~ = tanh(W_h [x; r * h] + b_h)
        h' = (1 - z) * h + z * h~
    """

    GATES = ("z", "r", "h")

    def __init__(self, params: ModelParams, name: str, input_size: int, hidden_size: int, bias: bool = True) -> None:

        self.name = name
        self.inputSize = input_size
        self.hiddenSize = hidden_size
        shape = (hidden_size, input_size + hidden_size)
        self.weights = {g: params.glorot(f"{name}.W_{g}", shape, fan_in=shape[1], fan_out=hidden_size)
                        for g in GruCell.GATES}
        self.biases: Optional[dict] = {g: params.zeros(f"{name}.b_{g}", (hidden_size,))
                                       for g in GruCell.GATES} if bias else None

    @staticmethod
    def countParams(input_size: int, hidden_size: int, bias: bool = True) -> int:

        return 3 * (hidden_size * (input_size + hidden_size) + (hidden_size if bias else 0))

    def _gate(self, gate: str, xh: Tensor) -> Tensor:

        pre = self.weights[gate].matmul(xh)
        return pre + self.biases[gate] if self.biases is not None else pre

    def gruStep(self, x: Tensor, h_prev: Tensor) -> Tensor:

        if x.shape != (self.inputSize,) or h_prev.shape != (self.hiddenSize,):
            raise DimensionError.mismatch(f"{self.name} step", (self.inputSize, self.hiddenSize),
                                          x.shape + h_prev.shape)

        xh = Tensor.concat([x, h_prev])
        z = self._gate("z", xh).sigmoid()
        r = self._gate("r", xh).sigmoid()
        candidate = self._gate("h", Tensor.concat([x, r * h_prev])).tanh()
        return (1.0 - z) * h_prev + z * candidate

    def __str__(self) -> str:

        return f"GruCell(name={self.name}, input={self.inputSize}, hidden={self.hiddenSize}, bias={self.biases is not None})"
