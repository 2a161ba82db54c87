from typing import Dict, Iterator, List, Tuple

import numpy as np

from .AcLiteException import ConfigurationError, DimensionError
from .Tensor import Tensor


class ModelParams():
    """Named, ordered store of trainable tensors.

    Registration order is the iteration order everywhere (initialization,
    optimizer updates, checkpoints), which keeps runs bit-reproducible.
    """

    def __init__(self, seed: int = 0) -> None:

        self._tensors: Dict[str, Tensor] = dict()
        self.rng = np.random.default_rng(seed)

    def register(self, name: str, tensor: Tensor) -> Tensor:

        if name in self._tensors:
            raise ConfigurationError(message=f"parameter '{name}' registered twice")
        tensor.requires_grad = True
        self._tensors[name] = tensor
        return tensor

    def glorot(self, name: str, shape: Tuple[int, ...], fan_in: int, fan_out: int) -> Tensor:

        limit = np.sqrt(6.0 / (fan_in + fan_out))
        return self.register(name, Tensor(self.rng.uniform(-limit, limit, size=shape)))

    def zeros(self, name: str, shape: Tuple[int, ...]) -> Tensor:

        return self.register(name, Tensor(np.zeros(shape, dtype=np.float64)))

    def __getitem__(self, name: str) -> Tensor:

        return self._tensors[name]

    def __contains__(self, name: str) -> bool:

        return name in self._tensors

    def __len__(self) -> int:

        return len(self._tensors)

    def names(self) -> List[str]:

        return list(self._tensors.keys())

    def items(self) -> Iterator[Tuple[str, Tensor]]:

        return iter(list(self._tensors.items()))

    def countScalars(self) -> int:

        return sum(t.size for t in self._tensors.values())

    def zeroGrad(self) -> None:

        for tensor in self._tensors.values():
            tensor.grad = None

    def snapshot(self) -> Dict[str, np.ndarray]:

        return {name: t.data.copy() for name, t in self._tensors.items()}

    def load(self, values: Dict[str, np.ndarray]) -> None:

        missing = [n for n in self._tensors if n not in values]
        if missing:
            raise ConfigurationError(message="missing parameters: %s" % ", ".join(missing))
        for name, tensor in self._tensors.items():
            value = np.asarray(values[name], dtype=np.float64)
            if value.shape != tensor.shape:
                raise DimensionError.mismatch(f"load '{name}'", value.shape, tensor.shape)
            tensor.data = value.copy()

    def to_dict(self) -> dict:

        return {name: list(t.shape) for name, t in self._tensors.items()}

    def __str__(self) -> str:

        return "ModelParams(%s)" % ", ".join(f"{n}={t.shape}" for n, t in self._tensors.items())
