from typing import Callable, Dict, Iterable, Optional, Tuple, Union

import numpy as np

from .ComputationTape import ComputationTape
from .ModelParams import ModelParams
from .Tensor import Tensor

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class GradientCheck():
    """Compares tape gradients against central finite differences.

    The relative error of one entry is |a - n| / max(|a|, |n|, floor), so
    entries whose true gradient is near zero are judged on absolute error.
    """

    def __init__(self, h: float = 1e-5, floor: float = 1e-6) -> None:

        self.h = h
        self.floor = floor
        self.errors: Dict[str, float] = dict()

    @staticmethod
    def _tensors(params: Union[ModelParams, Dict[str, Tensor]]) -> Iterable[Tuple[str, Tensor]]:

        return params.items() if isinstance(params, ModelParams) else list(params.items())

    def relativeError(self, analytic: np.ndarray, numeric: np.ndarray) -> np.ndarray:

        scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), self.floor)
        return np.abs(analytic - numeric) / scale

    def check(self, loss_fn: Callable[[], Tensor], params: Union[ModelParams, Dict[str, Tensor]],
              max_entries: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> Dict[str, float]:
        """Worst relative error per tensor.

        loss_fn must rebuild the scalar loss from the current parameter values
        on every call. With max_entries set, a random subset of each tensor's
        entries is perturbed instead of all of them.
        """

        tensors = list(GradientCheck._tensors(params))
        for _, tensor in tensors:
            tensor.requires_grad = True
            tensor.grad = None

        with ComputationTape() as tape:
            loss = loss_fn()
        tape.backward(loss)
        analytic = {name: np.zeros_like(t.data) if t.grad is None else t.grad.copy() for name, t in tensors}

        rng = rng if rng is not None else np.random.default_rng(0)
        self.errors = dict()
        for name, tensor in tensors:
            # perturbations write through a flat view
            tensor.data = np.ascontiguousarray(tensor.data)
            flat = tensor.data.reshape(-1)
            indices = np.arange(flat.size)
            if max_entries is not None and flat.size > max_entries:
                indices = np.sort(rng.choice(flat.size, size=max_entries, replace=False))
            worst = 0.0
            for i in indices:
                original = flat[i]
                flat[i] = original + self.h
                plus = loss_fn().item()
                flat[i] = original - self.h
                minus = loss_fn().item()
                flat[i] = original
                numeric = (plus - minus) / (2.0 * self.h)
                error = float(self.relativeError(analytic[name].reshape(-1)[i], np.float64(numeric)))
                worst = max(worst, error)
            self.errors[name] = worst
            LOGGER.debug(f"gradient check {name}: worst relative error {worst:.3e} over {len(indices)} entries")

        for _, tensor in tensors:
            tensor.grad = None
        return dict(self.errors)

    def worst(self) -> float:

        return max(self.errors.values()) if self.errors else 0.0

    def passed(self, tolerance: float = 1e-4) -> bool:

        return self.worst() <= tolerance

    def to_dict(self) -> dict:

        return {"h": self.h, "worst": self.worst(), "errors": dict(self.errors)}

    def __str__(self) -> str:

        return f"GradientCheck(h={self.h}, tensors={len(self.errors)}, worst={self.worst():.3e})"
