from typing import Dict, Optional

import numpy as np

from .AcLiteException import ConfigurationError, OptimizerError
from .ModelParams import ModelParams

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class AdamState():

    def __init__(self, learning_rate: float = 5e-4, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8,
                 grad_clip: Optional[float] = None) -> None:

        if learning_rate < 0 or not 0 <= beta1 < 1 or not 0 <= beta2 < 1 or eps <= 0:
            raise ConfigurationError(
                message=f"invalid Adam settings lr={learning_rate}, beta1={beta1}, beta2={beta2}, eps={eps}")
        if grad_clip is not None and grad_clip <= 0:
            raise ConfigurationError(message=f"grad_clip must be positive, got {grad_clip}")

        self.learningRate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.gradClip = grad_clip
        self.step = 0
        self.firstMoment: Dict[str, np.ndarray] = dict()
        self.secondMoment: Dict[str, np.ndarray] = dict()

    def clipGradients(self, params: ModelParams) -> float:
        """Rescales all gradients so their global L2 norm is at most gradClip."""

        total = 0.0
        for _, tensor in params.items():
            if tensor.grad is not None:
                total += float(np.sum(tensor.grad * tensor.grad))
        norm = float(np.sqrt(total))
        if self.gradClip is not None and norm > self.gradClip:
            scale = self.gradClip / norm
            for _, tensor in params.items():
                if tensor.grad is not None:
                    tensor.grad = tensor.grad * scale
        return norm

    def adamStep(self, params: ModelParams) -> ModelParams:

        for name, tensor in params.items():
            if tensor.grad is None:
                raise OptimizerError(message=f"parameter '{name}' has no gradient")

        if self.gradClip is not None:
            self.clipGradients(params)

        self.step += 1
        correction1 = 1.0 - self.beta1 ** self.step
        correction2 = 1.0 - self.beta2 ** self.step

        for name, tensor in params.items():
            g = tensor.grad
            m = self.firstMoment.get(name)
            v = self.secondMoment.get(name)
            if m is None or v is None:
                m = np.zeros_like(tensor.data)
                v = np.zeros_like(tensor.data)
            m = self.beta1 * m + (1.0 - self.beta1) * g
            v = self.beta2 * v + (1.0 - self.beta2) * (g * g)
            self.firstMoment[name] = m
            self.secondMoment[name] = v
            tensor.data = tensor.data - self.learningRate * (m / correction1) / (np.sqrt(v / correction2) + self.eps)

        params.zeroGrad()
        LOGGER.debug(f"adam step {self.step} over {len(params)} tensors")
        return params

    def to_dict(self) -> dict:

        return {
            "learning_rate": self.learningRate,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "eps": self.eps,
            "grad_clip": self.gradClip,
            "step": self.step
        }

    def __str__(self) -> str:

        return f"AdamState(lr={self.learningRate}, beta1={self.beta1}, beta2={self.beta2}, eps={self.eps}, step={self.step})"
