from typing import Optional

from .AcLiteException import ConfigurationError
from .ModelConfig import ModelConfig


class TrainConfig():

    REWARD_CIDER = "cider"
    REWARDS = [REWARD_CIDER]

    KEYS = ["learning_rate", "epochs", "batch_size", "max_len", "seed", "wiring", "reward", "beta1", "beta2", "eps",
            "grad_clip", "lr_decay_every", "lr_decay_rate", "scst_epochs", "init_checkpoint"]

    def __init__(self, learning_rate: float = 5e-4, epochs: int = 30, batch_size: int = 50, max_len: int = 16,
                 seed: int = 0, wiring: str = ModelConfig.WIRING_BUTD, reward: str = REWARD_CIDER,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8, grad_clip: Optional[float] = None,
                 lr_decay_every: Optional[int] = None, lr_decay_rate: float = 0.8, scst_epochs: int = 0,
                 init_checkpoint: Optional[str] = None) -> None:

        self.learning_rate = learning_rate
        self.epochs = epochs
        self.batch_size = batch_size
        self.max_len = max_len
        self.seed = seed
        self.wiring = wiring
        self.reward = reward
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.grad_clip = grad_clip
        self.lr_decay_every = lr_decay_every
        self.lr_decay_rate = lr_decay_rate
        self.scst_epochs = scst_epochs
        self.init_checkpoint = init_checkpoint

    def validate(self) -> 'TrainConfig':

        if self.learning_rate < 0:
            raise ConfigurationError(message=f"learning_rate must not be negative, got {self.learning_rate}")
        for key in ["epochs", "batch_size", "max_len"]:
            value = getattr(self, key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigurationError(message=f"{key} must be a positive integer, got {value}")
        if self.scst_epochs < 0:
            raise ConfigurationError(message=f"scst_epochs must not be negative, got {self.scst_epochs}")
        if self.wiring not in ModelConfig.WIRINGS:
            raise ConfigurationError(message=f"wiring must be one of {', '.join(ModelConfig.WIRINGS)}")
        if self.reward not in TrainConfig.REWARDS:
            raise ConfigurationError(message=f"reward must be one of {', '.join(TrainConfig.REWARDS)}")
        if self.lr_decay_every is not None and self.lr_decay_every < 1:
            raise ConfigurationError(message=f"lr_decay_every must be positive, got {self.lr_decay_every}")
        return self

    def learningRateAt(self, epoch: int) -> float:
        """Step decay: multiply by lr_decay_rate every lr_decay_every epochs."""

        if self.lr_decay_every is None:
            return self.learning_rate
        return self.learning_rate * self.lr_decay_rate ** (epoch // self.lr_decay_every)

    @staticmethod
    def from_dict(values: dict) -> 'TrainConfig':

        unknown = [k for k in values if k not in TrainConfig.KEYS]
        if unknown:
            raise ConfigurationError(message="unknown train config keys: %s" % ", ".join(unknown))
        return TrainConfig(**values)

    def to_dict(self) -> dict:

        return {k: getattr(self, k) for k in TrainConfig.KEYS}

    def __str__(self) -> str:

        return (f"TrainConfig(lr={self.learning_rate}, epochs={self.epochs}, batch={self.batch_size}, "
                f"max_len={self.max_len}, seed={self.seed})")
