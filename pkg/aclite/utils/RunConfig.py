import json
from typing import Any, Dict, Optional

from .AcLiteException import ConfigurationError
from .ComplexityReport import ComplexityReport
from .EncoderCostTable import EncoderCostTable
from .ModelConfig import ModelConfig
from .TrainConfig import TrainConfig

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class RunConfig():
    """Flat settings document for every command.

    Model and training keys are shared with ModelConfig and TrainConfig;
    the remaining keys are file paths and per-command flags. Values given
    on the command line override values read from a config file.
    """

    PATHS = ["manifest", "vocab", "checkpoint", "out", "hypotheses"]
    FLAGS = {
        "beam_size": 6,
        "min_count": 5,
        "convention": ComplexityReport.MAC,
        "backbone": EncoderCostTable.DEFAULT,
        "split": "test",
        "workers": 1,
        "seq_len": 16,
        "format": "markdown",
        "mode": "xe",
        "count": 90,
        "images": False
    }
    KEYS = list(dict.fromkeys(ModelConfig.KEYS + TrainConfig.KEYS + PATHS + list(FLAGS)))

    # tiny run that trains the toy corpus on one core in minutes
    DESK = {
        "d_a": 64, "n_h": 4, "n_w": 4, "d_h": 32, "d_e": 32, "d_w": 32, "vocab_size": None,
        "learning_rate": 5e-3, "epochs": 200, "batch_size": 10, "beam_size": 3
    }

    def __init__(self, values: Optional[Dict[str, Any]] = None, desk: bool = False) -> None:

        model = ModelConfig.full().to_dict()
        model["vocab_size"] = None
        self.values: Dict[str, Any] = dict(model)
        self.values.update(TrainConfig().to_dict())
        self.values.update({k: None for k in RunConfig.PATHS})
        self.values.update(RunConfig.FLAGS)
        if desk:
            self.values.update(RunConfig.DESK)
        self.desk = desk
        if values:
            self.override(values)

    def override(self, values: Dict[str, Any]) -> 'RunConfig':

        unknown = [k for k in values if k not in RunConfig.KEYS]
        if unknown:
            raise ConfigurationError(message="unknown config keys: %s" % ", ".join(sorted(unknown)))
        for key, value in values.items():
            if value is not None:
                self.values[key] = value
        return self

    @staticmethod
    def load(path: str, desk: bool = False) -> 'RunConfig':

        try:
            with open(path, "r", encoding="utf-8") as ins:
                document = json.load(ins)
        except FileNotFoundError:
            raise ConfigurationError(message=f"config file {path} does not exist")
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise ConfigurationError(message=f"config file {path} is not valid UTF-8 JSON: {e}")
        if not isinstance(document, dict):
            raise ConfigurationError(message=f"config file {path} must hold a JSON object")
        LOGGER.debug(f"loaded {len(document)} settings from {path}")
        return RunConfig(document, desk=desk)

    def __getitem__(self, key: str) -> Any:

        if key not in self.values:
            raise ConfigurationError(message=f"unknown config key '{key}'")
        return self.values[key]

    def require(self, *keys: str) -> None:

        missing = [k for k in keys if self.values.get(k) is None]
        if missing:
            raise ConfigurationError(message="missing required settings: %s" % ", ".join(missing))

    def modelConfig(self, vocab_size: Optional[int] = None) -> ModelConfig:

        values = {k: self.values[k] for k in ModelConfig.KEYS}
        if vocab_size is not None:
            values["vocab_size"] = vocab_size
        return ModelConfig.from_dict(values).validate()

    def trainConfig(self) -> TrainConfig:

        return TrainConfig.from_dict({k: self.values[k] for k in TrainConfig.KEYS}).validate()

    def to_dict(self) -> dict:

        return dict(self.values)

    def __str__(self) -> str:

        return "RunConfig(%s)" % ", ".join(f"{k}={v}" for k, v in self.values.items() if v is not None)
