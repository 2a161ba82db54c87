from typing import Any

from .FeatureMap import FeatureMap
from .ModelConfig import ModelConfig
from .VisualFeatures import VisualFeatures


class FeatureProvider():
    """Turns an image source into the configured d_a x n_h x n_w feature map."""

    def __init__(self, config: ModelConfig) -> None:

        self.config = config

    def featureMap(self, source: Any) -> FeatureMap:

        raise NotImplementedError

    def encode(self, source: Any) -> VisualFeatures:

        return self.featureMap(source).adaptivePool(self.config.n_h, self.config.n_w).flatten()
