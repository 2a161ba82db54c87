import os
import threading
from typing import Dict, Optional, Union

from .AcLiteException import DataError, DimensionError
from .FeatureMap import FeatureMap
from .FeatureProvider import FeatureProvider
from .ModelConfig import ModelConfig

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class FileFeatureProvider(FeatureProvider):

    def __init__(self, config: ModelConfig, root: Optional[str] = None) -> None:

        super().__init__(config)
        self.root = root
        self._cache: Dict[str, FeatureMap] = dict()
        self._lock = threading.Lock()

    def resolve(self, path: str) -> str:

        return path if self.root is None or os.path.isabs(path) else os.path.join(self.root, path)

    def load(self, path: str) -> FeatureMap:

        full = self.resolve(path)
        with self._lock:
            if full in self._cache:
                return self._cache[full]
        if not os.path.isfile(full):
            raise DataError(message=f"feature file {full} does not exist")
        featureMap = FeatureMap.load(full)
        LOGGER.debug(f"loaded {featureMap} from {full}")
        with self._lock:
            self._cache[full] = featureMap
        return featureMap

    def featureMap(self, source: Union[str, FeatureMap]) -> FeatureMap:

        featureMap = source if isinstance(source, FeatureMap) else self.load(source)
        if featureMap.channels != self.config.d_a:
            raise DimensionError.mismatch("feature channels", (featureMap.channels,), (self.config.d_a,))
        return featureMap

    def __str__(self) -> str:

        return f"FileFeatureProvider(root={self.root}, cached={len(self._cache)})"
