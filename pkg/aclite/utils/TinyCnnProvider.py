from typing import List, Optional, Tuple, Union

import numpy as np

from .AcLiteException import DataError, DimensionError
from .FeatureMap import FeatureMap
from .FeatureProvider import FeatureProvider
from .ModelConfig import ModelConfig
from .ModelParams import ModelParams
from .Tensor import Tensor

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class TinyCnnProvider(FeatureProvider):
    """Small trainable encoder for synthetic H x W x 3 images.

    Each layer is a 3x3 convolution with stride 2 and padding 1 followed by
    tanh; channel widths are config.cnn_channels and a final layer with d_a
    filters. Its parameters live under the "cnn." prefix of the shared store.
    """

    KERNEL = 3
    STRIDE = 2
    PADDING = 1

    def __init__(self, config: ModelConfig, params: ModelParams) -> None:

        super().__init__(config)
        self.params = params
        self.layers: List[Tuple[Tensor, Tensor]] = list()
        widths = [3] + list(config.cnn_channels) + [config.d_a]
        k = TinyCnnProvider.KERNEL
        for i, (c_in, c_out) in enumerate(zip(widths[:-1], widths[1:])):
            weight = params.glorot(f"cnn.conv{i}.weight", (c_out, c_in, k, k), fan_in=c_in * k * k, fan_out=c_out * k * k)
            bias = params.zeros(f"cnn.conv{i}.bias", (c_out,))
            self.layers.append((weight, bias))

    @staticmethod
    def layerShapes(config: ModelConfig, image_size: Optional[int] = None) -> List[Tuple[int, int, int, int]]:
        """(in_channels, out_channels, out_h, out_w) per conv layer for a square input."""

        size = config.image_size if image_size is None else image_size
        widths = [3] + list(config.cnn_channels) + [config.d_a]
        shapes = list()
        for c_in, c_out in zip(widths[:-1], widths[1:]):
            size = (size + 2 * TinyCnnProvider.PADDING - TinyCnnProvider.KERNEL) // TinyCnnProvider.STRIDE + 1
            shapes.append((c_in, c_out, size, size))
        return shapes

    @property
    def strideProduct(self) -> int:

        return TinyCnnProvider.STRIDE ** len(self.layers)

    def forward(self, image: Union[np.ndarray, Tensor]) -> FeatureMap:

        pixels = image.data if isinstance(image, Tensor) else np.asarray(image, dtype=np.float64)
        if pixels.ndim != 3 or pixels.shape[2] != 3:
            raise DimensionError(message=f"image must be H x W x 3, got shape {pixels.shape}")
        height, width, _ = pixels.shape
        if height % self.strideProduct or width % self.strideProduct:
            raise DimensionError(
                message=f"image extents {height}x{width} not divisible by the stride product {self.strideProduct}")

        x = Tensor(np.ascontiguousarray(np.transpose(pixels, (2, 0, 1))))
        for weight, bias in self.layers:
            x = x.conv2d(weight, bias, stride=TinyCnnProvider.STRIDE, padding=TinyCnnProvider.PADDING).tanh()
        return FeatureMap(x)

    def featureMap(self, source: Union[str, np.ndarray, Tensor]) -> FeatureMap:

        if isinstance(source, str):
            try:
                source = np.load(source)
            except (OSError, ValueError) as e:
                raise DataError(message=f"cannot read image {source}: {e}")
        return self.forward(source)

    def __str__(self) -> str:

        return "TinyCnnProvider(%s)" % " -> ".join(str(w.shape[0]) for w, _ in self.layers)
