import struct
from typing import Union

import numpy as np

from .AcLiteException import DimensionError, FormatError
from .Tensor import Tensor
from .VisualFeatures import VisualFeatures

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class FeatureMap():
    """d_a × n_h × n_w encoder output, channel-major.

    File layout: b"ACLF", then little-endian u32 version, d_a, n_h, n_w,
    followed by d_a·n_h·n_w little-endian float32 values in (c, h, w) order.
    """

    MAGIC = b"ACLF"
    VERSION = 1
    HEADER = struct.Struct("<4sIIII")
    # refuse headers announcing more than 2**31 values
    MAX_VALUES = 2 ** 31

    def __init__(self, values: Union[Tensor, np.ndarray]) -> None:

        self.values: Tensor = values if isinstance(values, Tensor) else Tensor(values)
        if self.values.data.ndim != 3 or min(self.values.shape) < 1:
            raise DimensionError(message=f"feature map needs three positive extents, got {self.values.shape}")

    @property
    def channels(self) -> int:

        return self.values.shape[0]

    @property
    def height(self) -> int:

        return self.values.shape[1]

    @property
    def width(self) -> int:

        return self.values.shape[2]

    @staticmethod
    def poolingMatrix(source: int, target: int) -> np.ndarray:
        """source × target averaging weights; bin i spans floor(i·S/t) .. floor((i+1)·S/t)."""

        weights = np.zeros((source, target), dtype=np.float64)
        for i in range(target):
            start = (i * source) // target
            end = max(((i + 1) * source) // target, start + 1)
            weights[start:end, i] = 1.0 / (end - start)
        return weights

    def adaptivePool(self, target_h: int, target_w: int) -> 'FeatureMap':

        if target_h < 1 or target_w < 1 or target_h > self.height or target_w > self.width:
            raise DimensionError.mismatch("adaptivePool", self.values.shape[1:], (target_h, target_w))
        if (target_h, target_w) == (self.height, self.width):
            return self

        # separable average pooling: out[c] = P_h^T · X[c] · P_w
        rows = FeatureMap.poolingMatrix(self.height, target_h)
        cols = FeatureMap.poolingMatrix(self.width, target_w)
        spatial = Tensor(np.kron(rows, cols))
        flat = self.values.reshape(self.channels, self.height * self.width)
        pooled = flat.matmul(spatial)
        return FeatureMap(pooled.reshape(self.channels, target_h, target_w))

    def flatten(self) -> VisualFeatures:

        A = self.values.reshape(self.channels, self.height * self.width)
        return VisualFeatures(A=A, mean_pooled=A.meanOverColumns(), grid=(self.height, self.width))

    def toBytes(self) -> bytes:

        header = FeatureMap.HEADER.pack(FeatureMap.MAGIC, FeatureMap.VERSION, self.channels, self.height, self.width)
        return header + self.values.data.astype("<f4").tobytes(order="C")

    @staticmethod
    def fromBytes(raw: bytes) -> 'FeatureMap':

        if len(raw) < FeatureMap.HEADER.size:
            raise FormatError(message=f"feature file truncated: {len(raw)} bytes, header needs {FeatureMap.HEADER.size}",
                              offset=len(raw))
        magic, version, d_a, n_h, n_w = FeatureMap.HEADER.unpack_from(raw, 0)
        LOGGER.debug(f"feature header: {logManager.logger.hexstr(bytearray(raw[:FeatureMap.HEADER.size]))}")
        if magic != FeatureMap.MAGIC:
            raise FormatError(message=f"bad feature file magic {logManager.logger.hexstr(bytearray(magic))}", offset=0)
        if version != FeatureMap.VERSION:
            raise FormatError(message=f"unsupported feature file version {version}", offset=4)
        if d_a < 1 or n_h < 1 or n_w < 1:
            raise FormatError(message=f"feature extents must be positive, got {d_a}x{n_h}x{n_w}", offset=8)
        count = d_a * n_h * n_w
        if count > FeatureMap.MAX_VALUES:
            raise FormatError(message=f"feature extents {d_a}x{n_h}x{n_w} overflow", offset=8)
        expected = FeatureMap.HEADER.size + 4 * count
        if len(raw) != expected:
            raise FormatError(message=f"feature payload has {len(raw)} bytes, header announces {expected}",
                              offset=min(len(raw), expected))
        values = np.frombuffer(raw, dtype="<f4", count=count, offset=FeatureMap.HEADER.size)
        return FeatureMap(values.astype(np.float64).reshape(d_a, n_h, n_w))

    @staticmethod
    def load(path: str) -> 'FeatureMap':

        with open(path, "rb") as ins:
            return FeatureMap.fromBytes(ins.read())

    def save(self, path: str) -> None:

        with open(path, "wb") as out:
            out.write(self.toBytes())
        LOGGER.debug(f"wrote feature map {self.channels}x{self.height}x{self.width} to {path}")

    def to_dict(self) -> dict:

        return {"d_a": self.channels, "n_h": self.height, "n_w": self.width}

    def __str__(self) -> str:

        return f"FeatureMap(d_a={self.channels}, n_h={self.height}, n_w={self.width})"
