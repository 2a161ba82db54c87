import json
import os
import struct
from collections import OrderedDict
from typing import Dict, Optional

import numpy as np

from .AcLiteException import DataError, FormatError
from .AdamState import AdamState
from .ModelParams import ModelParams

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class Checkpoint():
    """Named float64 tensors plus a JSON sidecar.

    Binary layout: b"ACLC", u32 version, u32 tensor count, then per tensor
    u16 name length, UTF-8 name, u8 rank, rank x u32 extents and the values
    as little-endian float64. All integers are little-endian. Optimizer
    moments are stored as extra tensors "adam.m.<name>" and "adam.v.<name>".
    """

    MAGIC = b"ACLC"
    VERSION = 1
    HEADER = struct.Struct("<4sII")
    ADAM_M = "adam.m."
    ADAM_V = "adam.v."

    def __init__(self, tensors: Dict[str, np.ndarray], meta: Optional[dict] = None) -> None:

        self.tensors: Dict[str, np.ndarray] = OrderedDict(tensors)
        self.meta: dict = dict(meta or {})

    @staticmethod
    def fromParams(params: ModelParams, adam: Optional[AdamState] = None, meta: Optional[dict] = None) -> 'Checkpoint':

        tensors = OrderedDict(params.snapshot())
        meta = dict(meta or {})
        if adam is not None:
            meta["adam"] = adam.to_dict()
            for name in params.names():
                if name in adam.firstMoment:
                    tensors[Checkpoint.ADAM_M + name] = adam.firstMoment[name].copy()
                    tensors[Checkpoint.ADAM_V + name] = adam.secondMoment[name].copy()
        return Checkpoint(tensors, meta)

    def modelTensors(self) -> Dict[str, np.ndarray]:

        return OrderedDict((n, t) for n, t in self.tensors.items()
                           if not n.startswith(Checkpoint.ADAM_M) and not n.startswith(Checkpoint.ADAM_V))

    def restore(self, params: ModelParams, adam: Optional[AdamState] = None) -> ModelParams:

        params.load(self.modelTensors())
        if adam is not None and "adam" in self.meta:
            adam.step = int(self.meta["adam"].get("step", 0))
            adam.firstMoment = dict()
            adam.secondMoment = dict()
            for name in params.names():
                if Checkpoint.ADAM_M + name in self.tensors:
                    adam.firstMoment[name] = self.tensors[Checkpoint.ADAM_M + name].copy()
                    adam.secondMoment[name] = self.tensors[Checkpoint.ADAM_V + name].copy()
        return params

    def toBytes(self) -> bytes:

        chunks = [Checkpoint.HEADER.pack(Checkpoint.MAGIC, Checkpoint.VERSION, len(self.tensors))]
        for name, values in self.tensors.items():
            encoded = name.encode("utf-8")
            values = np.asarray(values, dtype=np.float64)
            chunks.append(struct.pack("<H", len(encoded)))
            chunks.append(encoded)
            chunks.append(struct.pack("<B", values.ndim))
            chunks.append(struct.pack("<%iI" % values.ndim, *values.shape))
            chunks.append(values.astype("<f8").tobytes(order="C"))
        return b"".join(chunks)

    @staticmethod
    def fromBytes(raw: bytes) -> 'Checkpoint':

        def take(fmt: str, offset: int) -> tuple:
            size = struct.calcsize(fmt)
            if offset + size > len(raw):
                raise FormatError(message=f"checkpoint truncated: need {size} bytes, {len(raw) - offset} left",
                                  offset=offset)
            return struct.unpack_from(fmt, raw, offset), offset + size

        (magic, version, count), offset = take(Checkpoint.HEADER.format, 0)
        if magic != Checkpoint.MAGIC:
            LOGGER.debug(f"checkpoint header: {logManager.logger.hexstr(bytearray(raw[:Checkpoint.HEADER.size]))}")
            raise FormatError(message=f"bad checkpoint magic {logManager.logger.hexstr(bytearray(magic))}", offset=0)
        if version != Checkpoint.VERSION:
            raise FormatError(message=f"unsupported checkpoint version {version}", offset=4)

        tensors: Dict[str, np.ndarray] = OrderedDict()
        for _ in range(count):
            start = offset
            (length,), offset = take("<H", offset)
            if offset + length > len(raw):
                raise FormatError(message="checkpoint truncated inside a tensor name", offset=offset)
            try:
                name = raw[offset:offset + length].decode("utf-8")
            except UnicodeDecodeError:
                raise FormatError(message="tensor name is not UTF-8", offset=offset)
            offset += length
            if name in tensors:
                raise FormatError(message=f"duplicate tensor '{name}'", offset=start)
            (rank,), offset = take("<B", offset)
            extents, offset = take("<%iI" % rank, offset)
            size = int(np.prod(extents, dtype=np.int64))
            if offset + 8 * size > len(raw):
                raise FormatError(message=f"checkpoint truncated inside tensor '{name}'", offset=offset)
            values = np.frombuffer(raw, dtype="<f8", count=size, offset=offset).astype(np.float64)
            tensors[name] = values.reshape(extents)
            offset += 8 * size
        if offset != len(raw):
            raise FormatError(message=f"{len(raw) - offset} trailing bytes after the last tensor", offset=offset)
        return Checkpoint(tensors)

    @staticmethod
    def sidecarPath(path: str) -> str:

        return path + ".meta.json"

    def save(self, path: str) -> None:

        with open(path, "wb") as out:
            out.write(self.toBytes())
        with open(Checkpoint.sidecarPath(path), "w", encoding="utf-8") as out:
            out.write(json.dumps(self.meta, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        LOGGER.info(f"wrote checkpoint with {len(self.tensors)} tensors to {path}")

    @staticmethod
    def load(path: str) -> 'Checkpoint':

        if not os.path.isfile(path):
            raise DataError(message=f"checkpoint {path} does not exist")
        with open(path, "rb") as ins:
            checkpoint = Checkpoint.fromBytes(ins.read())
        sidecar = Checkpoint.sidecarPath(path)
        if os.path.isfile(sidecar):
            try:
                with open(sidecar, "r", encoding="utf-8") as ins:
                    checkpoint.meta = json.load(ins)
            except json.JSONDecodeError as e:
                raise DataError(message=f"checkpoint sidecar {sidecar} is not valid JSON: {e}")
        return checkpoint

    def to_dict(self) -> dict:

        return {"tensors": {n: list(t.shape) for n, t in self.tensors.items()}, "meta": self.meta}

    def __str__(self) -> str:

        return f"Checkpoint(tensors={len(self.tensors)}, epoch={self.meta.get('epoch')})"
