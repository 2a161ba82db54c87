import threading
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .AcLiteException import NumericDomainError

import logManager

LOGGER = logManager.logger.get_logger(__name__)


class TapeRecord():

    __slots__ = ("op", "output", "inputs", "backward", "macs")

    def __init__(self, op: str, output, inputs: Sequence, backward: Callable, macs: int) -> None:

        self.op = op
        self.output = output
        self.inputs = tuple(inputs)
        self.backward = backward
        self.macs = int(macs)


class ComputationTape():
    """Ordered record of primitive tensor operations.

    Tapes are entered as context managers; operations executed while a tape
    is active on the current thread are appended to it when at least one
    input requires a gradient (or always, for profiling tapes). Replaying the
    adjoints in reverse registration order is a valid topological order, so
    no graph sort is needed.
    """

    _local = threading.local()

    def __init__(self, profile: bool = False) -> None:

        self.records: List[TapeRecord] = list()
        self.profile = profile
        self.consumed = False

    @staticmethod
    def _stack() -> 'list[ComputationTape]':

        stack = getattr(ComputationTape._local, "stack", None)
        if stack is None:
            stack = list()
            ComputationTape._local.stack = stack
        return stack

    @staticmethod
    def active() -> Optional['ComputationTape']:

        stack = ComputationTape._stack()
        return stack[-1] if stack else None

    def __enter__(self) -> 'ComputationTape':

        ComputationTape._stack().append(self)
        return self

    def __exit__(self, exc_type, exc, tb) -> None:

        stack = ComputationTape._stack()
        if stack and stack[-1] is self:
            stack.pop()

    def record(self, op: str, output, inputs: Sequence, backward: Callable, macs: int) -> None:

        self.records.append(TapeRecord(op=op, output=output, inputs=inputs, backward=backward, macs=macs))

    def backward(self, loss) -> None:

        if loss.data.ndim != 0:
            raise NumericDomainError(
                message=f"backward needs a scalar loss, got shape {loss.shape}")
        if loss._tape is not self:
            raise NumericDomainError(
                message="loss was not produced by operations recorded on this tape")
        if self.consumed:
            raise NumericDomainError(
                message="tape has already been replayed, call reset() before another backward")

        loss.grad = np.ones((), dtype=np.float64)
        for record in reversed(self.records):
            g = record.output.grad
            if g is None:
                continue
            grads = record.backward(g)
            for tensor, gi in zip(record.inputs, grads):
                if gi is None or not tensor.requires_grad:
                    continue
                if tensor.grad is None:
                    tensor.grad = np.array(gi, dtype=np.float64)
                else:
                    tensor.grad = tensor.grad + gi

        self.consumed = True
        LOGGER.debug(f"replayed {len(self.records)} tape records")

    def reset(self) -> None:

        self.records = list()
        self.consumed = False

    def totalMacs(self) -> int:

        return sum(r.macs for r in self.records)

    def macsByOp(self) -> Dict[str, int]:

        counts: Dict[str, int] = dict()
        for r in self.records:
            counts[r.op] = counts.get(r.op, 0) + r.macs
        return counts

    def __len__(self) -> int:

        return len(self.records)

    def __str__(self) -> str:

        return f"ComputationTape(records={len(self.records)}, macs={self.totalMacs()}, consumed={self.consumed})"
