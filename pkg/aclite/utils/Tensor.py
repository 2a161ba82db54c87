from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from .AcLiteException import DimensionError, NumericDomainError, VocabularyError
from .ComputationTape import ComputationTape

# per-element cost of one softmax / log-softmax: shift, exp, accumulate, normalize
SOFTMAX_OPS = 4

Number = Union[int, float]


def _unbroadcast(g: np.ndarray, shape: tuple) -> np.ndarray:

    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for axis, extent in enumerate(shape):
        if extent == 1 and g.shape[axis] != 1:
            g = g.sum(axis=axis, keepdims=True)
    return g


class Tensor():
    """Dense float64 array with an optional gradient slot.

    Every operation below is a primitive of the computation tape: when a
    tape is active and an input requires a gradient, the operation registers
    its adjoint together with its multiply-accumulate count.
    """

    __slots__ = ("data", "grad", "requires_grad", "_tape", "__weakref__")

    def __init__(self, data, requires_grad: bool = False) -> None:

        self.data: np.ndarray = np.array(data, dtype=np.float64)
        self.grad: Optional[np.ndarray] = None
        self.requires_grad = requires_grad
        self._tape: Optional[ComputationTape] = None

    @staticmethod
    def zeros(*shape: int, requires_grad: bool = False) -> 'Tensor':

        return Tensor(np.zeros(shape, dtype=np.float64), requires_grad=requires_grad)

    @staticmethod
    def lift(value: Union['Tensor', Number, np.ndarray]) -> 'Tensor':

        return value if isinstance(value, Tensor) else Tensor(value)

    @staticmethod
    def _result(op: str, data: np.ndarray, inputs: Sequence['Tensor'], backward: Callable, macs: int) -> 'Tensor':

        out = Tensor.__new__(Tensor)
        out.data = data
        out.grad = None
        out._tape = None
        tape = ComputationTape.active()
        needs_grad = any(t.requires_grad for t in inputs)
        out.requires_grad = tape is not None and needs_grad
        if tape is not None and (needs_grad or tape.profile):
            tape.record(op=op, output=out, inputs=inputs, backward=backward, macs=macs)
            out._tape = tape
        return out

    @property
    def shape(self) -> tuple:

        return tuple(self.data.shape)

    @property
    def size(self) -> int:

        return int(self.data.size)

    def item(self) -> float:

        return float(self.data)

    def numpy(self) -> np.ndarray:

        return self.data

    def detach(self) -> 'Tensor':

        return Tensor(self.data)

    def backward(self) -> None:

        if self._tape is None:
            raise NumericDomainError(
                message="backward called on a tensor that was not recorded on a computation tape")
        self._tape.backward(self)

    # *** linear algebra ***

    def matmul(self, other: 'Tensor') -> 'Tensor':

        a, b = self.data, other.data
        if a.ndim not in (1, 2) or b.ndim not in (1, 2) or a.shape[-1] != b.shape[0]:
            raise DimensionError.mismatch("matmul", a.shape, b.shape)

        a2 = a if a.ndim == 2 else a.reshape(1, -1)
        b2 = b if b.ndim == 2 else b.reshape(-1, 1)
        out = a @ b

        def backward(g: np.ndarray):
            g2 = np.reshape(g, (a2.shape[0], b2.shape[1]))
            return (g2 @ b2.T).reshape(a.shape), (a2.T @ g2).reshape(b.shape)

        return Tensor._result("matmul", out, (self, other), backward,
                              macs=a2.shape[0] * a2.shape[1] * b2.shape[1])

    def __matmul__(self, other: 'Tensor') -> 'Tensor':

        return self.matmul(other)

    # *** elementwise binary ***

    def _binary(self, op: str, other, forward: Callable, grads: Callable) -> 'Tensor':

        other = Tensor.lift(other)
        a, b = self.data, other.data
        try:
            shape = np.broadcast_shapes(a.shape, b.shape)
        except ValueError:
            raise DimensionError.mismatch(op, a.shape, b.shape)
        out = forward(a, b)

        def backward(g: np.ndarray):
            ga, gb = grads(a, b, g)
            return _unbroadcast(ga, a.shape), _unbroadcast(gb, b.shape)

        return Tensor._result(op, out, (self, other), backward, macs=int(np.prod(shape)))

    def add(self, other) -> 'Tensor':

        return self._binary("add", other, lambda a, b: a + b, lambda a, b, g: (g, g))

    def sub(self, other) -> 'Tensor':

        return self._binary("sub", other, lambda a, b: a - b, lambda a, b, g: (g, -g))

    def hadamard(self, other) -> 'Tensor':

        return self._binary("hadamard", other, lambda a, b: a * b, lambda a, b, g: (g * b, g * a))

    def __add__(self, other) -> 'Tensor':

        return self.add(other)

    def __radd__(self, other) -> 'Tensor':

        return Tensor.lift(other).add(self)

    def __sub__(self, other) -> 'Tensor':

        return self.sub(other)

    def __rsub__(self, other) -> 'Tensor':

        return Tensor.lift(other).sub(self)

    def __mul__(self, other) -> 'Tensor':

        return self.hadamard(other)

    def __rmul__(self, other) -> 'Tensor':

        return Tensor.lift(other).hadamard(self)

    def __neg__(self) -> 'Tensor':

        return self.hadamard(-1.0)

    # *** elementwise unary ***

    def sigmoid(self) -> 'Tensor':

        s = 0.5 * (np.tanh(0.5 * self.data) + 1.0)
        return Tensor._result("sigmoid", s, (self,), lambda g: (g * s * (1.0 - s),), macs=s.size)

    def tanh(self) -> 'Tensor':

        t = np.tanh(self.data)
        return Tensor._result("tanh", t, (self,), lambda g: (g * (1.0 - t * t),), macs=t.size)

    # *** normalization ***

    def _checkFinite(self, op: str) -> None:

        if not np.all(np.isfinite(self.data)):
            raise NumericDomainError(message=f"{op}: input contains NaN or Inf")

    def softmax(self, axis: int = -1) -> 'Tensor':

        self._checkFinite("softmax")
        e = np.exp(self.data - np.max(self.data, axis=axis, keepdims=True))
        s = e / np.sum(e, axis=axis, keepdims=True)

        def backward(g: np.ndarray):
            return (s * (g - np.sum(g * s, axis=axis, keepdims=True)),)

        return Tensor._result("softmax", s, (self,), backward, macs=SOFTMAX_OPS * s.size)

    def logSoftmax(self, axis: int = -1) -> 'Tensor':

        self._checkFinite("logSoftmax")
        shifted = self.data - np.max(self.data, axis=axis, keepdims=True)
        out = shifted - np.log(np.sum(np.exp(shifted), axis=axis, keepdims=True))

        def backward(g: np.ndarray):
            return (g - np.exp(out) * np.sum(g, axis=axis, keepdims=True),)

        return Tensor._result("logSoftmax", out, (self,), backward, macs=SOFTMAX_OPS * out.size)

    # *** reductions ***

    def sum(self) -> 'Tensor':

        shape = self.data.shape
        return Tensor._result("sum", np.array(np.sum(self.data)), (self,),
                              lambda g: (np.broadcast_to(g, shape).copy(),), macs=self.size)

    def meanOverColumns(self) -> 'Tensor':

        if self.data.ndim != 2:
            raise DimensionError(message=f"meanOverColumns: expected a matrix, got shape {self.shape}")
        rows, cols = self.data.shape
        out = np.sum(self.data, axis=1) / cols

        def backward(g: np.ndarray):
            return (np.repeat(g.reshape(rows, 1), cols, axis=1) / cols,)

        return Tensor._result("meanOverColumns", out, (self,), backward, macs=rows * cols)

    # *** structural ***

    def reshape(self, *shape: int) -> 'Tensor':

        original = self.data.shape
        try:
            out = self.data.reshape(shape)
        except ValueError:
            raise DimensionError.mismatch("reshape", original, shape)
        return Tensor._result("reshape", out, (self,), lambda g: (g.reshape(original),), macs=0)

    @staticmethod
    def concat(tensors: Sequence['Tensor'], axis: int = 0) -> 'Tensor':

        arrays = [t.data for t in tensors]
        try:
            out = np.concatenate(arrays, axis=axis)
        except ValueError:
            raise DimensionError(
                message="concat: incompatible shapes %s" % ", ".join(str(a.shape) for a in arrays))
        bounds = np.cumsum([a.shape[axis] for a in arrays])[:-1]

        def backward(g: np.ndarray):
            return tuple(np.split(g, bounds, axis=axis))

        return Tensor._result("concat", out, tuple(tensors), backward, macs=0)

    @staticmethod
    def stack(tensors: Sequence['Tensor']) -> 'Tensor':

        arrays = [t.data for t in tensors]
        try:
            out = np.stack(arrays, axis=0)
        except ValueError:
            raise DimensionError(
                message="stack: incompatible shapes %s" % ", ".join(str(a.shape) for a in arrays))

        def backward(g: np.ndarray):
            return tuple(g[i] for i in range(len(arrays)))

        return Tensor._result("stack", out, tuple(tensors), backward, macs=0)

    def gatherRow(self, index: int) -> 'Tensor':

        if self.data.ndim != 2:
            raise DimensionError(message=f"gatherRow: expected a matrix, got shape {self.shape}")
        rows = self.data.shape[0]
        if not 0 <= index < rows:
            raise VocabularyError(message=f"row id {index} outside [0, {rows})")
        shape = self.data.shape

        def backward(g: np.ndarray):
            full = np.zeros(shape, dtype=np.float64)
            full[index] = g
            return (full,)

        return Tensor._result("gatherRow", self.data[index].copy(), (self,), backward, macs=0)

    def gatherEntries(self, ids: Sequence[int]) -> 'Tensor':
        """Pick entry ids[t] of row t of a T×|V| matrix."""

        if self.data.ndim != 2 or len(ids) != self.data.shape[0]:
            raise DimensionError.mismatch("gatherEntries", self.data.shape, (len(ids),))
        rows, cols = self.data.shape
        index = np.asarray(ids, dtype=np.int64)
        if np.any(index < 0) or np.any(index >= cols):
            raise VocabularyError(message=f"token id outside [0, {cols}) in {list(ids)}")
        positions = np.arange(rows)

        def backward(g: np.ndarray):
            full = np.zeros((rows, cols), dtype=np.float64)
            full[positions, index] = g
            return (full,)

        return Tensor._result("gatherEntries", self.data[positions, index].copy(), (self,), backward, macs=0)

    # *** losses ***

    def crossEntropy(self, targets: Sequence[int], mask: Optional[Sequence[float]] = None) -> 'Tensor':
        """Mean negative log-probability of targets over unmasked rows."""

        if self.data.ndim != 2 or len(targets) != self.data.shape[0]:
            raise DimensionError.mismatch("crossEntropy", self.data.shape, (len(targets),))
        self._checkFinite("crossEntropy")
        rows, cols = self.data.shape
        index = np.asarray(targets, dtype=np.int64)
        if np.any(index < 0) or np.any(index >= cols):
            raise VocabularyError(message=f"target id outside [0, {cols}) in {list(targets)}")
        weights = np.ones(rows, dtype=np.float64) if mask is None else np.asarray(mask, dtype=np.float64)
        if weights.shape != (rows,):
            raise DimensionError.mismatch("crossEntropy mask", weights.shape, (rows,))

        shifted = self.data - np.max(self.data, axis=1, keepdims=True)
        logp = shifted - np.log(np.sum(np.exp(shifted), axis=1, keepdims=True))
        positions = np.arange(rows)
        count = float(np.sum(weights))
        loss = -np.sum(weights * logp[positions, index]) / count if count > 0 else 0.0

        def backward(g: np.ndarray):
            if count == 0:
                return (np.zeros((rows, cols), dtype=np.float64),)
            d = np.exp(logp)
            d[positions, index] -= 1.0
            return (d * (weights / count).reshape(rows, 1) * g,)

        return Tensor._result("crossEntropy", np.array(loss), (self,), backward,
                              macs=SOFTMAX_OPS * rows * cols + rows)

    # *** convolution ***

    def conv2d(self, weight: 'Tensor', bias: Optional['Tensor'] = None, stride: int = 1, padding: int = 0) -> 'Tensor':
        """Cross-correlation of a C×H×W input with an O×C×k×k kernel."""

        x, w = self.data, weight.data
        if x.ndim != 3 or w.ndim != 4 or w.shape[1] != x.shape[0] or w.shape[2] != w.shape[3]:
            raise DimensionError.mismatch("conv2d", x.shape, w.shape)
        channels, height, width = x.shape
        filters, _, k, _ = w.shape
        out_h = (height + 2 * padding - k) // stride + 1
        out_w = (width + 2 * padding - k) // stride + 1
        if out_h < 1 or out_w < 1:
            raise DimensionError.mismatch("conv2d", x.shape, w.shape)

        padded = np.pad(x, ((0, 0), (padding, padding), (padding, padding)))
        cols = np.empty((channels, k, k, out_h, out_w), dtype=np.float64)
        for i in range(k):
            for j in range(k):
                cols[:, i, j] = padded[:, i:i + stride * out_h:stride, j:j + stride * out_w:stride]
        cols2 = cols.reshape(channels * k * k, out_h * out_w)
        w2 = w.reshape(filters, -1)
        out = (w2 @ cols2).reshape(filters, out_h, out_w)
        if bias is not None:
            out = out + bias.data.reshape(filters, 1, 1)

        def backward(g: np.ndarray):
            g2 = g.reshape(filters, out_h * out_w)
            gw = (g2 @ cols2.T).reshape(w.shape)
            gcols = (w2.T @ g2).reshape(channels, k, k, out_h, out_w)
            gpad = np.zeros_like(padded)
            for i in range(k):
                for j in range(k):
                    gpad[:, i:i + stride * out_h:stride, j:j + stride * out_w:stride] += gcols[:, i, j]
            gx = gpad[:, padding:padding + height, padding:padding + width]
            grads = [gx, gw]
            if bias is not None:
                grads.append(g2.sum(axis=1))
            return tuple(grads)

        inputs = (self, weight) if bias is None else (self, weight, bias)
        macs = filters * channels * k * k * out_h * out_w + (filters * out_h * out_w if bias is not None else 0)
        return Tensor._result("conv2d", out, inputs, backward, macs=macs)

    def __repr__(self) -> str:

        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

    def __str__(self) -> str:

        return f"Tensor(shape={self.shape}, data={np.array2string(self.data, precision=4)})"
