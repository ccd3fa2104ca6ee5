"""Minimal dense-tensor autodiff over float64 numpy arrays.

Every op builds the backward graph through parent links; backward() runs
reverse topological order from a scalar loss. Sizes here are desk scale,
so clarity and exact reproducibility win over speed; the heavy matmuls
ride numpy's BLAS either way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from vulspg.errors import DimensionError, UsageError


class Tensor:
    __slots__ = ("data", "requires_grad", "grad", "_parents", "_backward")

    def __init__(
        self,
        data,
        requires_grad: bool = False,
        _parents: tuple["Tensor", ...] = (),
        _backward: Optional[Callable[[np.ndarray], None]] = None,
    ):
        arr = np.asarray(data, dtype=np.float64)
        self.data = arr
        self.requires_grad = requires_grad
        self.grad: Optional[np.ndarray] = None
        self._parents = _parents
        self._backward = _backward

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    def __repr__(self):
        return f"Tensor(shape={self.shape}, grad={'set' if self.grad is not None else 'none'})"

    def _accumulate(self, g: np.ndarray):
        if self.grad is None:
            self.grad = np.zeros_like(self.data)
        self.grad += g

    def zero_grad(self):
        self.grad = None

    def backward(self):
        if self.data.shape != ():
            raise UsageError(f"backward needs a scalar loss, got shape {self.shape}")
        topo: list[Tensor] = []
        visited: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                topo.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                if id(p) not in visited:
                    stack.append((p, False))
        self._accumulate(np.ones_like(self.data))
        for node in reversed(topo):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    # Operator sugar used in a few spots; the named functions below are
    # the primary surface.
    def __add__(self, other: "Tensor") -> "Tensor":
        return add(self, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return sub(self, other)

    def __mul__(self, other: "Tensor") -> "Tensor":
        return mul(self, other)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        return matmul(self, other)


def _check_same_shape(op: str, a: Tensor, b: Tensor):
    if a.shape != b.shape:
        raise DimensionError(f"{op}: shape mismatch {a.shape} vs {b.shape}")


def add(a: Tensor, b: Tensor) -> Tensor:
    _check_same_shape("add", a, b)
    out = Tensor(a.data + b.data, _parents=(a, b))
    out._backward = lambda g: (a._accumulate(g), b._accumulate(g))
    return out


def sub(a: Tensor, b: Tensor) -> Tensor:
    _check_same_shape("sub", a, b)
    out = Tensor(a.data - b.data, _parents=(a, b))
    out._backward = lambda g: (a._accumulate(g), b._accumulate(-g))
    return out


def mul(a: Tensor, b: Tensor) -> Tensor:
    _check_same_shape("mul", a, b)
    out = Tensor(a.data * b.data, _parents=(a, b))
    out._backward = lambda g: (a._accumulate(g * b.data), b._accumulate(g * a.data))
    return out


def scale(a: Tensor, s: float) -> Tensor:
    out = Tensor(a.data * s, _parents=(a,))
    out._backward = lambda g: a._accumulate(g * s)
    return out


def neg(a: Tensor) -> Tensor:
    return scale(a, -1.0)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.data.ndim == 0 or b.data.ndim == 0 or a.data.ndim > 2 or b.data.ndim > 2:
        raise DimensionError(f"matmul: unsupported ranks {a.shape} @ {b.shape}")
    if a.data.shape[-1] != b.data.shape[0]:
        raise DimensionError(f"matmul: shape mismatch {a.shape} @ {b.shape}")
    out = Tensor(np.matmul(a.data, b.data), _parents=(a, b))

    def backward(g: np.ndarray):
        an, bn = a.data.ndim, b.data.ndim
        if an == 2 and bn == 2:
            a._accumulate(g @ b.data.T)
            b._accumulate(a.data.T @ g)
        elif an == 1 and bn == 2:
            a._accumulate(b.data @ g)
            b._accumulate(np.outer(a.data, g))
        elif an == 2 and bn == 1:
            a._accumulate(np.outer(g, b.data))
            b._accumulate(a.data.T @ g)
        else:  # vector dot product
            a._accumulate(g * b.data)
            b._accumulate(g * a.data)

    out._backward = backward
    return out


def relu(a: Tensor) -> Tensor:
    out = Tensor(np.maximum(a.data, 0.0), _parents=(a,))
    out._backward = lambda g: a._accumulate(g * (a.data > 0))
    return out


def tanh(a: Tensor) -> Tensor:
    y = np.tanh(a.data)
    out = Tensor(y, _parents=(a,))
    out._backward = lambda g: a._accumulate(g * (1.0 - y * y))
    return out


def softmax(a: Tensor, axis: int = -1) -> Tensor:
    shifted = a.data - np.max(a.data, axis=axis, keepdims=True)
    e = np.exp(shifted)
    y = e / np.sum(e, axis=axis, keepdims=True)
    out = Tensor(y, _parents=(a,))

    def backward(g: np.ndarray):
        dot = np.sum(g * y, axis=axis, keepdims=True)
        a._accumulate((g - dot) * y)

    out._backward = backward
    return out


def log(a: Tensor) -> Tensor:
    out = Tensor(np.log(a.data), _parents=(a,))
    out._backward = lambda g: a._accumulate(g / a.data)
    return out


def clamp_min(a: Tensor, floor: float) -> Tensor:
    out = Tensor(np.maximum(a.data, floor), _parents=(a,))
    out._backward = lambda g: a._accumulate(g * (a.data > floor))
    return out


def tsum(a: Tensor) -> Tensor:
    out = Tensor(np.sum(a.data), _parents=(a,))
    out._backward = lambda g: a._accumulate(np.full_like(a.data, float(g)))
    return out


def mean(a: Tensor) -> Tensor:
    n = a.data.size
    out = Tensor(np.mean(a.data), _parents=(a,))
    out._backward = lambda g: a._accumulate(np.full_like(a.data, float(g) / n))
    return out


def flatten(a: Tensor) -> Tensor:
    out = Tensor(a.data.reshape(-1), _parents=(a,))
    out._backward = lambda g: a._accumulate(g.reshape(a.data.shape))
    return out


def transpose(a: Tensor) -> Tensor:
    if a.data.ndim != 2:
        raise DimensionError(f"transpose: expected a matrix, got {a.shape}")
    out = Tensor(a.data.T, _parents=(a,))
    out._backward = lambda g: a._accumulate(g.T)
    return out


def concat(tensors: Iterable[Tensor], axis: int = 0) -> Tensor:
    ts = list(tensors)
    if not ts:
        raise DimensionError("concat of zero tensors")
    out = Tensor(np.concatenate([t.data for t in ts], axis=axis), _parents=tuple(ts))
    sizes = [t.data.shape[axis] for t in ts]

    def backward(g: np.ndarray):
        offset = 0
        for t, size in zip(ts, sizes):
            idx = [slice(None)] * g.ndim
            idx[axis] = slice(offset, offset + size)
            t._accumulate(g[tuple(idx)])
            offset += size

    out._backward = backward
    return out


def stack(tensors: Iterable[Tensor]) -> Tensor:
    """Stack scalar tensors into a vector."""
    ts = list(tensors)
    for t in ts:
        if t.data.shape != ():
            raise DimensionError(f"stack expects scalars, got {t.shape}")
    out = Tensor(np.array([t.data for t in ts]), _parents=tuple(ts))

    def backward(g: np.ndarray):
        for i, t in enumerate(ts):
            t._accumulate(np.asarray(g[i]))

    out._backward = backward
    return out


def smul(a: Tensor, s: Tensor) -> Tensor:
    """Multiply a tensor by a scalar tensor (both differentiable)."""
    if s.data.shape != ():
        raise DimensionError(f"smul scale must be scalar, got {s.shape}")
    out = Tensor(a.data * s.data, _parents=(a, s))

    def backward(g: np.ndarray):
        a._accumulate(g * s.data)
        s._accumulate(np.asarray(np.sum(g * a.data)))

    out._backward = backward
    return out


def stack_rows(tensors: Iterable[Tensor]) -> Tensor:
    """Stack equal-width vectors into a matrix, one per row."""
    ts = list(tensors)
    if not ts:
        raise DimensionError("stack_rows of zero tensors")
    width = ts[0].data.shape
    for t in ts:
        if t.data.ndim != 1 or t.data.shape != width:
            raise DimensionError(f"stack_rows expects equal vectors, got {t.shape} vs {width}")
    out = Tensor(np.stack([t.data for t in ts]), _parents=tuple(ts))

    def backward(g: np.ndarray):
        for i, t in enumerate(ts):
            t._accumulate(g[i])

    out._backward = backward
    return out


def pick(a: Tensor, index: int) -> Tensor:
    if a.data.ndim != 1:
        raise DimensionError(f"pick expects a vector, got {a.shape}")
    out = Tensor(a.data[index], _parents=(a,))

    def backward(g: np.ndarray):
        buf = np.zeros_like(a.data)
        buf[index] = float(g)
        a._accumulate(buf)

    out._backward = backward
    return out


def one_hot(index: int, size: int) -> Tensor:
    buf = np.zeros(size)
    if not 0 <= index < size:
        raise DimensionError(f"one_hot index {index} outside [0, {size})")
    buf[index] = 1.0
    return Tensor(buf)


def constant(data) -> Tensor:
    return Tensor(np.asarray(data, dtype=np.float64))


def parameter(data) -> Tensor:
    return Tensor(np.asarray(data, dtype=np.float64), requires_grad=True)


# -- optimizer ----------------------------------------------------------


@dataclass
class AdamState:
    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    step: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(params: dict[str, Tensor], state: AdamState):
    """One bias-corrected Adam update; clears gradients afterwards."""
    for name, p in params.items():
        if p.grad is None:
            raise UsageError(f"parameter {name!r} has no gradient")
    state.step += 1
    b1, b2 = state.beta1, state.beta2
    bias1 = 1.0 - b1 ** state.step
    bias2 = 1.0 - b2 ** state.step
    for name, p in params.items():
        g = p.grad
        m = state.m.setdefault(name, np.zeros_like(p.data))
        v = state.v.setdefault(name, np.zeros_like(p.data))
        m += (1.0 - b1) * (g - m)
        v += (1.0 - b2) * (g * g - v)
        p.data -= state.lr * (m / bias1) / (np.sqrt(v / bias2) + state.eps)
        p.grad = None
