"""Dense complex tensors and the vector <-> tensor machinery under the codec.

The single canonical element layout is column-major: entry (n_1, ..., n_P)
of a tensor with dimensions (N_1, ..., N_P) sits at flat position
n_1 + n_2*N_1 + n_3*N_2*N_1 + ... (first index fastest, 0-based here).
With this layout, vectorizing the rank-one tensor built from factors
(f_1, ..., f_P) yields exactly the Kronecker chain f_P (x) ... (x) f_1,
which is what the phase-shift reconstruction on the controller computes.

Tensor modes are numbered 1..P in all public signatures; the shift to
0-based numpy axes happens only inside :func:`unfold`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    "ComplexTensor",
    "tensorize",
    "vectorize",
    "unfold",
    "kron",
    "rank_one_tensor",
]


@dataclass(frozen=True)
class ComplexTensor:
    """Immutable dense order-P complex tensor.

    ``data`` holds the shaped array; its column-major raveling is the
    canonical flat form (see module docstring). The array is marked
    read-only so instances can be shared freely across workers.
    """

    data: np.ndarray

    def __post_init__(self):
        if self.data.ndim < 1:
            raise ValueError("tensor order must be at least 1")
        if any(d < 1 for d in self.data.shape):
            raise ValueError(f"every dimension must be >= 1, got {self.data.shape}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size


def tensorize(y: Sequence[complex] | np.ndarray, dims: Sequence[int]) -> ComplexTensor:
    """Reshape a flat vector into an order-P tensor, first index fastest."""
    vec = np.asarray(y, dtype=complex)
    if vec.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {vec.shape}")
    shape = tuple(int(d) for d in dims)
    if math.prod(shape) != vec.size:
        raise ValueError(
            f"vector of length {vec.size} does not fit dims {shape} "
            f"(product {math.prod(shape)})"
        )
    data = np.array(vec, dtype=complex).reshape(shape, order="F")
    data.setflags(write=False)
    return ComplexTensor(data)


def vectorize(t: ComplexTensor) -> np.ndarray:
    """Inverse of :func:`tensorize`; round trips are exact."""
    return t.data.reshape(-1, order="F").copy()


def unfold(t: ComplexTensor, mode: int) -> np.ndarray:
    """Mode-p unfolding with N_p rows, columns ordered first index fastest.

    For a rank-one tensor with factors (f_1, ..., f_P) the result equals
    f_p * (f_P (x) ... (x) f_{p+1} (x) f_{p-1} (x) ... (x) f_1)^T.
    """
    if not 1 <= mode <= t.order:
        raise ValueError(f"mode must be in 1..{t.order}, got {mode}")
    moved = np.moveaxis(t.data, mode - 1, 0)
    return moved.reshape(t.dims[mode - 1], -1, order="F")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two vectors; b's index varies fastest."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 1 or b.ndim != 1:
        raise ValueError("kron expects 1-D vectors")
    return np.kron(a, b)


def rank_one_tensor(factors: Sequence[np.ndarray]) -> ComplexTensor:
    """Outer product of P >= 1 vectors; entry (n_1..n_P) = prod_p f_p[n_p]."""
    if len(factors) == 0:
        raise ValueError("rank_one_tensor needs at least one factor")
    vecs = []
    for p, f in enumerate(factors):
        v = np.asarray(f, dtype=complex)
        if v.ndim != 1 or v.size == 0:
            raise ValueError(f"factor {p} must be a nonempty 1-D vector")
        vecs.append(v)
    data = reduce(np.multiply.outer, vecs)
    data = np.ascontiguousarray(data)
    data.setflags(write=False)
    return ComplexTensor(data)
