"""Finite-difference derivative tensors.

Central differences realize the order-k tensor of mixed partials of a scalar
field and the order-4 derivative of a matrix field with respect to a matrix
argument.  Probes are cached per evaluation point, so repeated-index entries
reuse function values.

A common alternative convention flattens each derivative level into an
n x n^(k-1) matrix by recursive vectorization; that form carries the same
numbers (a fixed index bijection maps one onto the other) but obscures which
variable each column differentiates, so only the tensor form is provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable

import numpy as np

from .errors import ShapeError
from .tensor import DenseTensor

MAX_DERIVATIVE_ORDER = 4


@dataclass(frozen=True)
class ScalarField:
    """Real-valued function of an n-vector."""

    evaluator: Callable[[np.ndarray], float]
    dimension: int


@dataclass(frozen=True)
class MatrixField:
    """Matrix-valued function of a matrix of the same shape."""

    evaluator: Callable[[np.ndarray], np.ndarray]


def default_step(k: int, scale: float) -> float:
    """Step balancing truncation against rounding for an order-k stencil."""
    eps = np.finfo(np.float64).eps
    return eps ** (1.0 / (k + 2)) * (1.0 + scale)


def hessian_tensor(f, x0, k: int, h: float | None = None, symmetrize: bool = True) -> DenseTensor:
    """Order-k tensor of mixed partial derivatives of f at x0, by composed
    central differences (2^k probes per entry).  With `symmetrize` the result
    is averaged over index permutations."""
    evaluator = f.evaluator if isinstance(f, ScalarField) else f
    point = np.asarray(x0, dtype=np.float64)
    if point.ndim != 1:
        raise ShapeError(f"x0 must be a vector, got shape {point.shape}")
    if isinstance(f, ScalarField) and f.dimension != point.size:
        raise ShapeError(f"x0 length {point.size} does not match field dimension {f.dimension}")
    if not 1 <= k <= MAX_DERIVATIVE_ORDER:
        raise ValueError(f"derivative order must be in 1..{MAX_DERIVATIVE_ORDER}, got {k}")
    if h is None:
        h = default_step(k, float(np.max(np.abs(point))) if point.size else 0.0)
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")

    n = point.size
    cache: dict[tuple[int, ...], float] = {}

    def probe(offsets: np.ndarray) -> float:
        key = tuple(int(o) for o in offsets)
        if key not in cache:
            value = float(evaluator(point + h * offsets))
            if not np.isfinite(value):
                raise ValueError(f"non-finite probe value at offsets {key}")
            cache[key] = value
        return cache[key]

    out = np.zeros([n] * k)
    for index in np.ndindex(*([n] * k)):
        acc = 0.0
        for signs in product((-1, 1), repeat=k):
            offsets = np.zeros(n)
            for axis, sign in zip(index, signs):
                offsets[axis] += sign
            weight = 1.0
            for sign in signs:
                weight *= sign
            acc += weight * probe(offsets)
        out[index] = acc / (2.0 * h) ** k
    if symmetrize and k > 1:
        out = sum(out.transpose(p) for p in permutations(range(k))) / float(
            math.factorial(k)
        )
    return DenseTensor(out)


def matrix_derivative_tensor(y, x0, h: float | None = None) -> DenseTensor:
    """Order-4 derivative of the matrix field y at x0: entry (i1, i2, j1, j2)
    estimates d y[i1, j1] / d x[i2, j2] by central differences."""
    evaluator = y.evaluator if isinstance(y, MatrixField) else y
    point = np.asarray(x0, dtype=np.float64)
    if point.ndim != 2:
        raise ShapeError(f"x0 must be a matrix, got shape {point.shape}")
    if h is None:
        h = default_step(1, float(np.max(np.abs(point))) if point.size else 0.0)
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    m, n = point.shape
    out = np.zeros((m, m, n, n))
    for i2 in range(m):
        for j2 in range(n):
            bump = np.zeros((m, n))
            bump[i2, j2] = h
            upper = np.asarray(evaluator(point + bump), dtype=np.float64)
            lower = np.asarray(evaluator(point - bump), dtype=np.float64)
            if upper.shape != (m, n) or lower.shape != (m, n):
                raise ShapeError("evaluator must return a matrix of the input shape")
            if not (np.isfinite(upper).all() and np.isfinite(lower).all()):
                raise ValueError(f"non-finite probe value at entry ({i2}, {j2})")
            out[:, i2, :, j2] = (upper - lower) / (2.0 * h)
    return DenseTensor(out)
