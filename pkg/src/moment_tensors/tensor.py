"""Dense real tensors and the product operations built on them.

Storage is row-major (last index varies fastest) and all mode positions in
code are 0-based.  Every operation here is a pure function: inputs are never
mutated and results are freshly allocated.
"""

from __future__ import annotations

import math
import os
from typing import Sequence, Union

import numpy as np

from .errors import GuardError, ShapeError

DEFAULT_MAX_ENTRIES = 100_000_000
ENV_MAX_ENTRIES = "MOMENT_TENSORS_MAX_ENTRIES"

ArrayLike = Union["DenseTensor", np.ndarray, Sequence]


def max_entries() -> int:
    """Current entry guard: 10^8, lowerable (never raisable) via the
    MOMENT_TENSORS_MAX_ENTRIES environment variable."""
    raw = os.environ.get(ENV_MAX_ENTRIES)
    if raw is None:
        return DEFAULT_MAX_ENTRIES
    try:
        value = int(raw)
    except ValueError:
        raise GuardError(
            f"{ENV_MAX_ENTRIES} must be a positive integer, got {raw!r}"
        ) from None
    if value <= 0:
        raise GuardError(f"{ENV_MAX_ENTRIES} must be positive, got {value}")
    return min(value, DEFAULT_MAX_ENTRIES)


class DenseTensor:
    """Arbitrary-order dense real tensor with explicit extents.

    `DenseTensor(values)` takes anything array-like; `DenseTensor(flat, extents)`
    reshapes a flat row-major sequence.  Order 0 is a scalar, order 1 a vector,
    order 2 a matrix.  The backing array is float64 and read-only, so instances
    are safely shareable across threads.
    """

    __slots__ = ("_array",)

    def __init__(self, values, extents: Sequence[int] | None = None):
        arr = np.asarray(values, dtype=np.float64)
        if extents is not None:
            ext = tuple(int(e) for e in extents)
            if any(e <= 0 for e in ext):
                raise ShapeError(f"extents must be positive, got {ext}")
            if arr.ndim != 1:
                arr = arr.reshape(-1)
            if arr.size != math.prod(ext):
                raise ShapeError(
                    f"data length {arr.size} does not match extents {ext}"
                )
            arr = arr.reshape(ext)
        if any(e <= 0 for e in arr.shape):
            raise ShapeError(f"extents must be positive, got {arr.shape}")
        if arr.size > max_entries():
            raise GuardError(
                f"tensor with {arr.size} entries exceeds the guard of "
                f"{max_entries()} (see {ENV_MAX_ENTRIES})"
            )
        arr = np.array(arr, dtype=np.float64, order="C")  # copy; keeps 0-d shape
        arr.setflags(write=False)
        self._array = arr

    @classmethod
    def zeros(cls, extents: Sequence[int]) -> "DenseTensor":
        return cls(np.zeros(tuple(int(e) for e in extents)))

    @classmethod
    def scalar(cls, value: float) -> "DenseTensor":
        return cls(np.asarray(float(value)))

    @property
    def array(self) -> np.ndarray:
        """Read-only ndarray view, shape == extents."""
        return self._array

    @property
    def data(self) -> np.ndarray:
        """Read-only flat view in row-major order."""
        return self._array.reshape(-1)

    @property
    def extents(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def order(self) -> int:
        return self._array.ndim

    def is_cubic(self) -> bool:
        """All modes share one dimension (vacuously true below order 2)."""
        ext = self.extents
        return len(set(ext)) <= 1

    def __getitem__(self, index):
        return self._array[index]

    def __repr__(self):
        return f"DenseTensor(order={self.order}, extents={self.extents})"


def _as_array(value: ArrayLike, ndim: int | None = None, name: str = "argument") -> np.ndarray:
    arr = value.array if isinstance(value, DenseTensor) else np.asarray(value, dtype=np.float64)
    if ndim is not None and arr.ndim != ndim:
        raise ShapeError(f"{name} must have order {ndim}, got order {arr.ndim}")
    return arr


def _check_mode_set(positions: Sequence[int], total: int, name: str) -> tuple[int, ...]:
    pos = tuple(int(p) for p in positions)
    if any(b <= a for a, b in zip(pos, pos[1:])):
        raise ShapeError(f"{name} must be strictly increasing, got {pos}")
    if pos and (pos[0] < 0 or pos[-1] >= total):
        raise ShapeError(f"{name} positions must lie in [0, {total}), got {pos}")
    return pos


def outer_product(a: DenseTensor, b: DenseTensor, t_modes: Sequence[int]) -> DenseTensor:
    """Outer product of `a` and `b`, with `b`'s modes placed at the (0-based)
    result positions `t_modes` and `a`'s modes filling the rest in order.

    Boundary conventions: empty `t_modes` (order-0 `b`) returns `a`; when `a`
    has order 0 and `t_modes` covers every mode, returns `b`.
    """
    p, q = a.order, b.order
    total = p + q
    t = _check_mode_set(t_modes, total, "t_modes")
    if len(t) != q:
        raise ShapeError(f"t_modes has {len(t)} positions but b has order {q}")
    if q == 0:
        return DenseTensor(a.array)
    if p == 0:
        return DenseTensor(b.array)
    raw = np.multiply.outer(a.array, b.array)
    t_set = set(t)
    s = tuple(i for i in range(total) if i not in t_set)
    axes = [0] * total
    for i, pos in enumerate(s):
        axes[pos] = i
    for i, pos in enumerate(t):
        axes[pos] = p + i
    return DenseTensor(raw.transpose(axes))


def outer_power(x: ArrayLike, k: int) -> DenseTensor:
    """k-fold outer power of a vector (order k result) or matrix (order 2k,
    all row modes before all column modes)."""
    arr = _as_array(x, name="x")
    if k < 1:
        raise ShapeError(f"power must be >= 1, got {k}")
    if arr.ndim == 1:
        out = arr
        for _ in range(k - 1):
            out = np.multiply.outer(out, arr)
        return DenseTensor(out)
    if arr.ndim == 2:
        out = arr
        for _ in range(k - 1):
            out = np.multiply.outer(out, arr)
        # out modes are interleaved (i1,j1,i2,j2,...); regroup rows first
        axes = [2 * l for l in range(k)] + [2 * l + 1 for l in range(k)]
        return DenseTensor(out.transpose(axes))
    raise ShapeError(f"outer_power expects order 1 or 2, got order {arr.ndim}")


def einstein_product(
    a: DenseTensor, b: DenseTensor, s_modes: Sequence[int], t_modes: Sequence[int]
) -> DenseTensor:
    """Contract `a`'s modes `s_modes` against `b`'s modes `t_modes` (paired
    positionally, both ascending).  Output modes: `a`'s free modes then `b`'s."""
    s = _check_mode_set(s_modes, a.order, "s_modes")
    t = _check_mode_set(t_modes, b.order, "t_modes")
    if len(s) != len(t):
        raise ShapeError(f"mode sets must have equal size, got {len(s)} and {len(t)}")
    if not s:
        raise ShapeError("empty contraction; use outer_product for r = 0")
    for sa, tb in zip(s, t):
        if a.extents[sa] != b.extents[tb]:
            raise ShapeError(
                f"contracted extents differ: a mode {sa} has {a.extents[sa]}, "
                f"b mode {tb} has {b.extents[tb]}"
            )
    return DenseTensor(np.tensordot(a.array, b.array, axes=(list(s), list(t))))


def k_mode_right(a: DenseTensor, b: ArrayLike, mode: int) -> DenseTensor:
    """Right mode multiplication: contract `a`'s given mode against the first
    mode of matrix `b`, entry = sum_j a[.., j, ..] * b[j, i_mode]."""
    mat = _as_array(b, ndim=2, name="b")
    if not 0 <= mode < a.order:
        raise ShapeError(f"mode {mode} out of range for order {a.order}")
    if a.extents[mode] != mat.shape[0]:
        raise ShapeError(
            f"mode {mode} extent {a.extents[mode]} does not match b rows {mat.shape[0]}"
        )
    out = np.tensordot(a.array, mat, axes=([mode], [0]))
    return DenseTensor(np.moveaxis(out, -1, mode))


def k_mode_left(b: ArrayLike, a: DenseTensor, mode: int) -> DenseTensor:
    """Left mode multiplication: entry = sum_j a[.., j, ..] * b[i_mode, j].
    On matrices with mode 0 this reproduces the matrix product b @ a."""
    mat = _as_array(b, ndim=2, name="b")
    if not 0 <= mode < a.order:
        raise ShapeError(f"mode {mode} out of range for order {a.order}")
    if a.extents[mode] != mat.shape[1]:
        raise ShapeError(
            f"mode {mode} extent {a.extents[mode]} does not match b columns {mat.shape[1]}"
        )
    out = np.tensordot(a.array, mat, axes=([mode], [1]))
    return DenseTensor(np.moveaxis(out, -1, mode))


def apply_all_modes(b: ArrayLike, a: DenseTensor) -> DenseTensor:
    """Left mode multiplication by the square matrix `b` at every mode of the
    cubic tensor `a`; sends x^(outer k) to (b x)^(outer k)."""
    mat = _as_array(b, ndim=2, name="b")
    if mat.shape[0] != mat.shape[1]:
        raise ShapeError(f"b must be square, got {mat.shape}")
    if not a.is_cubic():
        raise ShapeError(f"a must be cubic, got extents {a.extents}")
    if a.order > 0 and a.extents[0] != mat.shape[1]:
        raise ShapeError(
            f"b extent {mat.shape[1]} does not match tensor dimension {a.extents[0]}"
        )
    out = a
    for mode in range(a.order):
        out = k_mode_left(mat, out, mode)
    return out


def tensor4_product(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    """Product on order-4 cubic tensors: contract `a`'s last two modes with
    `b`'s first two."""
    for name, t in (("a", a), ("b", b)):
        if t.order != 4 or not t.is_cubic():
            raise ShapeError(f"{name} must be order-4 cubic, got extents {t.extents}")
    if a.extents[0] != b.extents[0]:
        raise ShapeError(f"dimension mismatch: {a.extents[0]} vs {b.extents[0]}")
    return DenseTensor(np.tensordot(a.array, b.array, axes=([2, 3], [0, 1])))


def identity_tensor4(n: int) -> DenseTensor:
    """Order-4 identity: entries delta(i1,i3) * delta(i2,i4)."""
    if n < 1:
        raise ShapeError(f"dimension must be >= 1, got {n}")
    eye = np.eye(n)
    return DenseTensor(np.einsum("ik,jl->ijkl", eye, eye))


def poly_eval(a: DenseTensor, x: ArrayLike) -> float:
    """Evaluate the homogeneous polynomial sum_sigma A_sigma x_i1 ... x_im."""
    vec = _as_array(x, ndim=1, name="x")
    if a.order > 0 and not (a.is_cubic() and a.extents[0] == vec.size):
        raise ShapeError(
            f"tensor extents {a.extents} incompatible with vector of length {vec.size}"
        )
    out = a.array
    for _ in range(a.order):
        out = np.tensordot(out, vec, axes=([out.ndim - 1], [0]))
    return float(out)


def contract_to_vector(a: DenseTensor, x: ArrayLike) -> DenseTensor:
    """Contract all but the first mode with `x`: y_i = sum A[i, i2..im] x_i2 ... x_im."""
    vec = _as_array(x, ndim=1, name="x")
    if a.order < 1 or not (a.is_cubic() and a.extents[0] == vec.size):
        raise ShapeError(
            f"tensor extents {a.extents} incompatible with vector of length {vec.size}"
        )
    out = a.array
    for _ in range(a.order - 1):
        out = np.tensordot(out, vec, axes=([out.ndim - 1], [0]))
    return DenseTensor(out)


def is_symmetric(a: DenseTensor, tol: float) -> bool:
    """True when every entry agrees with its index-sorted representative
    within `tol` (equivalent to invariance under all index permutations)."""
    if not a.is_cubic():
        raise ShapeError(f"symmetry is defined for cubic tensors, got {a.extents}")
    if a.order <= 1:
        return True
    idx = np.indices(a.extents).reshape(a.order, -1)
    canonical = a.array[tuple(np.sort(idx, axis=0))]
    return bool(np.max(np.abs(a.data - canonical)) <= tol)
