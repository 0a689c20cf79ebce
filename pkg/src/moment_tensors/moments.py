"""Sample-based raw and central moment tensors for vectors and matrices.

All estimators divide by the sample count N (moment convention, not N-1) so
that converting raw moments to central ones is an exact algebraic identity.
Accumulation runs over fixed-size chunks of samples, giving a deterministic
summation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import GuardError, ShapeError
from .partitions import mode_subsets
from .samples import MATRIX, VECTOR, SampleSet
from .tensor import DenseTensor, max_entries, outer_power, outer_product

CHUNK_BUDGET = 4_000_000  # floats per accumulation chunk


class MomentWithError(NamedTuple):
    moment: DenseTensor
    standard_error: DenseTensor


@dataclass(frozen=True)
class MomentSequence:
    """Mean vector plus the raw moment tensors of orders 1..K."""

    mean: np.ndarray
    raw: tuple[DenseTensor, ...]

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        if mean.ndim != 1:
            raise ValueError(f"mean must be a vector, got shape {mean.shape}")
        for i, tensor in enumerate(self.raw):
            if tensor.order != i + 1:
                raise ValueError(
                    f"raw[{i}] must have order {i + 1}, got {tensor.order}"
                )
            if tensor.extents != (mean.size,) * (i + 1):
                raise ValueError(f"raw[{i}] extents {tensor.extents} mismatch dimension")
        if self.raw and np.max(np.abs(self.raw[0].array - mean)) > 0.0:
            raise ValueError("raw[0] must equal the mean vector")
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "raw", tuple(self.raw))

    @property
    def max_order(self) -> int:
        return len(self.raw)

    def raw_moment(self, k: int) -> DenseTensor:
        if not 1 <= k <= len(self.raw):
            raise ValueError(f"raw moment of order {k} not stored (have 1..{len(self.raw)})")
        return self.raw[k - 1]

    @classmethod
    def from_samples(cls, sample_set: SampleSet, max_order: int) -> "MomentSequence":
        raw = [sample_raw_moment(sample_set, k) for k in range(1, max_order + 1)]
        return cls(mean=raw[0].array, raw=tuple(raw))


def _require_kind(sample_set: SampleSet, kind: str) -> np.ndarray:
    if sample_set.kind != kind:
        raise ShapeError(f"expected {kind} samples, got {sample_set.kind}")
    return sample_set.samples


def _check_entry_guard(entries: int, what: str) -> None:
    if entries > max_entries():
        raise GuardError(f"{what} needs {entries} entries, over the guard of {max_entries()}")


def _monomial_rows(rows: np.ndarray, k: int) -> np.ndarray:
    """All degree-k index monomials per row: (B, n) -> (B, n**k), row-major."""
    out = rows
    for _ in range(k - 1):
        out = (out[:, :, None] * rows[:, None, :]).reshape(rows.shape[0], -1)
    return out


def _accumulate_moments(rows: np.ndarray, k: int, with_squares: bool):
    """Chunked sums of x^(outer k) and optionally of its entrywise square."""
    count, n = rows.shape
    width = n**k
    chunk = max(1, CHUNK_BUDGET // max(width, 1))
    total = np.zeros(width)
    total_sq = np.zeros(width) if with_squares else None
    for start in range(0, count, chunk):
        block = _monomial_rows(rows[start : start + chunk], k)
        total += block.sum(axis=0)
        if with_squares:
            total_sq += (block * block).sum(axis=0)
    return total, total_sq


def sample_raw_moment(sample_set: SampleSet, k: int) -> DenseTensor:
    """Order-k raw moment estimate (1/N) sum of x_i^(outer k) for vector samples."""
    rows = _require_kind(sample_set, VECTOR)
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    n = rows.shape[1]
    _check_entry_guard(n**k, f"order-{k} moment of dimension {n}")
    total, _ = _accumulate_moments(rows, k, with_squares=False)
    return DenseTensor(total / rows.shape[0], extents=[n] * k)


def sample_raw_moment_with_se(sample_set: SampleSet, k: int) -> MomentWithError:
    """Raw moment plus the per-entry standard error estimated from the sample
    (population std of the entry monomials divided by sqrt(N))."""
    rows = _require_kind(sample_set, VECTOR)
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    n = rows.shape[1]
    _check_entry_guard(n**k, f"order-{k} moment of dimension {n}")
    count = rows.shape[0]
    total, total_sq = _accumulate_moments(rows, k, with_squares=True)
    mean = total / count
    variance = np.clip(total_sq / count - mean * mean, 0.0, None)
    se = np.sqrt(variance / count)
    return MomentWithError(
        DenseTensor(mean, extents=[n] * k), DenseTensor(se, extents=[n] * k)
    )


def sample_central_moment(sample_set: SampleSet, k: int) -> DenseTensor:
    """Order-k central moment: raw moment of the samples recentered by the
    sample mean (divisor N, so k = 2 is the biased sample covariance)."""
    rows = _require_kind(sample_set, VECTOR)
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    n = rows.shape[1]
    _check_entry_guard(n**k, f"order-{k} central moment of dimension {n}")
    centered = rows - rows.mean(axis=0)
    total, _ = _accumulate_moments(centered, k, with_squares=False)
    return DenseTensor(total / rows.shape[0], extents=[n] * k)


def central_from_raw(sequence: MomentSequence, k: int) -> DenseTensor:
    """Central moment of order k from stored raw moments: alternating sum over
    mode subsets of outer products of lower raw moments with mean powers."""
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    if sequence.max_order < k:
        raise ValueError(
            f"need raw moments up to order {k}, have {sequence.max_order}"
        )
    n = sequence.mean.size
    mean_tensor = DenseTensor(sequence.mean)
    one = DenseTensor.scalar(1.0)
    total = np.zeros([n] * k)
    for s in range(k + 1):
        lower = sequence.raw_moment(k - s) if s < k else one
        mean_power = outer_power(mean_tensor, s) if s >= 1 else one
        sign = -1.0 if s % 2 else 1.0
        for theta in mode_subsets(k, s):
            total += sign * outer_product(lower, mean_power, theta).array
    return DenseTensor(total)


def matrix_covariance_tensor(sample_set: SampleSet) -> DenseTensor:
    """Order-4 covariance tensor of matrix samples, size m x m x n x n, with
    entry (i1, i2, j1, j2) the sample covariance of entries (i1, j1), (i2, j2)."""
    draws = _require_kind(sample_set, MATRIX)
    if draws.shape[0] < 2:
        raise ValueError("covariance needs at least 2 samples")
    m, n = draws.shape[1:]
    _check_entry_guard(m * m * n * n, f"covariance tensor of {m}x{n} matrices")
    centered = draws - draws.mean(axis=0)
    cov = np.einsum("sij,skl->ikjl", centered, centered) / draws.shape[0]
    return DenseTensor(cov)


def _matrix_power_moment(draws: np.ndarray, k: int) -> DenseTensor:
    count, m, n = draws.shape
    chunk = max(1, CHUNK_BUDGET // max((m * n) ** k, 1))
    total = np.zeros([m] * k + [n] * k)
    for start in range(0, count, chunk):
        block = draws[start : start + chunk]
        operands = []
        for l in range(k):
            operands += [block, [0, 1 + l, 1 + k + l]]
        operands.append(list(range(1, 2 * k + 1)))
        total += np.einsum(*operands)
    return DenseTensor(total / count)


def sample_matrix_raw_moment(sample_set: SampleSet, k: int) -> DenseTensor:
    """Order-2k raw moment of matrix samples, all k row modes first then the
    k column modes: entry = mean of the products X[i_l, j_l]."""
    draws = _require_kind(sample_set, MATRIX)
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    m, n = draws.shape[1:]
    _check_entry_guard((m * n) ** k, f"order-{k} matrix moment of shape {m}x{n}")
    return _matrix_power_moment(draws, k)


def sample_matrix_central_moment(sample_set: SampleSet, k: int) -> DenseTensor:
    """Central counterpart of sample_matrix_raw_moment (recentered by the
    sample mean matrix); at k = 2 it matches matrix_covariance_tensor."""
    draws = _require_kind(sample_set, MATRIX)
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    m, n = draws.shape[1:]
    _check_entry_guard((m * n) ** k, f"order-{k} matrix moment of shape {m}x{n}")
    return _matrix_power_moment(draws - draws.mean(axis=0), k)
