"""Closed-form moment tensors of Gaussian vectors, plus sampling and densities.

The order-k moment of a standard normal vector is a sum of Kronecker-delta
patterns, one per perfect matching of the k modes; for a general Gaussian
vector each term places the covariance on matched mode pairs and the mean on
the leftover modes.  An independent entrywise route via double factorials of
index occupation counts is provided for cross-checking.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GuardError, ParameterError, ShapeError
from .partitions import TwoPartition, double_factorial, s2_partitions, two_partitions
from .samples import MATRIX, VECTOR, SampleSet
from .tensor import DenseTensor, max_entries

MAX_MOMENT_ORDER = 12
SYMMETRY_TOL = 1e-10
PSD_RELATIVE_TOL = 1e-10
SQRT_EIGENVALUE_TOL = 1e-8
DENSITY_MIN_EIGENVALUE = 1e-12


def _check_covariance(cov: np.ndarray, name: str) -> np.ndarray:
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValueError(f"{name} must be a square matrix, got shape {cov.shape}")
    if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
        raise ParameterError(f"{name} is not symmetric within {SYMMETRY_TOL}")
    eigenvalues = np.linalg.eigvalsh(cov)
    largest = max(float(eigenvalues[-1]), 0.0)
    if float(eigenvalues[0]) < -PSD_RELATIVE_TOL * largest:
        raise ParameterError(
            f"{name} has eigenvalue {eigenvalues[0]:.3e}, below the PSD tolerance"
        )
    return cov


@dataclass(frozen=True)
class GaussianVectorParams:
    """Mean vector and covariance matrix of a Gaussian vector."""

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        cov = np.asarray(self.covariance, dtype=np.float64)
        if mean.ndim != 1:
            raise ValueError(f"mean must be a vector, got shape {mean.shape}")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(
                f"covariance shape {cov.shape} does not match mean length {mean.size}"
            )
        _check_covariance(cov, "covariance")
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def dimension(self) -> int:
        return self.mean.size


@dataclass(frozen=True)
class GaussianMatrixParams:
    """Mean matrix plus row and column covariances of a Gaussian matrix."""

    mean: np.ndarray
    row_cov: np.ndarray
    col_cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        row = np.asarray(self.row_cov, dtype=np.float64)
        col = np.asarray(self.col_cov, dtype=np.float64)
        if mean.ndim != 2:
            raise ValueError(f"mean must be a matrix, got shape {mean.shape}")
        m, n = mean.shape
        if row.shape != (m, m):
            raise ValueError(f"row_cov shape {row.shape} does not match mean rows {m}")
        if col.shape != (n, n):
            raise ValueError(f"col_cov shape {col.shape} does not match mean columns {n}")
        _check_covariance(row, "row_cov")
        _check_covariance(col, "col_cov")
        for arr in (mean, row, col):
            arr.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "row_cov", row)
        object.__setattr__(self, "col_cov", col)

    @property
    def shape(self) -> tuple[int, int]:
        return self.mean.shape


def vector_params_from_dict(payload: dict) -> GaussianVectorParams:
    """Build params from the JSON form {"mean": [...], "cov": [[...]]}."""
    if not isinstance(payload, dict) or "mean" not in payload or "cov" not in payload:
        raise ValueError('vector parameters need "mean" and "cov" fields')
    return GaussianVectorParams(mean=payload["mean"], covariance=payload["cov"])


def matrix_params_from_dict(payload: dict) -> GaussianMatrixParams:
    """Build params from {"mean": [[...]], "row_cov": [[...]], "col_cov": [[...]]}."""
    needed = ("mean", "row_cov", "col_cov")
    if not isinstance(payload, dict) or any(k not in payload for k in needed):
        raise ValueError('matrix parameters need "mean", "row_cov" and "col_cov" fields')
    return GaussianMatrixParams(
        mean=payload["mean"], row_cov=payload["row_cov"], col_cov=payload["col_cov"]
    )


def _check_moment_guards(dimension: int, k: int) -> None:
    if k < 1:
        raise ValueError(f"moment order must be >= 1, got {k}")
    if k > MAX_MOMENT_ORDER:
        raise GuardError(f"moment order guard is k <= {MAX_MOMENT_ORDER}, got {k}")
    if dimension < 1:
        raise ShapeError(f"dimension must be >= 1, got {dimension}")
    if dimension**k > max_entries():
        raise GuardError(
            f"{dimension}^{k} entries exceed the guard of {max_entries()}"
        )


def gamma_power(factors: Sequence, gamma: TwoPartition) -> DenseTensor:
    """Outer-product pattern of square matrices along a matching: the entry at
    (i_1..i_2m) is the product over pairs {a, b} of factor_l[i_a, i_b], with
    factors assigned to pairs in sorted pair order."""
    mats = [np.asarray(f, dtype=np.float64) for f in factors]
    if len(mats) != len(gamma.pairs):
        raise ShapeError(
            f"{len(mats)} factors do not match {len(gamma.pairs)} pairs"
        )
    if not mats:
        return DenseTensor.scalar(1.0)  # empty matching, empty product
    n = mats[0].shape[0]
    for mat in mats:
        if mat.ndim != 2 or mat.shape != (n, n):
            raise ShapeError(f"factors must all be {n}x{n}, got shape {mat.shape}")
    operands = []
    for mat, (a, b) in zip(mats, gamma.pairs):
        operands += [mat, [a, b]]
    operands.append(list(range(gamma.ground_size)))
    return DenseTensor(np.einsum(*operands))


def snd_moment(n: int, k: int) -> DenseTensor:
    """Order-k moment tensor of an n-dimensional standard normal vector:
    zero for odd k, otherwise the sum of delta patterns over all perfect
    matchings of the k modes."""
    _check_moment_guards(n, k)
    if k % 2:
        return DenseTensor.zeros([n] * k)
    eye = np.eye(n)
    total = np.zeros([n] * k)
    for gamma in two_partitions(k):
        total += gamma_power([eye] * (k // 2), gamma).array
    return DenseTensor(total)


def snd_moment_entry(sigma: Sequence[int]) -> float:
    """Entrywise oracle for the standard normal moment: 0 if any index occurs
    an odd number of times, else the product of (count - 1)!! over indices."""
    counts = Counter(int(i) for i in sigma)
    if any(r % 2 for r in counts.values()):
        return 0.0
    value = 1
    for r in counts.values():
        value *= double_factorial(r - 1)
    return float(value)


def transformed_snd_moment(a: Sequence, k: int) -> DenseTensor:
    """Order-k moment tensor of A @ u for standard normal u: zero for odd k,
    else the matching sum of patterns built from Sigma = A A^T."""
    mat = np.asarray(a, dtype=np.float64)
    if mat.ndim != 2:
        raise ShapeError(f"A must be a matrix, got shape {mat.shape}")
    m = mat.shape[0]
    _check_moment_guards(m, k)
    if k % 2:
        return DenseTensor.zeros([m] * k)
    sigma = mat @ mat.T
    total = np.zeros([m] * k)
    for gamma in two_partitions(k):
        total += gamma_power([sigma] * (k // 2), gamma).array
    return DenseTensor(total)


def gaussian_moment(params: GaussianVectorParams, k: int) -> DenseTensor:
    """Order-k raw moment tensor of a Gaussian vector: sum over all ways to
    pair up some modes (covariance factors) and leave the rest to the mean."""
    n = params.dimension
    _check_moment_guards(n, k)
    cov = params.covariance
    mean = params.mean
    total = np.zeros([n] * k)
    for s in range(k // 2 + 1):
        for part in s2_partitions(k, s):
            operands = []
            for a, b in part.pairs:
                operands += [cov, [a, b]]
            for w in part.singleton_block:
                operands += [mean, [w]]
            operands.append(list(range(k)))
            total += np.einsum(*operands)
    return DenseTensor(total)


def sqrt_psd(s: Sequence) -> np.ndarray:
    """Symmetric square root of a symmetric PSD matrix via spectral
    decomposition; eigenvalues within -1e-8 * ||S|| of zero are clamped."""
    mat = np.asarray(s, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ShapeError(f"need a square matrix, got shape {mat.shape}")
    if np.max(np.abs(mat - mat.T)) > SYMMETRY_TOL:
        raise ParameterError(f"matrix is not symmetric within {SYMMETRY_TOL}")
    eigenvalues, vectors = np.linalg.eigh(mat)
    norm = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    if float(eigenvalues[0]) < -SQRT_EIGENVALUE_TOL * max(norm, 1e-300):
        raise ParameterError(
            f"eigenvalue {eigenvalues[0]:.3e} is too negative for a PSD square root"
        )
    clamped = np.clip(eigenvalues, 0.0, None)
    root = (vectors * np.sqrt(clamped)) @ vectors.T
    return (root + root.T) / 2.0


def sample_gaussian_vector(params: GaussianVectorParams, count: int, seed: int) -> SampleSet:
    """Draw `count` i.i.d. vectors mean + A u with A the PSD square root of the
    covariance and u standard normal (PCG64 generator, fixed by `seed`)."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    root = sqrt_psd(params.covariance)
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((count, params.dimension))
    return SampleSet(kind=VECTOR, samples=params.mean + u @ root, seed=seed)


def sample_gaussian_matrix(params: GaussianMatrixParams, count: int, seed: int) -> SampleSet:
    """Draw `count` i.i.d. matrices mean + A U B^T with A, B the PSD square
    roots of the row and column covariances and U a standard normal matrix."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    m, n = params.shape
    row_root = sqrt_psd(params.row_cov)
    col_root = sqrt_psd(params.col_cov)
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((count, m, n))
    draws = params.mean + np.einsum("ij,sjk,lk->sil", row_root, u, col_root)
    return SampleSet(kind=MATRIX, samples=draws, seed=seed)


def _check_positive_definite(cov: np.ndarray, name: str) -> None:
    if float(np.linalg.eigvalsh(cov)[0]) <= DENSITY_MIN_EIGENVALUE:
        raise ParameterError(f"{name} is singular (density needs a PD covariance)")


def gaussian_vector_density(params: GaussianVectorParams, t: Sequence) -> float:
    """Density of the Gaussian vector at point t (covariance must be PD)."""
    point = np.asarray(t, dtype=np.float64)
    n = params.dimension
    if point.shape != (n,):
        raise ValueError(f"point shape {point.shape} does not match dimension {n}")
    cov = params.covariance
    _check_positive_definite(cov, "covariance")
    diff = point - params.mean
    quad = float(diff @ np.linalg.solve(cov, diff))
    _, logdet = np.linalg.slogdet(cov)
    return float(np.exp(-0.5 * (n * np.log(2.0 * np.pi) + logdet + quad)))


def gaussian_matrix_density(params: GaussianMatrixParams, t: Sequence) -> float:
    """Density of the Gaussian matrix at the m x n point
    (both covariances must be PD)."""
    point = np.asarray(t, dtype=np.float64)
    m, n = params.shape
    if point.shape != (m, n):
        raise ValueError(f"point shape {point.shape} does not match {(m, n)}")
    _check_positive_definite(params.row_cov, "row_cov")
    _check_positive_definite(params.col_cov, "col_cov")
    diff = point - params.mean
    inner = np.linalg.solve(params.row_cov, diff) @ np.linalg.solve(params.col_cov, diff.T)
    quad = float(np.trace(inner))
    _, logdet_row = np.linalg.slogdet(params.row_cov)
    _, logdet_col = np.linalg.slogdet(params.col_cov)
    log_density = -0.5 * (
        m * n * np.log(2.0 * np.pi) + n * logdet_row + m * logdet_col + quad
    )
    return float(np.exp(log_density))
