"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..gaussian import GaussianMatrixParams, GaussianVectorParams
from ..samples import SampleSet
from ..tensor import DenseTensor


class TensorModel(BaseModel):
    """Wire form of a dense tensor, identical to the JSON file format."""

    order: int
    extents: list[int]
    layout: Literal["row-major"] = "row-major"
    data: list[float]

    @classmethod
    def from_tensor(cls, tensor: DenseTensor) -> "TensorModel":
        return cls(
            order=tensor.order, extents=list(tensor.extents), data=tensor.data.tolist()
        )

    def to_tensor(self) -> DenseTensor:
        if self.order != len(self.extents):
            raise ValueError("order does not match the number of extents")
        return DenseTensor(self.data, extents=self.extents)


class VectorParamsModel(BaseModel):
    mean: list[float]
    cov: list[list[float]]

    def to_params(self) -> GaussianVectorParams:
        return GaussianVectorParams(mean=self.mean, covariance=self.cov)


class MatrixParamsModel(BaseModel):
    mean: list[list[float]]
    row_cov: list[list[float]]
    col_cov: list[list[float]]

    def to_params(self) -> GaussianMatrixParams:
        return GaussianMatrixParams(
            mean=self.mean, row_cov=self.row_cov, col_cov=self.col_cov
        )


class SampleSetModel(BaseModel):
    """Wire form of a sample set; rows are row-major flattened samples."""

    kind: Literal["vector", "matrix"]
    shape: list[int]
    seed: Optional[int] = None
    rows: list[list[float]]

    @classmethod
    def from_sample_set(cls, sample_set: SampleSet) -> "SampleSetModel":
        return cls(
            kind=sample_set.kind,
            shape=list(sample_set.shape),
            seed=sample_set.seed,
            rows=sample_set.samples.reshape(sample_set.count, -1).tolist(),
        )

    def to_sample_set(self) -> SampleSet:
        arr = np.asarray(self.rows, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("rows must form a rectangular table")
        return SampleSet(
            kind=self.kind,
            samples=arr.reshape((arr.shape[0],) + tuple(self.shape)),
            seed=self.seed,
        )


class SndMomentRequest(BaseModel):
    n: int = Field(ge=1)
    k: int = Field(ge=1)


class GaussianMomentRequest(BaseModel):
    params: VectorParamsModel
    k: int = Field(ge=1)


class SampleVectorRequest(BaseModel):
    params: VectorParamsModel
    count: int = Field(ge=1)
    seed: int = 0


class SampleMatrixRequest(BaseModel):
    params: MatrixParamsModel
    count: int = Field(ge=1)
    seed: int = 0


class EstimateRequest(BaseModel):
    samples: SampleSetModel
    k: int = Field(ge=1)
    central: bool = False
    as_cov4: bool = False


class CompareRequest(BaseModel):
    params: VectorParamsModel
    k: int = Field(ge=1)
    count: int = Field(ge=2)
    seed: int = 0
    tolerance: float = Field(default=5.0, gt=0)


class CompareResponse(BaseModel):
    k: int
    count: int
    seed: int
    tolerance: float
    max_abs_deviation: float
    max_se_multiple: float
    passed: bool


class TwoPartitionsResponse(BaseModel):
    count: int
    partitions: Optional[list[list[list[int]]]] = None


class S2PartitionModel(BaseModel):
    pairs: list[list[int]]
    singleton_block: list[int]


class S2PartitionsResponse(BaseModel):
    count: int
    partitions: Optional[list[S2PartitionModel]] = None


class VectorDensityRequest(BaseModel):
    params: VectorParamsModel
    point: list[float]


class MatrixDensityRequest(BaseModel):
    params: MatrixParamsModel
    point: list[list[float]]


class DensityResponse(BaseModel):
    value: float


class HealthResponse(BaseModel):
    status: str
    version: str
