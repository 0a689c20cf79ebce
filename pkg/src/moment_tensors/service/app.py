"""FastAPI service wrapping the core package.

Every endpoint is a stateless call into the library; domain errors surface
as HTTP 400 with the library message, request-shape problems as 422 via
pydantic.  Run with `moment-tensors serve` or
`uvicorn moment_tensors.service.app:app`.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException, Query

from .. import __version__
from ..errors import GuardError, ParameterError, ShapeError
from ..gaussian import (
    gaussian_matrix_density,
    gaussian_moment,
    gaussian_vector_density,
    sample_gaussian_matrix,
    sample_gaussian_vector,
    snd_moment,
)
from ..moments import (
    matrix_covariance_tensor,
    sample_central_moment,
    sample_matrix_central_moment,
    sample_matrix_raw_moment,
    sample_raw_moment,
    sample_raw_moment_with_se,
)
from ..partitions import s2_partitions, two_partitions
from .schemas import (
    CompareRequest,
    CompareResponse,
    DensityResponse,
    EstimateRequest,
    GaussianMomentRequest,
    HealthResponse,
    MatrixDensityRequest,
    S2PartitionModel,
    S2PartitionsResponse,
    SampleMatrixRequest,
    SampleSetModel,
    SampleVectorRequest,
    SndMomentRequest,
    TensorModel,
    TwoPartitionsResponse,
    VectorDensityRequest,
)


def _domain(call, *args, **kwargs):
    try:
        return call(*args, **kwargs)
    except (ParameterError, GuardError, ShapeError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def create_app() -> FastAPI:
    app = FastAPI(title="moment-tensors", version=__version__)

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/moments/standard-normal", response_model=TensorModel)
    def standard_normal_moment(req: SndMomentRequest):
        return TensorModel.from_tensor(_domain(snd_moment, req.n, req.k))

    @app.post("/moments/gaussian", response_model=TensorModel)
    def gaussian_moment_endpoint(req: GaussianMomentRequest):
        params = _domain(req.params.to_params)
        return TensorModel.from_tensor(_domain(gaussian_moment, params, req.k))

    @app.post("/moments/estimate", response_model=TensorModel)
    def estimate(req: EstimateRequest):
        sample_set = _domain(req.samples.to_sample_set)
        if req.as_cov4:
            if sample_set.kind != "matrix" or not req.central or req.k != 2:
                raise HTTPException(
                    status_code=400,
                    detail="as_cov4 needs matrix samples, central=true and k=2",
                )
            tensor = _domain(matrix_covariance_tensor, sample_set)
        elif sample_set.kind == "vector":
            fn = sample_central_moment if req.central else sample_raw_moment
            tensor = _domain(fn, sample_set, req.k)
        else:
            fn = sample_matrix_central_moment if req.central else sample_matrix_raw_moment
            tensor = _domain(fn, sample_set, req.k)
        return TensorModel.from_tensor(tensor)

    @app.post("/samples/vector", response_model=SampleSetModel)
    def sample_vector(req: SampleVectorRequest):
        params = _domain(req.params.to_params)
        draws = _domain(sample_gaussian_vector, params, req.count, req.seed)
        return SampleSetModel.from_sample_set(draws)

    @app.post("/samples/matrix", response_model=SampleSetModel)
    def sample_matrix(req: SampleMatrixRequest):
        params = _domain(req.params.to_params)
        draws = _domain(sample_gaussian_matrix, params, req.count, req.seed)
        return SampleSetModel.from_sample_set(draws)

    @app.post("/compare", response_model=CompareResponse)
    def compare(req: CompareRequest):
        params = _domain(req.params.to_params)
        closed = _domain(gaussian_moment, params, req.k)
        draws = _domain(sample_gaussian_vector, params, req.count, req.seed)
        estimate, se = _domain(sample_raw_moment_with_se, draws, req.k)
        deviation = np.abs(estimate.array - closed.array)
        with np.errstate(divide="ignore", invalid="ignore"):
            multiples = np.where(
                se.array > 0.0,
                deviation / se.array,
                np.where(deviation > 0.0, np.inf, 0.0),
            )
        worst = float(np.max(multiples))
        return CompareResponse(
            k=req.k,
            count=req.count,
            seed=req.seed,
            tolerance=req.tolerance,
            max_abs_deviation=float(np.max(deviation)),
            max_se_multiple=worst,
            passed=bool(worst <= req.tolerance),
        )

    @app.get(
        "/partitions/two",
        response_model=TwoPartitionsResponse,
        response_model_exclude_none=True,
    )
    def partitions_two(k: int = Query(ge=2), count_only: bool = False):
        parts = _domain(two_partitions, k)
        if count_only:
            return TwoPartitionsResponse(count=len(parts))
        return TwoPartitionsResponse(
            count=len(parts),
            partitions=[[list(p) for p in part.pairs] for part in parts],
        )

    @app.get(
        "/partitions/s2",
        response_model=S2PartitionsResponse,
        response_model_exclude_none=True,
    )
    def partitions_s2(k: int = Query(ge=1), s: int = Query(ge=0), count_only: bool = False):
        parts = _domain(s2_partitions, k, s)
        if count_only:
            return S2PartitionsResponse(count=len(parts))
        return S2PartitionsResponse(
            count=len(parts),
            partitions=[
                S2PartitionModel(
                    pairs=[list(p) for p in part.pairs],
                    singleton_block=list(part.singleton_block),
                )
                for part in parts
            ],
        )

    @app.post("/density/vector", response_model=DensityResponse)
    def density_vector(req: VectorDensityRequest):
        params = _domain(req.params.to_params)
        return DensityResponse(value=_domain(gaussian_vector_density, params, req.point))

    @app.post("/density/matrix", response_model=DensityResponse)
    def density_matrix(req: MatrixDensityRequest):
        params = _domain(req.params.to_params)
        return DensityResponse(value=_domain(gaussian_matrix_density, params, req.point))

    return app


app = create_app()
