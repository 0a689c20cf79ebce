"""Higher-order moment tensors: Gaussian closed forms, tensor products,
partition combinatorics, sampling, and sample-based estimation."""

__version__ = "0.1.0"

from .errors import GuardError, ParameterError, ShapeError
from .tensor import (
    DenseTensor,
    apply_all_modes,
    contract_to_vector,
    einstein_product,
    identity_tensor4,
    is_symmetric,
    k_mode_left,
    k_mode_right,
    max_entries,
    outer_power,
    outer_product,
    poly_eval,
    tensor4_product,
)
from .partitions import (
    S2Partition,
    TwoPartition,
    double_factorial,
    mode_subsets,
    s2_partitions,
    two_partitions,
)
from .samples import SampleSet, load_samples_csv, save_samples_csv
from .gaussian import (
    GaussianMatrixParams,
    GaussianVectorParams,
    gamma_power,
    gaussian_matrix_density,
    gaussian_moment,
    gaussian_vector_density,
    sample_gaussian_matrix,
    sample_gaussian_vector,
    snd_moment,
    snd_moment_entry,
    sqrt_psd,
    transformed_snd_moment,
)
from .moments import (
    MomentSequence,
    central_from_raw,
    matrix_covariance_tensor,
    sample_central_moment,
    sample_matrix_central_moment,
    sample_matrix_raw_moment,
    sample_raw_moment,
    sample_raw_moment_with_se,
)
from .derivatives import (
    MatrixField,
    ScalarField,
    hessian_tensor,
    matrix_derivative_tensor,
)

__all__ = [
    "DenseTensor",
    "GaussianMatrixParams",
    "GaussianVectorParams",
    "GuardError",
    "MatrixField",
    "MomentSequence",
    "ParameterError",
    "S2Partition",
    "SampleSet",
    "ScalarField",
    "ShapeError",
    "TwoPartition",
    "apply_all_modes",
    "central_from_raw",
    "contract_to_vector",
    "double_factorial",
    "einstein_product",
    "gamma_power",
    "gaussian_matrix_density",
    "gaussian_moment",
    "gaussian_vector_density",
    "hessian_tensor",
    "identity_tensor4",
    "is_symmetric",
    "k_mode_left",
    "k_mode_right",
    "load_samples_csv",
    "matrix_covariance_tensor",
    "matrix_derivative_tensor",
    "max_entries",
    "mode_subsets",
    "outer_power",
    "outer_product",
    "poly_eval",
    "s2_partitions",
    "sample_central_moment",
    "sample_gaussian_matrix",
    "sample_gaussian_vector",
    "sample_matrix_central_moment",
    "sample_matrix_raw_moment",
    "sample_raw_moment",
    "sample_raw_moment_with_se",
    "save_samples_csv",
    "snd_moment",
    "snd_moment_entry",
    "sqrt_psd",
    "tensor4_product",
    "transformed_snd_moment",
    "two_partitions",
]
