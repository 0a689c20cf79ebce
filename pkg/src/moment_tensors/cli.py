"""Command-line front end.

Subcommands cover closed-form moments, sampling, estimation from CSV files,
closed-form vs Monte-Carlo comparison, partition enumeration, and serving the
HTTP API.  All computation lives in the library; this module only parses
flags, moves bytes, and maps errors to exit codes:

    0  success / comparison passed
    1  comparison failed
    2  usage or input error
    3  parameter-validity error (asymmetric / non-PSD covariance)
    4  shape or guard error discovered in data
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .errors import GuardError, ParameterError, ShapeError
from .gaussian import (
    GaussianVectorParams,
    MAX_MOMENT_ORDER,
    gaussian_moment,
    matrix_params_from_dict,
    sample_gaussian_matrix,
    sample_gaussian_vector,
    snd_moment,
    vector_params_from_dict,
)
from .moments import (
    matrix_covariance_tensor,
    sample_central_moment,
    sample_matrix_central_moment,
    sample_matrix_raw_moment,
    sample_raw_moment,
    sample_raw_moment_with_se,
)
from .partitions import TWO_PARTITION_MAX_K, s2_partitions, two_partitions
from .samples import VECTOR, load_samples_csv, samples_to_csv, save_samples_csv
from .tensor import ENV_MAX_ENTRIES, max_entries
from .tensor_io import save_tensor_binary, save_tensor_json, tensor_to_json

EXIT_OK = 0
EXIT_COMPARE_FAIL = 1
EXIT_USAGE = 2
EXIT_PARAMS = 3
EXIT_SHAPE_GUARD = 4

GUARD_NOTE = (
    f"Guards: tensors are capped at {max_entries()} entries ({ENV_MAX_ENTRIES} "
    f"may lower this), moment orders at k <= {MAX_MOMENT_ORDER}, matching "
    f"enumeration at k <= {TWO_PARTITION_MAX_K}."
)


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _write_tensor(tensor, out, fmt) -> int:
    if out is None:
        if fmt == "binary":
            return _fail(EXIT_USAGE, "binary output requires --out")
        print(tensor_to_json(tensor))
        return EXIT_OK
    if fmt == "binary":
        save_tensor_binary(tensor, out)
    else:
        save_tensor_json(tensor, out)
    return EXIT_OK


def _load_params_file(path):
    try:
        with open(path, "r") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise ValueError(f"cannot read params file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"params file is not valid JSON: {exc}") from None
    if isinstance(payload, dict) and ("row_cov" in payload or "col_cov" in payload):
        return matrix_params_from_dict(payload)
    return vector_params_from_dict(payload)


def cmd_snd_moment(args) -> int:
    # flag-derived guard violations are usage errors, diagnosed with the limit
    if args.n < 1 or args.k < 1:
        return _fail(EXIT_USAGE, "-n and -k must be positive")
    if args.k > MAX_MOMENT_ORDER:
        return _fail(EXIT_USAGE, f"-k exceeds the moment order guard of {MAX_MOMENT_ORDER}")
    if args.n**args.k > max_entries():
        return _fail(
            EXIT_USAGE,
            f"{args.n}^{args.k} entries exceed the guard of {max_entries()} "
            f"(lowerable via {ENV_MAX_ENTRIES})",
        )
    return _write_tensor(snd_moment(args.n, args.k), args.out, args.format)


def cmd_gauss_moment(args) -> int:
    params = _load_params_file(args.params)
    if not isinstance(params, GaussianVectorParams):
        return _fail(EXIT_USAGE, "gauss-moment needs vector parameters (mean/cov)")
    return _write_tensor(gaussian_moment(params, args.k), args.out, args.format)


def cmd_estimate(args) -> int:
    sample_set = load_samples_csv(args.samples)
    if args.as_cov4:
        if sample_set.kind != "matrix" or not args.central or args.k != 2:
            return _fail(EXIT_USAGE, "--as-cov4 needs matrix samples, --central and -k 2")
        tensor = matrix_covariance_tensor(sample_set)
    elif sample_set.kind == VECTOR:
        if args.central:
            tensor = sample_central_moment(sample_set, args.k)
        else:
            tensor = sample_raw_moment(sample_set, args.k)
    else:
        if args.central:
            tensor = sample_matrix_central_moment(sample_set, args.k)
        else:
            tensor = sample_matrix_raw_moment(sample_set, args.k)
    return _write_tensor(tensor, args.out, args.format)


def cmd_sample(args) -> int:
    params = _load_params_file(args.params)
    if isinstance(params, GaussianVectorParams):
        sample_set = sample_gaussian_vector(params, args.count, args.seed)
    else:
        sample_set = sample_gaussian_matrix(params, args.count, args.seed)
    if args.out is None:
        sys.stdout.write(samples_to_csv(sample_set))
    else:
        save_samples_csv(sample_set, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    params = _load_params_file(args.params)
    if not isinstance(params, GaussianVectorParams):
        return _fail(EXIT_USAGE, "compare needs vector parameters (mean/cov)")
    if args.tol <= 0:
        return _fail(EXIT_USAGE, "--tol must be positive")
    closed = gaussian_moment(params, args.k)
    if args.count < 2:
        print(
            f"comparison failed: insufficient samples (N = {args.count}, need >= 2 "
            "to estimate standard errors)"
        )
        return EXIT_COMPARE_FAIL
    sample_set = sample_gaussian_vector(params, args.count, args.seed)
    estimate, se = sample_raw_moment_with_se(sample_set, args.k)
    deviation = np.abs(estimate.array - closed.array)
    with np.errstate(divide="ignore", invalid="ignore"):
        multiples = np.where(
            se.array > 0.0, deviation / se.array, np.where(deviation > 0.0, np.inf, 0.0)
        )
    worst = float(np.max(multiples))
    print(f"closed-form vs sample moment  (k={args.k}, N={args.count}, seed={args.seed})")
    print(f"max abs deviation: {float(np.max(deviation)):.6e}")
    print(f"max SE multiple:   {worst:.3f}")
    if worst <= args.tol:
        print(f"verdict: PASS (within {args.tol} standard errors)")
        return EXIT_OK
    print(f"verdict: FAIL (tolerance {args.tol} standard errors)")
    return EXIT_COMPARE_FAIL


def cmd_partitions(args) -> int:
    if args.s is None:
        if args.k % 2:
            return _fail(EXIT_USAGE, f"k = {args.k} is odd; pass -s for [s,2]-partitions")
        parts = two_partitions(args.k)
        payload = {
            "count": len(parts),
            "partitions": [[list(p) for p in part.pairs] for part in parts],
        }
    else:
        parts = s2_partitions(args.k, args.s)
        payload = {
            "count": len(parts),
            "partitions": [
                {
                    "pairs": [list(p) for p in part.pairs],
                    "singleton_block": list(part.singleton_block),
                }
                for part in parts
            ],
        }
    if args.count_only:
        del payload["partitions"]
    print(json.dumps(payload))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moment-tensors",
        description="Moment tensors of Gaussian vectors and matrices.",
        epilog=GUARD_NOTE,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_output(p):
        p.add_argument("-o", "--out", help="output path (default: stdout)")
        p.add_argument(
            "--format", choices=("json", "binary"), default="json", help="tensor format"
        )

    p = sub.add_parser("snd-moment", help="closed-form standard normal moment tensor")
    p.add_argument("-n", type=int, required=True, help="vector dimension")
    p.add_argument("-k", type=int, required=True, help="moment order")
    add_output(p)
    p.set_defaults(func=cmd_snd_moment)

    p = sub.add_parser("gauss-moment", help="closed-form Gaussian moment tensor")
    p.add_argument("--params", required=True, help="JSON file with mean/cov")
    p.add_argument("-k", type=int, required=True, help="moment order")
    add_output(p)
    p.set_defaults(func=cmd_gauss_moment)

    p = sub.add_parser("estimate", help="sample moment tensor from a CSV file")
    p.add_argument("samples", help="CSV sample file")
    p.add_argument("-k", type=int, required=True, help="moment order")
    p.add_argument("--central", action="store_true", help="recenter by the sample mean")
    p.add_argument(
        "--as-cov4",
        action="store_true",
        help="matrix covariance tensor layout (matrix kind, --central, -k 2)",
    )
    add_output(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sample", help="draw Gaussian samples to CSV")
    p.add_argument("--params", required=True, help="JSON file with parameters")
    p.add_argument("-N", "--count", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("-o", "--out", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("compare", help="closed form vs Monte-Carlo moment check")
    p.add_argument("--params", required=True, help="JSON file with mean/cov")
    p.add_argument("-k", type=int, required=True, help="moment order")
    p.add_argument("-N", "--count", type=int, required=True, help="number of draws")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument(
        "--tol", type=float, default=5.0, help="allowed standard-error multiples"
    )
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("partitions", help="enumerate matchings / [s,2]-partitions")
    p.add_argument("-k", type=int, required=True, help="ground set size")
    p.add_argument("-s", type=int, default=None, help="number of pairs ([s,2] mode)")
    p.add_argument("--count-only", action="store_true", help="print the count only")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParameterError as exc:
        return _fail(EXIT_PARAMS, str(exc))
    except (GuardError, ShapeError) as exc:
        return _fail(EXIT_SHAPE_GUARD, str(exc))
    except (ValueError, OSError) as exc:
        return _fail(EXIT_USAGE, str(exc))


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
