"""Sample collections and their CSV interchange format.

CSV layout: a single header comment `# kind=vector n=...` or
`# kind=matrix m=... n=...` (plus `seed=...` when known), then one sample per
row, entries row-major flattened, written with 17 significant digits so the
round trip is exact.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

VECTOR = "vector"
MATRIX = "matrix"


@dataclass(frozen=True)
class SampleSet:
    """Homogeneous collection of sampled vectors or matrices.

    `samples` has shape (N, n) for vectors and (N, m, n) for matrices; the
    array is kept read-only.  Non-finite entries are rejected at ingestion.
    """

    kind: str
    samples: np.ndarray
    seed: int | None = None
    shape: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.kind not in (VECTOR, MATRIX):
            raise ValueError(f"kind must be {VECTOR!r} or {MATRIX!r}, got {self.kind!r}")
        arr = np.asarray(self.samples, dtype=np.float64)
        expected_ndim = 2 if self.kind == VECTOR else 3
        if arr.ndim != expected_ndim:
            raise ValueError(
                f"{self.kind} samples need {expected_ndim} array dimensions, got {arr.ndim}"
            )
        if arr.shape[0] < 1:
            raise ValueError("sample set must be non-empty")
        if not np.isfinite(arr).all():
            raise ValueError("sample set contains non-finite entries")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "shape", arr.shape[1:])

    @property
    def count(self) -> int:
        return self.samples.shape[0]


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def samples_to_csv(sample_set: SampleSet) -> str:
    header = f"# kind={sample_set.kind} "
    if sample_set.kind == VECTOR:
        header += f"n={sample_set.shape[0]}"
    else:
        header += f"m={sample_set.shape[0]} n={sample_set.shape[1]}"
    if sample_set.seed is not None:
        header += f" seed={sample_set.seed}"
    rows = sample_set.samples.reshape(sample_set.count, -1)
    lines = [header]
    for row in rows:
        lines.append(",".join(format(v, ".17g") for v in row))
    return "\n".join(lines) + "\n"


def samples_from_csv(text: str) -> SampleSet:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing '# kind=...' header line")
    fields = {}
    for token in lines[0].lstrip("#").split():
        if "=" not in token:
            raise ValueError(f"malformed header token {token!r}")
        key, value = token.split("=", 1)
        fields[key] = value
    kind = fields.get("kind")
    seed = int(fields["seed"]) if "seed" in fields else None
    try:
        if kind == VECTOR:
            shape = (int(fields["n"]),)
        elif kind == MATRIX:
            shape = (int(fields["m"]), int(fields["n"]))
        else:
            raise KeyError("kind")
    except KeyError as exc:
        raise ValueError(f"header is missing field {exc}") from None
    width = int(np.prod(shape))
    data = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != width:
            raise ValueError(f"line {lineno}: expected {width} values, got {len(parts)}")
        try:
            data.append([float(p) for p in parts])
        except ValueError:
            raise ValueError(f"line {lineno}: non-numeric entry") from None
    if not data:
        raise ValueError("no sample rows")
    arr = np.asarray(data).reshape((len(data),) + shape)
    return SampleSet(kind=kind, samples=arr, seed=seed)


def save_samples_csv(sample_set: SampleSet, path: str) -> None:
    """Write atomically (temp file + rename)."""
    _atomic_write_text(path, samples_to_csv(sample_set))


def load_samples_csv(path: str) -> SampleSet:
    with open(path, "r") as handle:
        return samples_from_csv(handle.read())
