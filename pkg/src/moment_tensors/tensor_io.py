"""Tensor interchange formats.

JSON: {"order": u, "extents": [..], "layout": "row-major", "data": [..]}.
Binary: little-endian header (magic "TNSR", version u32, order u32,
extents u64[]) followed by the float64 payload.  Both round-trip bit-exactly,
and file writes go through a temp file + rename.
"""

from __future__ import annotations

import json
import math
import os
import struct
import tempfile

import numpy as np

from .tensor import DenseTensor

MAGIC = b"TNSR"
BINARY_VERSION = 1
LAYOUT = "row-major"


def tensor_to_dict(tensor: DenseTensor) -> dict:
    return {
        "order": tensor.order,
        "extents": list(tensor.extents),
        "layout": LAYOUT,
        "data": tensor.data.tolist(),
    }


def tensor_from_dict(payload: dict) -> DenseTensor:
    for field in ("order", "extents", "layout", "data"):
        if field not in payload:
            raise ValueError(f"tensor JSON is missing field {field!r}")
    if payload["layout"] != LAYOUT:
        raise ValueError(f"unsupported layout {payload['layout']!r}")
    extents = [int(e) for e in payload["extents"]]
    if int(payload["order"]) != len(extents):
        raise ValueError(
            f"order {payload['order']} does not match {len(extents)} extents"
        )
    return DenseTensor(payload["data"], extents=extents)


def tensor_to_json(tensor: DenseTensor) -> str:
    return json.dumps(tensor_to_dict(tensor))


def tensor_from_json(text: str) -> DenseTensor:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid tensor JSON: {exc}") from None
    return tensor_from_dict(payload)


def tensor_to_bytes(tensor: DenseTensor) -> bytes:
    header = MAGIC + struct.pack("<II", BINARY_VERSION, tensor.order)
    header += struct.pack(f"<{tensor.order}Q", *tensor.extents)
    return header + tensor.data.astype("<f8").tobytes()


def tensor_from_bytes(blob: bytes) -> DenseTensor:
    if blob[:4] != MAGIC:
        raise ValueError("not a tensor binary file (bad magic)")
    if len(blob) < 12:
        raise ValueError("truncated tensor binary header")
    version, order = struct.unpack_from("<II", blob, 4)
    if version != BINARY_VERSION:
        raise ValueError(f"unsupported tensor binary version {version}")
    offset = 12
    if len(blob) < offset + 8 * order:
        raise ValueError("truncated tensor binary extents")
    extents = struct.unpack_from(f"<{order}Q", blob, offset)
    offset += 8 * order
    size = math.prod(extents) if extents else 1
    payload = blob[offset:]
    if len(payload) != 8 * size:
        raise ValueError(
            f"payload has {len(payload)} bytes, expected {8 * size} for extents {extents}"
        )
    data = np.frombuffer(payload, dtype="<f8")
    return DenseTensor(data, extents=extents)


def _atomic_write_bytes(path: str, blob: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_tensor_json(tensor: DenseTensor, path: str) -> None:
    _atomic_write_bytes(path, (tensor_to_json(tensor) + "\n").encode())


def load_tensor_json(path: str) -> DenseTensor:
    with open(path, "r") as handle:
        return tensor_from_json(handle.read())


def save_tensor_binary(tensor: DenseTensor, path: str) -> None:
    _atomic_write_bytes(path, tensor_to_bytes(tensor))


def load_tensor_binary(path: str) -> DenseTensor:
    with open(path, "rb") as handle:
        return tensor_from_bytes(handle.read())
