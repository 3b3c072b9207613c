"""Little-endian binary primitives shared by the on-disk formats."""

from __future__ import annotations

import struct
from typing import BinaryIO

import numpy as np


def write_u32(fh: BinaryIO, value: int) -> None:
    fh.write(struct.pack("<I", value))


def read_u32(fh: BinaryIO) -> int:
    raw = fh.read(4)
    if len(raw) != 4:
        raise ValueError("truncated file: expected u32")
    return struct.unpack("<I", raw)[0]


def write_f32_array(fh: BinaryIO, arr: np.ndarray) -> None:
    fh.write(np.ascontiguousarray(arr, dtype="<f4").tobytes())


def read_f32_array(fh: BinaryIO, count: int) -> np.ndarray:
    raw = fh.read(4 * count)
    if len(raw) != 4 * count:
        raise ValueError("truncated file: expected float32 data")
    return np.frombuffer(raw, dtype="<f4", count=count).astype(np.float32)


def write_str(fh: BinaryIO, text: str) -> None:
    data = text.encode("utf-8")
    write_u32(fh, len(data))
    fh.write(data)


def read_str(fh: BinaryIO) -> str:
    n = read_u32(fh)
    raw = fh.read(n)
    if len(raw) != n:
        raise ValueError("truncated file: expected string data")
    return raw.decode("utf-8")


def expect_magic(fh: BinaryIO, magic: bytes) -> None:
    raw = fh.read(len(magic))
    if raw != magic:
        raise ValueError(f"bad magic: expected {magic!r}, got {raw!r}")
