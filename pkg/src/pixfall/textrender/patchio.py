"""Binary dump of rendered patch sequences.

Layout, all integers little-endian u32:

    magic "PXF1" | N | P | C | word_count
    word_count x (start, length)
    N * P * P * C float32 patch data
    N u32 positional ids

A second entry point stores a bare rank-2 float32 matrix under the same
magic (``save_matrix``/``load_matrix``); it is the interchange format
for embedding tables fed to the representation-gap analysis.
"""

from __future__ import annotations

import numpy as np

from .. import binio
from .render import PatchSequence

_MAGIC = b"PXF1"


def save_patches(path: str, seq: PatchSequence) -> None:
    n, p, p2, c = seq.patches.shape
    assert p == p2, "patches must be square"
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        binio.write_u32(fh, n)
        binio.write_u32(fh, p)
        binio.write_u32(fh, c)
        binio.write_u32(fh, len(seq.word_offsets))
        for start, length in seq.word_offsets:
            binio.write_u32(fh, start)
            binio.write_u32(fh, length)
        binio.write_f32_array(fh, seq.patches)
        fh.write(np.ascontiguousarray(seq.positional_ids, dtype="<u4").tobytes())


def load_patches(path: str) -> PatchSequence:
    with open(path, "rb") as fh:
        binio.expect_magic(fh, _MAGIC)
        n = binio.read_u32(fh)
        p = binio.read_u32(fh)
        c = binio.read_u32(fh)
        word_count = binio.read_u32(fh)
        offsets = []
        for _ in range(word_count):
            start = binio.read_u32(fh)
            length = binio.read_u32(fh)
            offsets.append((start, length))
        patches = binio.read_f32_array(fh, n * p * p * c).reshape(n, p, p, c)
        raw = fh.read(4 * n)
        if len(raw) != 4 * n:
            raise ValueError("truncated file: expected positional ids")
        positions = np.frombuffer(raw, dtype="<u4").astype(np.int64)
    return PatchSequence(patches=patches, word_offsets=offsets, positional_ids=positions)


def save_matrix(path: str, matrix: np.ndarray) -> None:
    m = np.asarray(matrix, dtype=np.float32)
    if m.ndim != 2:
        raise ValueError(f"expected a rank-2 matrix, got rank {m.ndim}")
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        binio.write_u32(fh, m.shape[0])
        binio.write_u32(fh, m.shape[1])
        binio.write_f32_array(fh, m)


def load_matrix(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        binio.expect_magic(fh, _MAGIC)
        rows = binio.read_u32(fh)
        cols = binio.read_u32(fh)
        return binio.read_f32_array(fh, rows * cols).reshape(rows, cols)
