"""Model checkpoints and freeze verification.

Checkpoint layout ("PXFW", all integers little-endian u32):

    magic "PXFW" | version | config JSON string
    tensor_count
    tensor_count x (name string, rank, dims..., float32 data)

Strings are length-prefixed UTF-8.  The config block is a JSON object
with a ``kind`` tag naming which dataclass it restores.  Freeze checks
hash raw tensor bytes with SHA-256 so "unchanged" means bitwise.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from typing import Iterable

import numpy as np
import torch
from torch import nn

from . import binio

_MAGIC = b"PXFW"
_VERSION = 1


def save_checkpoint(path: str, kind: str, config, tensors: dict) -> None:
    cfg = dict(asdict(config)) if not isinstance(config, dict) else dict(config)
    cfg["kind"] = kind
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        binio.write_u32(fh, _VERSION)
        binio.write_str(fh, json.dumps(cfg, sort_keys=True))
        binio.write_u32(fh, len(tensors))
        for name, tensor in tensors.items():
            arr = np.asarray(
                tensor.detach().cpu().numpy() if isinstance(tensor, torch.Tensor) else tensor,
                dtype=np.float32,
            )
            binio.write_str(fh, name)
            binio.write_u32(fh, arr.ndim)
            for d in arr.shape:
                binio.write_u32(fh, d)
            binio.write_f32_array(fh, arr)


def load_checkpoint(path: str) -> tuple[dict, dict[str, np.ndarray]]:
    with open(path, "rb") as fh:
        binio.expect_magic(fh, _MAGIC)
        version = binio.read_u32(fh)
        if version != _VERSION:
            raise ValueError(f"unsupported checkpoint version {version}")
        cfg = json.loads(binio.read_str(fh))
        count = binio.read_u32(fh)
        tensors = {}
        for _ in range(count):
            name = binio.read_str(fh)
            rank = binio.read_u32(fh)
            dims = [binio.read_u32(fh) for _ in range(rank)]
            n = 1
            for d in dims:
                n *= d
            tensors[name] = binio.read_f32_array(fh, n).reshape(dims)
    return cfg, tensors


def module_tensors(module: nn.Module) -> dict[str, torch.Tensor]:
    return {name: t for name, t in module.state_dict().items()}


def save_module(path: str, kind: str, config, module: nn.Module) -> None:
    save_checkpoint(path, kind, config, module_tensors(module))


def load_into_module(path: str, module: nn.Module) -> dict:
    cfg, tensors = load_checkpoint(path)
    state = {name: torch.from_numpy(arr.copy()) for name, arr in tensors.items()}
    module.load_state_dict(state)
    return cfg


def save_lm(path: str, lm: nn.Module, dora: dict | None = None) -> None:
    """Write a decoder checkpoint; pass ``dora={"rank", "alpha",
    "dropout"}`` when adapters are attached so the loader can rebuild
    the wrapped module shape."""
    cfg = asdict(lm.cfg)
    kind = "lm"
    if dora is not None:
        cfg["dora"] = dict(dora)
        kind = "lm+dora"
    save_checkpoint(path, kind, cfg, module_tensors(lm))


def load_lm(path: str):
    """Rebuild a decoder (plus adapters when present) from ``path``.

    Returns ``(lm, adapters)``; adapters is empty for plain decoders.
    """
    from .lm import DecoderLM, LMConfig
    from .training.dora import attach_dora

    cfg, tensors = load_checkpoint(path)
    kind = cfg.pop("kind")
    if kind not in ("lm", "lm+dora"):
        raise ValueError(f"expected a decoder checkpoint, found kind {kind!r}")
    dora = cfg.pop("dora", None)
    lm = DecoderLM(LMConfig(**cfg))
    adapters = []
    if kind == "lm+dora":
        adapters = attach_dora(
            lm,
            rank=int(dora["rank"]),
            alpha=float(dora["alpha"]),
            dropout=float(dora["dropout"]),
        )
    state = {name: torch.from_numpy(arr.copy()) for name, arr in tensors.items()}
    lm.load_state_dict(state)
    return lm, adapters


def save_encoder(path: str, encoder: nn.Module) -> None:
    save_checkpoint(path, "encoder", asdict(encoder.cfg), module_tensors(encoder))


def load_encoder(path: str):
    from .encoder import EncoderConfig, FallbackEncoder

    cfg, tensors = load_checkpoint(path)
    kind = cfg.pop("kind")
    if kind != "encoder":
        raise ValueError(f"expected an encoder checkpoint, found kind {kind!r}")
    encoder = FallbackEncoder(EncoderConfig(**cfg))
    state = {name: torch.from_numpy(arr.copy()) for name, arr in tensors.items()}
    encoder.load_state_dict(state)
    return encoder


def sha256_tensors(named: Iterable[tuple[str, torch.Tensor]]) -> str:
    """Order-independent digest of named tensors, bitwise on values."""
    digest = hashlib.sha256()
    for name, tensor in sorted(named, key=lambda kv: kv[0]):
        digest.update(name.encode("utf-8"))
        digest.update(str(tuple(tensor.shape)).encode("ascii"))
        digest.update(tensor.detach().cpu().numpy().tobytes())
    return digest.hexdigest()


def sha256_module(module: nn.Module, exclude_substrings: tuple[str, ...] = ()) -> str:
    items = [
        (name, t)
        for name, t in module.state_dict().items()
        if not any(sub in name for sub in exclude_substrings)
    ]
    return sha256_tensors(items)
