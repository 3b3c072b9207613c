"""Fallback word encoder.

A small pre-norm transformer turns a run of words into one vector per
word, sized to drop straight into the language model's embedding space.
Two input modes share the trunk:

* pixel mode embeds flattened bigram patches through a bias-free linear
  projection;
* byte mode embeds raw UTF-8 bytes through a 256-entry table.

Positions restart at zero inside every word and attention is block
diagonal over words, so each word's vector depends only on its own
patches or bytes.  The final word vector is the mean of the last-layer
states over the word's block, passed through a bias-free output
projection into the LM width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import torch
from torch import nn

from .errors import NumericalError, PositionOverflow, SequenceTooLong
from .textrender.render import PatchSequence
from .textrender.segment import Word


@dataclass
class EncoderConfig:
    mode: str = "pixel"  # "pixel" | "byte"
    patch_size: int = 24
    channels: int = 1
    d_model: int = 192
    n_layers: int = 2
    n_heads: int = 4
    d_ff: int = 768
    d_lm: int = 768
    max_word_positions: int = 64
    max_sequence: int = 529  # 2048 is the byte-mode convention

    def __post_init__(self):
        if self.mode not in ("pixel", "byte"):
            raise ValueError(f"mode must be 'pixel' or 'byte', got {self.mode!r}")
        if self.d_model % self.n_heads != 0:
            raise ValueError(
                f"d_model {self.d_model} not divisible by n_heads {self.n_heads}"
            )


def block_attention_mask(
    word_offsets: list[tuple[int, int]], n: int, device=None
) -> torch.Tensor:
    """Additive (n, n) mask: 0 inside a word's block, -inf elsewhere."""
    mask = torch.full((n, n), float("-inf"), device=device)
    for start, length in word_offsets:
        mask[start : start + length, start : start + length] = 0.0
    return mask


class _Block(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.ln1 = nn.LayerNorm(cfg.d_model)
        self.ln2 = nn.LayerNorm(cfg.d_model)
        self.qkv = nn.Linear(cfg.d_model, 3 * cfg.d_model)
        self.proj = nn.Linear(cfg.d_model, cfg.d_model)
        self.ff1 = nn.Linear(cfg.d_model, cfg.d_ff)
        self.ff2 = nn.Linear(cfg.d_ff, cfg.d_model)
        self.n_heads = cfg.n_heads
        self.head_dim = cfg.d_model // cfg.n_heads

    def forward(self, x: torch.Tensor, mask: torch.Tensor) -> torch.Tensor:
        n, d = x.shape
        q, k, v = self.qkv(self.ln1(x)).chunk(3, dim=-1)
        q = q.view(n, self.n_heads, self.head_dim).transpose(0, 1)
        k = k.view(n, self.n_heads, self.head_dim).transpose(0, 1)
        v = v.view(n, self.n_heads, self.head_dim).transpose(0, 1)
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.head_dim)
        scores = scores + mask
        attn = torch.softmax(scores, dim=-1)
        out = (attn @ v).transpose(0, 1).reshape(n, d)
        x = x + self.proj(out)
        x = x + self.ff2(torch.nn.functional.gelu(self.ff1(self.ln2(x))))
        return x


class FallbackEncoder(nn.Module):
    def __init__(self, cfg: EncoderConfig):
        super().__init__()
        self.cfg = cfg
        if cfg.mode == "pixel":
            in_dim = cfg.patch_size * cfg.patch_size * cfg.channels
            self.input_proj = nn.Linear(in_dim, cfg.d_model, bias=False)
        else:
            self.byte_embed = nn.Embedding(256, cfg.d_model)
        self.pos_embed = nn.Embedding(cfg.max_word_positions, cfg.d_model)
        self.blocks = nn.ModuleList(_Block(cfg) for _ in range(cfg.n_layers))
        self.ln_f = nn.LayerNorm(cfg.d_model)
        self.out_proj = nn.Linear(cfg.d_model, cfg.d_lm, bias=False)

    def forward(
        self,
        inputs: torch.Tensor,
        positional_ids: torch.Tensor,
        word_offsets: list[tuple[int, int]],
    ) -> torch.Tensor:
        """Encode a flat unit sequence into one vector per word.

        ``inputs`` is ``(N, P, P, C)`` float patches in pixel mode or
        ``(N,)`` byte ids in byte mode; ``word_offsets`` gives each
        word's (start, length) block in the flat sequence.
        """
        n = inputs.shape[0]
        if n > self.cfg.max_sequence:
            raise SequenceTooLong(n, self.cfg.max_sequence)
        if positional_ids.numel() and int(positional_ids.max()) >= self.cfg.max_word_positions:
            raise PositionOverflow(
                f"position {int(positional_ids.max())} exceeds table size "
                f"{self.cfg.max_word_positions}"
            )
        if self.cfg.mode == "pixel":
            x = self.input_proj(inputs.reshape(n, -1))
        else:
            x = self.byte_embed(inputs)
        x = x + self.pos_embed(positional_ids)
        mask = block_attention_mask(word_offsets, n, device=x.device)
        for block in self.blocks:
            x = block(x, mask)
        x = self.ln_f(x)
        pooled = torch.stack(
            [x[start : start + length].mean(dim=0) for start, length in word_offsets]
        )
        out = self.out_proj(pooled)
        if not torch.isfinite(out).all():
            raise NumericalError("non-finite values in encoder output")
        return out

    def encode_patches(self, seq: PatchSequence) -> torch.Tensor:
        patches = torch.from_numpy(seq.patches)
        positions = torch.from_numpy(seq.positional_ids)
        return self.forward(patches, positions, seq.word_offsets)


def byte_sequence(words: list[Word]) -> tuple[torch.Tensor, torch.Tensor, list[tuple[int, int]]]:
    """Flatten words to UTF-8 byte ids with per-word extents and positions."""
    ids: list[int] = []
    positions: list[int] = []
    offsets: list[tuple[int, int]] = []
    start = 0
    for word in words:
        data = word.text.encode("utf-8")
        ids.extend(data)
        positions.extend(range(len(data)))
        offsets.append((start, len(data)))
        start += len(data)
    return (
        torch.tensor(ids, dtype=torch.long),
        torch.tensor(positions, dtype=torch.long),
        offsets,
    )


def count_parameters(module: nn.Module, include_output_projection: bool = True) -> int:
    """Total trainable parameter count, optionally excluding ``out_proj``."""
    total = 0
    for name, p in module.named_parameters():
        if not include_output_projection and name.startswith("out_proj"):
            continue
        total += p.numel()
    return total
