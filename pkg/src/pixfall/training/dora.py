"""Weight-decomposed low-rank adaptation for linear layers.

The adapted weight separates direction from magnitude: with the frozen
base weight W0 (out, in) and low-rank factors B (out, rank) and
A (rank, in),

    V  = W0 + (alpha / rank) * B @ A
    W' = m[i] * V[i, :] / ||V[i, :]||_2        per output row i

where the trainable magnitude vector m has one entry per output unit.
At initialization B = 0 and m holds the row norms of W0, so the adapted
layer reproduces the base layer exactly.  Dropout applies to the input
of the low-rank path only and is disabled in eval mode.
"""

from __future__ import annotations

import math

import torch
from torch import nn

from ..errors import DegenerateColumn


def dora_apply(
    w0: torch.Tensor,
    a: torch.Tensor,
    b: torch.Tensor,
    m: torch.Tensor,
    alpha: float,
    rank: int,
) -> torch.Tensor:
    """Compose the adapted weight matrix from its decomposition."""
    v = w0 + (alpha / rank) * (b @ a)
    norms = v.norm(dim=1)
    if bool((norms == 0).any()):
        raise DegenerateColumn("zero-norm direction row in adapted weight")
    return m[:, None] * v / norms[:, None]


class DoraLinear(nn.Module):
    """Drop-in replacement for a frozen ``nn.Linear``."""

    def __init__(
        self,
        base: nn.Linear,
        rank: int = 32,
        alpha: float = 64.0,
        dropout: float = 0.05,
    ):
        super().__init__()
        out_dim, in_dim = base.weight.shape
        if rank > min(out_dim, in_dim):
            raise ValueError(f"rank {rank} exceeds min(out, in) = {min(out_dim, in_dim)}")
        self.rank = rank
        self.alpha = alpha
        base.weight.requires_grad_(False)
        if base.bias is not None:
            base.bias.requires_grad_(False)
        self.base = base
        self.lora_a = nn.Parameter(torch.empty(rank, in_dim))
        self.lora_b = nn.Parameter(torch.zeros(out_dim, rank))
        nn.init.kaiming_uniform_(self.lora_a, a=math.sqrt(5))
        self.magnitude = nn.Parameter(base.weight.norm(dim=1).clone())
        self.dropout = nn.Dropout(dropout)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        scaling = self.alpha / self.rank
        v = self.base.weight + scaling * (self.lora_b @ self.lora_a)
        norms = v.norm(dim=1)
        if bool((norms == 0).any()):
            raise DegenerateColumn("zero-norm direction row in adapted weight")
        base_part = torch.nn.functional.linear(x, self.base.weight)
        lora_part = scaling * (self.dropout(x) @ self.lora_a.T) @ self.lora_b.T
        # both contributions share the per-row rescale m / ||v||
        out = (self.magnitude / norms) * (base_part + lora_part)
        if self.base.bias is not None:
            out = out + self.base.bias
        return out

    def adapter_parameters(self) -> list[nn.Parameter]:
        return [self.lora_a, self.lora_b, self.magnitude]


def attach_dora(
    lm: nn.Module, rank: int = 32, alpha: float = 64.0, dropout: float = 0.05
) -> list[DoraLinear]:
    """Wrap every attention projection (Q, K, V, O) with an adapter."""
    adapters = []
    for block in lm.blocks:
        for name in ("attn_q", "attn_k", "attn_v", "attn_o"):
            adapter = DoraLinear(getattr(block, name), rank=rank, alpha=alpha, dropout=dropout)
            setattr(block, name, adapter)
            adapters.append(adapter)
    return adapters
