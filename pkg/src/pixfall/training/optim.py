"""Functional AdamW step with decoupled weight decay.

The optimizer is a pure function over (params, grads, state) so the
training loop owns all mutable state explicitly; with weight decay 0
this is bias-corrected Adam.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch


@dataclass
class AdamWConfig:
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    weight_decay: float = 0.0


@dataclass
class AdamWState:
    step: int = 0
    exp_avg: list = field(default_factory=list)
    exp_avg_sq: list = field(default_factory=list)


@torch.no_grad()
def adamw_step(
    params: list[torch.Tensor],
    grads: list[torch.Tensor | None],
    state: AdamWState,
    lr: float,
    config: AdamWConfig | None = None,
) -> AdamWState:
    """Update ``params`` in place and return the advanced state."""
    if config is None:
        config = AdamWConfig()
    if not state.exp_avg:
        state.exp_avg = [torch.zeros_like(p) for p in params]
        state.exp_avg_sq = [torch.zeros_like(p) for p in params]
    state.step += 1
    t = state.step
    bc1 = 1.0 - config.beta1**t
    bc2 = 1.0 - config.beta2**t
    for p, g, m, v in zip(params, grads, state.exp_avg, state.exp_avg_sq):
        if g is None:
            continue
        if config.weight_decay:
            p.mul_(1.0 - lr * config.weight_decay)
        m.mul_(config.beta1).add_(g, alpha=1.0 - config.beta1)
        v.mul_(config.beta2).addcmul_(g, g, value=1.0 - config.beta2)
        denom = (v / bc2).sqrt_().add_(config.eps)
        p.addcdiv_(m, denom, value=-lr / bc1)
    return state
