"""Learning-rate schedule: linear warmup, cosine decay."""

from __future__ import annotations

import math

from ..errors import InvalidStep


def lr_at(
    step: int,
    total_steps: int,
    peak_lr: float = 3e-4,
    min_lr: float = 3e-5,
    warmup_ratio: float = 0.10,
) -> float:
    """Learning rate at an optimizer step.

    Ramps linearly from 0 to ``peak_lr`` over the first
    ``warmup_ratio * total_steps`` steps, then follows a half cosine
    from ``peak_lr`` down to exactly ``min_lr`` at ``total_steps``.
    """
    if not 0 < warmup_ratio < 1:
        raise ValueError(f"warmup_ratio must be in (0, 1), got {warmup_ratio}")
    if not 0 < min_lr <= peak_lr:
        raise ValueError(f"need 0 < min_lr <= peak_lr, got {min_lr}, {peak_lr}")
    if not 0 <= step <= total_steps:
        raise InvalidStep(f"step {step} outside [0, {total_steps}]")
    warmup = warmup_ratio * total_steps
    if step <= warmup:
        return peak_lr * step / warmup
    t = (step - warmup) / (total_steps - warmup)
    return min_lr + (peak_lr - min_lr) * 0.5 * (1.0 + math.cos(math.pi * t))
