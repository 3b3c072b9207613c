"""Schedules, optimizer, adapters, losses, and the training loop."""

from .dora import DoraLinear, attach_dora, dora_apply
from .loop import (
    StepLog,
    TrainConfig,
    WordEncoderCache,
    build_example,
    train_stage1,
    train_stage2,
    translation_prompt,
)
from .losses import align_loss, total_loss
from .optim import AdamWConfig, AdamWState, adamw_step
from .schedule import lr_at

__all__ = [
    "DoraLinear",
    "attach_dora",
    "dora_apply",
    "StepLog",
    "TrainConfig",
    "WordEncoderCache",
    "build_example",
    "train_stage1",
    "train_stage2",
    "translation_prompt",
    "align_loss",
    "total_loss",
    "AdamWConfig",
    "AdamWState",
    "adamw_step",
    "lr_at",
]
