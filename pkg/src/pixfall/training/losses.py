"""Auxiliary alignment loss and loss combination."""

from __future__ import annotations

import torch

from ..errors import EmptyAlignment, ShapeError


def align_loss(encoded: torch.Tensor, targets: torch.Tensor) -> torch.Tensor:
    """Mean squared Euclidean distance between paired vectors.

    ``encoded`` holds fallback word vectors h(w_k) and ``targets`` the
    vocabulary embedding rows e_{w_k} they should mimic, one pair per
    row: (1/n) sum_k ||h(w_k) - e_{w_k}||^2.
    """
    if encoded.shape[0] == 0:
        raise EmptyAlignment("no alignment pairs")
    if encoded.shape != targets.shape:
        raise ShapeError(f"shape mismatch: {tuple(encoded.shape)} vs {tuple(targets.shape)}")
    return ((encoded - targets) ** 2).sum(dim=1).mean()


def total_loss(
    loss_ce: torch.Tensor, loss_align: torch.Tensor | None, align_enabled: bool
) -> torch.Tensor:
    """Unweighted sum of the two objectives when alignment is enabled."""
    if align_enabled and loss_align is not None:
        return loss_ce + loss_align
    return loss_ce
