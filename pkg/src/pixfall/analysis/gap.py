"""Modality-gap measurement between soft and vocabulary embeddings.

Two views of the same quantity: the distance between the modality
centroids, and the held-out accuracy of a linear probe trained to tell
the modalities apart.  A well-aligned fallback encoder shrinks both;
chance-level probe accuracy means the modalities are inseparable.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch

from ..errors import EmptyInput, ShapeError

PROBE_STEPS = 1000
PROBE_LR = 0.1
PROBE_TRAIN_FRACTION = 0.8


@dataclass(frozen=True)
class GapReport:
    centroid_distance: float
    probe_accuracy: float
    n_soft: int
    n_vocab: int


def _check(soft: torch.Tensor, vocab: torch.Tensor) -> None:
    if soft.ndim != 2 or vocab.ndim != 2:
        raise ShapeError("embedding sets must be rank-2 (n, d)")
    if soft.shape[0] == 0 or vocab.shape[0] == 0:
        raise EmptyInput("embedding sets must be non-empty")
    if soft.shape[1] != vocab.shape[1]:
        raise ShapeError(
            f"dimension mismatch: soft {soft.shape[1]} vs vocab {vocab.shape[1]}"
        )


def centroid_distance(soft: torch.Tensor, vocab: torch.Tensor) -> float:
    _check(soft, vocab)
    mu_soft = soft.double().mean(dim=0)
    mu_vocab = vocab.double().mean(dim=0)
    return float(torch.linalg.vector_norm(mu_soft - mu_vocab))


def _split(n: int, generator: torch.Generator) -> tuple[torch.Tensor, torch.Tensor]:
    perm = torch.randperm(n, generator=generator)
    n_train = max(1, int(n * PROBE_TRAIN_FRACTION))
    if n_train == n:  # keep at least one held-out sample
        n_train = n - 1
    return perm[:n_train], perm[n_train:]


def probe_accuracy(
    soft: torch.Tensor, vocab: torch.Tensor, seed: int = 0
) -> float:
    """Logistic-regression probe: one linear layer trained with plain
    full-batch gradient descent, split 80/20 per modality so both
    classes appear on each side.  Returns held-out accuracy."""
    _check(soft, vocab)
    if soft.shape[0] < 2 or vocab.shape[0] < 2:
        raise EmptyInput("probe needs at least 2 samples per modality")
    generator = torch.Generator().manual_seed(seed)
    s_train, s_test = _split(soft.shape[0], generator)
    v_train, v_test = _split(vocab.shape[0], generator)

    x_train = torch.cat([soft[s_train], vocab[v_train]]).double()
    y_train = torch.cat(
        [torch.ones(len(s_train)), torch.zeros(len(v_train))]
    ).double()
    x_test = torch.cat([soft[s_test], vocab[v_test]]).double()
    y_test = torch.cat([torch.ones(len(s_test)), torch.zeros(len(v_test))])

    w = torch.zeros(x_train.shape[1], dtype=torch.float64)
    b = torch.zeros((), dtype=torch.float64)
    n = x_train.shape[0]
    for _ in range(PROBE_STEPS):
        p = torch.sigmoid(x_train @ w + b)
        err = p - y_train
        w -= PROBE_LR * (x_train.T @ err) / n
        b -= PROBE_LR * err.mean()
    predictions = (x_test @ w + b) > 0
    return float((predictions == (y_test > 0.5)).double().mean())


def modality_gap(
    soft: torch.Tensor, vocab: torch.Tensor, seed: int = 0
) -> GapReport:
    return GapReport(
        centroid_distance=centroid_distance(soft, vocab),
        probe_accuracy=probe_accuracy(soft, vocab, seed),
        n_soft=soft.shape[0],
        n_vocab=vocab.shape[0],
    )
