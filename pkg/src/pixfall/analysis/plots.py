"""Report figures for the CLI's analysis paths.

Every helper renders through the Agg backend and writes one PNG next
to the delimited report it illustrates, so report generation works on
headless machines.
"""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import torch

from .compression import LineStats

_DPI = 120


def save_score_histogram(
    scores: Sequence[float], path: str, corpus_score: float | None = None
) -> None:
    """Per-line chrF++ distribution, with the corpus-level score marked."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(list(scores), bins=20, range=(0, 100), color="#4878cf", edgecolor="white")
    if corpus_score is not None:
        ax.axvline(corpus_score, color="#d65f5f", linestyle="--", label=f"corpus {corpus_score:.1f}")
        ax.legend()
    ax.set_xlabel("chrF++")
    ax.set_ylabel("lines")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_training_curves(rows: Sequence, path: str) -> None:
    """Loss curves and the learning-rate schedule from step logs."""
    steps = [r.step for r in rows]
    fig, (ax_loss, ax_lr) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
    ax_loss.plot(steps, [r.loss_ce for r in rows], label="cross-entropy", color="#4878cf")
    if any(r.loss_align for r in rows):
        ax_loss.plot(steps, [r.loss_align for r in rows], label="alignment", color="#d65f5f")
    ax_loss.set_ylabel("loss")
    ax_loss.legend()
    ax_lr.plot(steps, [r.lr for r in rows], color="#6acc65")
    ax_lr.set_ylabel("learning rate")
    ax_lr.set_xlabel("step")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_gap_scatter(soft: torch.Tensor, vocab: torch.Tensor, path: str) -> None:
    """Both embedding sets projected onto the top two principal
    components of their union, centroids marked."""
    both = torch.cat([soft, vocab]).double()
    centered = both - both.mean(dim=0)
    _, _, vt = torch.linalg.svd(centered, full_matrices=False)
    basis = vt[:2].T if vt.shape[0] >= 2 else torch.eye(both.shape[1], 2, dtype=both.dtype)
    coords = centered @ basis
    n_soft = soft.shape[0]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(coords[:n_soft, 0], coords[:n_soft, 1], s=12, alpha=0.6,
               color="#d65f5f", label="soft")
    ax.scatter(coords[n_soft:, 0], coords[n_soft:, 1], s=12, alpha=0.6,
               color="#4878cf", label="vocab")
    for rows, color in ((coords[:n_soft], "#d65f5f"), (coords[n_soft:], "#4878cf")):
        mu = rows.mean(dim=0)
        ax.scatter([mu[0]], [mu[1]], marker="x", s=120, color=color, linewidths=3)
    ax.set_xlabel("pc 1")
    ax.set_ylabel("pc 2")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_length_scatter(stats: Sequence[LineStats], path: str, ratio: float) -> None:
    """Tokens against words per line; the diagonal is ratio 1."""
    words = [s.n_words for s in stats]
    tokens = [s.n_tokens for s in stats]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(words, tokens, s=14, alpha=0.6, color="#4878cf")
    limit = max(max(words, default=1), max(tokens, default=1)) + 1
    ax.plot([0, limit], [0, limit], color="#888888", linestyle=":", label="ratio 1")
    ax.plot([0, limit], [0, limit * ratio], color="#d65f5f", linestyle="--",
            label=f"corpus ratio {ratio:.2f}")
    ax.set_xlabel("words per line")
    ax.set_ylabel("tokens per line")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
