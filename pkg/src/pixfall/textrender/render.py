"""Rendering words to fixed-size pixel patches.

A word of G grapheme clusters becomes max(1, G-1) square patches, one
per sliding character bigram: patch k shows clusters k and k+1 side by
side; a single-cluster word gets one patch showing that cluster alone.
Patches in a sequence carry positional ids that restart at zero on each
word boundary, so the downstream encoder sees within-word positions
only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import SequenceTooLong
from .font import EmbeddedFont, make_backend
from .segment import Word


@dataclass
class RenderConfig:
    """Patch geometry and backend selection.

    ``font_backend`` is either ``"embedded"`` or
    ``"system:<path>[:<size_pt>[:<dpi>]]"``.
    """

    patch_size: int = 24
    channels: int = 1
    font_backend: str = "embedded"
    ink_value: float = 1.0
    background_value: float = 0.0
    max_patches: int = 529

    def __post_init__(self):
        if self.patch_size < 8:
            raise ValueError(f"patch_size must be >= 8, got {self.patch_size}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        if not 0.0 <= self.background_value < self.ink_value <= 1.0:
            raise ValueError(
                "need 0 <= background_value < ink_value <= 1, got "
                f"{self.background_value} and {self.ink_value}"
            )
        if self.max_patches < 1:
            raise ValueError(f"max_patches must be >= 1, got {self.max_patches}")
        self._backend = None

    def backend(self):
        if self._backend is None:
            self._backend = make_backend(self.font_backend)
        return self._backend


def bigram_windows(word: Word) -> list[str]:
    """Sliding bigram windows over the word's grapheme clusters.

    ``Word("Happy")`` gives ``["Ha", "ap", "pp", "py"]``; a one-cluster
    word gives a single window holding just that cluster.
    """
    g = word.graphemes
    if len(g) == 1:
        return [g[0]]
    return [g[i] + g[i + 1] for i in range(len(g) - 1)]


def _window_pairs(word: Word) -> list[tuple[str, ...]]:
    g = word.graphemes
    if len(g) == 1:
        return [(g[0],)]
    return [(g[i], g[i + 1]) for i in range(len(g) - 1)]


@dataclass
class RenderedWord:
    word: Word
    patches: np.ndarray  # (n_patches, P, P, C) float32


@dataclass
class PatchSequence:
    """Patches for a run of words, with per-word extents and positions."""

    patches: np.ndarray  # (N, P, P, C) float32
    word_offsets: list[tuple[int, int]] = field(default_factory=list)  # (start, length)
    positional_ids: np.ndarray = field(default_factory=lambda: np.zeros(0, np.int64))

    def __len__(self) -> int:
        return self.patches.shape[0]


def render_word(word: Word, config: RenderConfig) -> RenderedWord:
    backend = config.backend()
    p = config.patch_size
    y0 = max(0, (p - backend.line_height) // 2)
    windows = _window_pairs(word)
    out = np.full(
        (len(windows), p, p, config.channels), config.background_value, dtype=np.float32
    )
    span = config.ink_value - config.background_value
    for k, clusters in enumerate(windows):
        x = 0
        for cluster in clusters:
            bmp = backend.cluster_bitmap(cluster)
            h = min(bmp.shape[0], p - y0)
            w = min(bmp.shape[1], p - x)
            if h <= 0 or w <= 0:
                break
            tile = config.background_value + bmp[:h, :w] * span
            out[k, y0 : y0 + h, x : x + w, :] = tile[:, :, None]
            x += bmp.shape[1]
            if x >= p:
                break
    return RenderedWord(word=word, patches=out)


def render_sequence(words: list[Word], config: RenderConfig) -> PatchSequence:
    rendered = [render_word(w, config) for w in words]
    total = sum(r.patches.shape[0] for r in rendered)
    if total > config.max_patches:
        raise SequenceTooLong(total, config.max_patches)
    offsets = []
    positions = []
    start = 0
    for r in rendered:
        n = r.patches.shape[0]
        offsets.append((start, n))
        positions.extend(range(n))
        start += n
    patches = np.concatenate([r.patches for r in rendered], axis=0)
    return PatchSequence(
        patches=patches,
        word_offsets=offsets,
        positional_ids=np.asarray(positions, dtype=np.int64),
    )
