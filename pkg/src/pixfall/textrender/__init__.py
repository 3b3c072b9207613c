"""Text segmentation and pixel-patch rendering."""

from .font import EmbeddedFont, SystemFont, make_backend
from .patchio import load_matrix, load_patches, save_matrix, save_patches
from .render import (
    PatchSequence,
    RenderConfig,
    RenderedWord,
    bigram_windows,
    render_sequence,
    render_word,
)
from .segment import Word, grapheme_clusters, pretokenize, whitespace_segmenter

__all__ = [
    "EmbeddedFont",
    "SystemFont",
    "make_backend",
    "load_matrix",
    "load_patches",
    "save_matrix",
    "save_patches",
    "PatchSequence",
    "RenderConfig",
    "RenderedWord",
    "bigram_windows",
    "render_sequence",
    "render_word",
    "Word",
    "grapheme_clusters",
    "pretokenize",
    "whitespace_segmenter",
]
