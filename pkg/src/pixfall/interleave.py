"""Routing text between the vocabulary and the fallback encoder.

Characters at or below U+007F take the token route; anything above it
takes the fallback route.  Whitespace is neutral: a whitespace run
between two segments of the same kind stays inside that segment, a run
between differing kinds attaches to the preceding segment, and leading
whitespace attaches to the following one.  Concatenating the split
segments always reproduces the input exactly.

``build_mixed`` turns the split into model input: token segments
carry byte-pair ids, fallback segments carry the encoder's word
vectors as soft rows, and an optional one-token ``<txt>``/``<img>``
marker can precede each segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import torch

from .lm import MixedSequence, SoftSegment, VocabSegment
from .textrender.segment import Word, pretokenize
from .tokenizer import BPETokenizer

TEXT_KIND = "txt"
IMAGE_KIND = "img"


def _char_kind(ch: str) -> str | None:
    if ch.isspace():
        return None
    return TEXT_KIND if ord(ch) <= 0x7F else IMAGE_KIND


def split_by_modality(text: str) -> list[tuple[str, str]]:
    """Split text into (kind, substring) runs by the routing rule."""
    if not text:
        return []
    runs: list[tuple[str | None, str]] = []
    for ch in text:
        kind = _char_kind(ch)
        if runs and runs[-1][0] == kind:
            runs[-1] = (kind, runs[-1][1] + ch)
        else:
            runs.append((kind, ch))
    segments: list[tuple[str, str]] = []
    for i, (kind, chunk) in enumerate(runs):
        if kind is None:
            if segments:
                kind = segments[-1][0]
            else:
                nxt = runs[i + 1][0] if i + 1 < len(runs) else None
                kind = nxt if nxt is not None else TEXT_KIND
        if segments and segments[-1][0] == kind:
            segments[-1] = (kind, segments[-1][1] + chunk)
        else:
            segments.append((kind, chunk))
    return segments


@dataclass
class SoftPlan:
    """A fallback-routed span: words to encode, rows filled in later."""

    words: list[Word]


def plan_mixed(
    text: str,
    tokenizer: BPETokenizer,
    force_pixels: bool = False,
    prefix_tokens: bool = False,
    target_span: bool = False,
) -> list:
    """Route text into segments without running the encoder.

    Returns a list of :class:`VocabSegment` and :class:`SoftPlan`
    items; :func:`realize_mixed` turns the plans into soft rows.
    Separating the phases lets a caller batch many texts' fallback
    words into a single encoder forward.
    """
    if force_pixels:
        splits = [(IMAGE_KIND, text)]
    else:
        splits = split_by_modality(text)
    img_id = tokenizer.special_id("<img>")
    txt_id = tokenizer.special_id("<txt>")
    plan: list = []
    for kind, chunk in splits:
        if kind == IMAGE_KIND:
            if prefix_tokens:
                plan.append(VocabSegment([img_id]))
            plan.append(SoftPlan(pretokenize(chunk)))
        else:
            if prefix_tokens:
                plan.append(VocabSegment([txt_id]))
            plan.append(VocabSegment(tokenizer.encode(chunk), target_span=target_span))
    return plan


def realize_mixed(plan: list, rows_per_plan: list[torch.Tensor]) -> MixedSequence:
    """Substitute encoder outputs for the soft plans, in order."""
    rows = iter(rows_per_plan)
    mixed: MixedSequence = []
    for item in plan:
        if isinstance(item, SoftPlan):
            mixed.append(SoftSegment(next(rows)))
        else:
            mixed.append(item)
    return mixed


def build_mixed(
    text: str,
    tokenizer: BPETokenizer,
    encode_words: Callable[[list[Word]], torch.Tensor],
    force_pixels: bool = False,
    prefix_tokens: bool = False,
    target_span: bool = False,
) -> MixedSequence:
    """Build LM input segments for a piece of text.

    ``encode_words`` maps a word list to an (n_words, d_model) tensor.
    With ``force_pixels`` every character goes through the fallback
    route regardless of its codepoint; with ``prefix_tokens`` each
    segment is preceded by a one-token ``<txt>``/``<img>`` marker.
    ``target_span`` marks the token segments for loss; fallback
    segments never carry loss.
    """
    plan = plan_mixed(text, tokenizer, force_pixels, prefix_tokens, target_span)
    rows = [encode_words(item.words) for item in plan if isinstance(item, SoftPlan)]
    return realize_mixed(plan, rows)
