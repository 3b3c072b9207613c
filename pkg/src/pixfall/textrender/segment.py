"""Word pretokenization and extended grapheme cluster segmentation.

Cluster boundaries follow the Unicode text segmentation rules (UAX #29,
extended grapheme clusters) with codepoint classes derived from
:mod:`unicodedata` categories.  The subset implemented here covers the
scripts the renderer supports: CR/LF and controls, combining marks
(Extend/SpacingMark), ZWJ/ZWNJ, prepended format controls, Hangul jamo
composition, and regional-indicator pairs.  The Indic conjunct-linking
rule added in Unicode 15.1 (GB9c) is intentionally not applied, so a
consonant + virama cluster ends before the following consonant.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Callable, List, Sequence

from ..errors import EmptyInput

# Grapheme_Cluster_Break classes (subset).
_OTHER = 0
_CR = 1
_LF = 2
_CONTROL = 3
_EXTEND = 4
_ZWJ = 5
_SPACING_MARK = 6
_PREPEND = 7
_REGIONAL = 8
_HANGUL_L = 9
_HANGUL_V = 10
_HANGUL_T = 11
_HANGUL_LV = 12
_HANGUL_LVT = 13

_PREPEND_CPS = frozenset(
    list(range(0x0600, 0x0606)) + [0x06DD, 0x070F, 0x0890, 0x0891, 0x08E2, 0x0D4E]
)


def _break_class(cp: int) -> int:
    if cp == 0x0D:
        return _CR
    if cp == 0x0A:
        return _LF
    if cp == 0x200D:
        return _ZWJ
    if cp == 0x200C:
        return _EXTEND
    if cp in _PREPEND_CPS:
        return _PREPEND
    if 0x1F1E6 <= cp <= 0x1F1FF:
        return _REGIONAL
    if 0x1100 <= cp <= 0x115F or 0xA960 <= cp <= 0xA97C:
        return _HANGUL_L
    if 0x1160 <= cp <= 0x11A7 or 0xD7B0 <= cp <= 0xD7C6:
        return _HANGUL_V
    if 0x11A8 <= cp <= 0x11FF or 0xD7CB <= cp <= 0xD7FB:
        return _HANGUL_T
    if 0xAC00 <= cp <= 0xD7A3:
        return _HANGUL_LV if (cp - 0xAC00) % 28 == 0 else _HANGUL_LVT
    cat = unicodedata.category(chr(cp))
    if cat in ("Mn", "Me"):
        return _EXTEND
    if cat == "Mc":
        return _SPACING_MARK
    if cat in ("Cc", "Zl", "Zp", "Cf"):
        return _CONTROL
    return _OTHER


def _breaks_between(prev: int, nxt: int, ri_run: int) -> bool:
    """Whether a cluster boundary falls between two adjacent codepoints."""
    if prev == _CR and nxt == _LF:  # GB3
        return False
    if prev in (_CONTROL, _CR, _LF):  # GB4
        return True
    if nxt in (_CONTROL, _CR, _LF):  # GB5
        return True
    if prev == _HANGUL_L and nxt in (_HANGUL_L, _HANGUL_V, _HANGUL_LV, _HANGUL_LVT):
        return False  # GB6
    if prev in (_HANGUL_LV, _HANGUL_V) and nxt in (_HANGUL_V, _HANGUL_T):
        return False  # GB7
    if prev in (_HANGUL_LVT, _HANGUL_T) and nxt == _HANGUL_T:
        return False  # GB8
    if nxt in (_EXTEND, _ZWJ):  # GB9
        return False
    if nxt == _SPACING_MARK:  # GB9a
        return False
    if prev == _PREPEND:  # GB9b
        return False
    if prev == _REGIONAL and nxt == _REGIONAL and ri_run % 2 == 1:  # GB12/13
        return False
    return True  # GB999


def grapheme_clusters(text: str) -> List[str]:
    """Split ``text`` into extended grapheme clusters."""
    if not text:
        return []
    clusters: List[str] = []
    start = 0
    prev = _break_class(ord(text[0]))
    ri_run = 1 if prev == _REGIONAL else 0
    for i in range(1, len(text)):
        nxt = _break_class(ord(text[i]))
        if _breaks_between(prev, nxt, ri_run):
            clusters.append(text[start:i])
            start = i
        ri_run = ri_run + 1 if nxt == _REGIONAL else 0
        prev = nxt
    clusters.append(text[start:])
    return clusters


@dataclass(frozen=True)
class Word:
    """A pretokenized word together with its grapheme clusters."""

    text: str
    graphemes: tuple = field(default=None)

    def __post_init__(self):
        if not self.text:
            raise EmptyInput("word text must be non-empty")
        if self.graphemes is None:
            object.__setattr__(self, "graphemes", tuple(grapheme_clusters(self.text)))
        if "".join(self.graphemes) != self.text:
            raise ValueError("graphemes do not concatenate to the word text")


Segmenter = Callable[[str], Sequence[str]]


def whitespace_segmenter(text: str) -> List[str]:
    """Default segmenter: split on Unicode whitespace, dropping empties."""
    return text.split()


def pretokenize(text: str, segmenter: Segmenter = whitespace_segmenter) -> List[Word]:
    """Split raw text into :class:`Word` objects.

    A custom ``segmenter`` (for scripts without whitespace word
    boundaries) can be supplied; it receives the raw text and returns
    the word strings in order.
    """
    tokens = [t for t in segmenter(text) if t]
    if not tokens:
        raise EmptyInput("no words after pretokenization")
    return [Word(t) for t in tokens]
