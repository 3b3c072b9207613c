"""Font backends for patch rendering.

Two backends share one interface: ``cluster_bitmap(cluster)`` returns a
float32 array of shape ``(line_height, advance)`` with values in [0, 1],
the rasterization of one grapheme cluster.

* :class:`EmbeddedFont` is fully deterministic and ships with the
  package.  ASCII and the Cyrillic block use frozen bitmaps generated
  from DejaVu Sans Mono (see tools/gen_font_tables.py); the Devanagari
  block and the combining-diacritics block use procedural stroke glyphs
  so the covered scripts never depend on installed fonts.  Marks in a
  cluster are OR-ed into the base glyph's cell.
* :class:`SystemFont` rasterizes through Pillow from a TrueType file
  given by path, with point size and DPI as knobs.  Its output depends
  on the font file and rasterizer version, so it is not used by tests.
"""

from __future__ import annotations

import unicodedata

import numpy as np

from ..errors import BackendError, GlyphMissing
from . import _glyphdata

_CELL_W = _glyphdata.CELL_W
_CELL_H = _glyphdata.CELL_H

# Procedurally covered blocks: Devanagari and combining diacritical marks.
_PROCEDURAL_RANGES = ((0x0900, 0x097F), (0x0300, 0x036F))

# Body strokes for procedural glyphs, as (x0, y0, x1, y1) segments on the
# 9x18 cell below the headline bar.
_STROKES = (
    (1, 5, 1, 13),
    (7, 5, 7, 13),
    (4, 5, 4, 13),
    (1, 13, 7, 13),
    (1, 9, 7, 9),
    (1, 5, 7, 13),
    (7, 5, 1, 13),
    (1, 10, 4, 13),
    (2, 6, 6, 6),
    (2, 6, 2, 10),
    (6, 6, 6, 10),
    (2, 10, 6, 10),
)

_HASH_SALT = 0x9E3779B97F4A7C15


def _mix64(x: int) -> int:
    """SplitMix64 finalizer; the per-codepoint glyph hash."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def _draw_segment(cell: np.ndarray, x0: int, y0: int, x1: int, y1: int) -> None:
    steps = max(abs(x1 - x0), abs(y1 - y0), 1)
    for i in range(steps + 1):
        x = round(x0 + (x1 - x0) * i / steps)
        y = round(y0 + (y1 - y0) * i / steps)
        cell[y, x] = 1


def _procedural_glyph(cp: int) -> np.ndarray:
    """Deterministic stroke glyph for a codepoint without a frozen bitmap.

    Letters get a Devanagari-style headline bar plus at least three body
    strokes chosen by the codepoint hash; combining marks get a compact
    pattern in the strip above or below the body so that composing them
    onto a base changes the cell.  The two bottom rows carry an 11-bit
    codepoint signature, which makes bitmaps pairwise distinct across
    the procedurally covered blocks regardless of stroke collisions.
    """
    cell = np.zeros((_CELL_H, _CELL_W), dtype=np.uint8)
    h = _mix64(cp ^ _HASH_SALT)
    cat = unicodedata.category(chr(cp))
    if cat in ("Mn", "Me", "Mc"):
        top = bool(h & 1)
        rows = (0, 1) if top else (14, 15)
        cols = [c for c in range(1, 8) if (h >> (c + 1)) & 1]
        while len(cols) < 2:
            cols.append((h >> 17) % 7 + 1)
            h = _mix64(h)
        for r in rows:
            for c in cols:
                cell[r, c] = 1
        if cat == "Mc":
            cell[4:14, 8] = 1
    else:
        # headline bar, the visual anchor shared across the block
        cell[3, 0:_CELL_W] = 1
        chosen = [i for i in range(len(_STROKES)) if (h >> i) & 1]
        while len(chosen) < 3:
            extra = (h >> 13) % len(_STROKES)
            if extra not in chosen:
                chosen.append(extra)
            h = _mix64(h)
        for i in chosen:
            _draw_segment(cell, *_STROKES[i])
    ident = cp & 0x7FF
    for i in range(9):
        if (ident >> i) & 1:
            cell[17, i] = 1
    for i in range(2):
        if (ident >> (9 + i)) & 1:
            cell[16, i] = 1
    return cell


def _unpack(hexrows: str) -> np.ndarray:
    cell = np.zeros((_CELL_H, _CELL_W), dtype=np.uint8)
    for y in range(_CELL_H):
        bits = int(hexrows[3 * y : 3 * y + 3], 16)
        for x in range(_CELL_W):
            if bits & (1 << (_CELL_W - 1 - x)):
                cell[y, x] = 1
    return cell


class EmbeddedFont:
    """Deterministic bitmap font with fixed 9x18 glyph cells."""

    cell_width = _CELL_W
    line_height = _CELL_H

    def __init__(self):
        self._cache = {}

    @staticmethod
    def covers(cp: int) -> bool:
        if cp in _glyphdata.ASCII or cp in _glyphdata.CYRILLIC:
            return True
        return any(lo <= cp <= hi for lo, hi in _PROCEDURAL_RANGES)

    def _glyph(self, cp: int) -> np.ndarray:
        cached = self._cache.get(cp)
        if cached is not None:
            return cached
        hexrows = _glyphdata.ASCII.get(cp) or _glyphdata.CYRILLIC.get(cp)
        if hexrows is not None:
            cell = _unpack(hexrows)
        elif any(lo <= cp <= hi for lo, hi in _PROCEDURAL_RANGES):
            cell = _procedural_glyph(cp)
        else:
            raise GlyphMissing(cp)
        cell.setflags(write=False)
        self._cache[cp] = cell
        return cell

    def cluster_bitmap(self, cluster: str) -> np.ndarray:
        cell = self._glyph(ord(cluster[0])).astype(np.float32)
        for ch in cluster[1:]:
            cell = np.maximum(cell, self._glyph(ord(ch)).astype(np.float32))
        return cell


class SystemFont:
    """Pillow-based rasterizer for an arbitrary TrueType font file."""

    def __init__(self, path: str, size_pt: float = 10.0, dpi: int = 120):
        try:
            from PIL import ImageFont
        except ImportError as e:
            raise BackendError(f"Pillow unavailable: {e}") from e
        px = max(1, round(size_pt * dpi / 72.0))
        try:
            self._font = ImageFont.truetype(path, px)
        except OSError as e:
            raise BackendError(f"cannot load font {path}: {e}") from e
        ascent, descent = self._font.getmetrics()
        self.line_height = ascent + descent
        self.cell_width = max(1, round(self._font.getlength("M")))

    def cluster_bitmap(self, cluster: str) -> np.ndarray:
        from PIL import Image, ImageDraw

        try:
            advance = max(1, round(self._font.getlength(cluster)))
            im = Image.new("L", (advance, self.line_height), 0)
            ImageDraw.Draw(im).text((0, 0), cluster, font=self._font, fill=255)
        except Exception as e:
            raise BackendError(f"rasterization failed for {cluster!r}: {e}") from e
        return np.asarray(im, dtype=np.float32) / 255.0


def make_backend(spec: str):
    """Build a backend from its config string.

    ``"embedded"`` selects the deterministic bitmap font; a string of
    the form ``"system:<path>[:<size_pt>[:<dpi>]]"`` selects the Pillow
    rasterizer for that font file.
    """
    if spec == "embedded":
        return EmbeddedFont()
    if spec.startswith("system:"):
        parts = spec.split(":")
        path = parts[1]
        size_pt = float(parts[2]) if len(parts) > 2 else 10.0
        dpi = int(parts[3]) if len(parts) > 3 else 120
        return SystemFont(path, size_pt=size_pt, dpi=dpi)
    raise BackendError(f"unknown font backend {spec!r}")
