#!/usr/bin/env python3
"""Regenerate the frozen bitmap tables in pixfall/textrender/_glyphdata.py.

Rasterizes DejaVu Sans Mono at 15 px into 9x18 cells, thresholds to
bilevel, and writes the packed hex tables.  Run once at development
time; the generated module is committed so the embedded font never
depends on the fonts installed at runtime.

Usage: python tools/gen_font_tables.py [--font PATH] [--out PATH]
"""

import argparse
import sys
from pathlib import Path

from PIL import Image, ImageDraw, ImageFont

CELL_W, CELL_H = 9, 18
SIZE = 15
THRESHOLD = 96

BLOCKS = {
    "ASCII": range(0x20, 0x7F),
    "CYRILLIC": range(0x0400, 0x0460),
}


def render_cell(font, ch):
    im = Image.new("L", (CELL_W, CELL_H), 0)
    ImageDraw.Draw(im).text((0, 0), ch, font=font, fill=255)
    rows = []
    px = im.load()
    for y in range(CELL_H):
        bits = 0
        for x in range(CELL_W):
            if px[x, y] >= THRESHOLD:
                bits |= 1 << (CELL_W - 1 - x)
        rows.append(bits)
    return rows


def pack(rows):
    return "".join(f"{r:03x}" for r in rows)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--font", default="/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf")
    ap.add_argument(
        "--out",
        default=str(Path(__file__).resolve().parent.parent / "src/pixfall/textrender/_glyphdata.py"),
    )
    args = ap.parse_args(argv)

    font = ImageFont.truetype(args.font, SIZE)
    tables = {}
    for name, rng in BLOCKS.items():
        table = {}
        for cp in rng:
            rows = render_cell(font, chr(cp))
            table[cp] = pack(rows)
        # every printable glyph must be distinct within its block
        seen = {}
        for cp, hexrows in table.items():
            if hexrows == "000" * CELL_H:
                continue
            if hexrows in seen:
                print(f"warning: U+{cp:04X} duplicates U+{seen[hexrows]:04X}", file=sys.stderr)
            seen[hexrows] = cp
        tables[name] = table

    lines = [
        '"""Frozen bitmap glyph tables for the embedded font.',
        "",
        "Generated by tools/gen_font_tables.py from DejaVu Sans Mono 15 px;",
        "do not edit by hand.  Each glyph is 18 rows of 9 pixels, one row",
        'packed per 3 hex digits, most significant bit leftmost."""',
        "",
        f"CELL_W = {CELL_W}",
        f"CELL_H = {CELL_H}",
        "",
    ]
    for name, table in tables.items():
        lines.append(f"{name} = {{")
        for cp, hexrows in table.items():
            lines.append(f'    0x{cp:04X}: "{hexrows}",')
        lines.append("}")
        lines.append("")
    Path(args.out).write_text("\n".join(lines))
    print(f"wrote {args.out}: " + ", ".join(f"{k} {len(v)}" for k, v in tables.items()))


if __name__ == "__main__":
    main()
