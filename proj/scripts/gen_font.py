#!/usr/bin/env python3
"""Regenerates src/plot_font.hpp from Pillow's built-in bitmap font.

The PNG plot backend needs a tiny monospace pixel font for titles and axis
labels. We rasterize ASCII 32..126 once at build-authoring time and commit
the packed bitmap, so the C++ build has no font dependency.
"""
from PIL import Image, ImageDraw, ImageFont

CHARS = [chr(c) for c in range(32, 127)]


def main() -> None:
    # The classic PIL 6x11 monospace bitmap; load_default() in modern Pillow
    # is a proportional vector font, which defeats fixed-advance layout.
    font = ImageFont.load_default_imagefont()
    # Cell size: max advance x max height over the charset.
    width = 0
    height = 0
    for ch in CHARS:
        l, t, r, b = font.getbbox(ch)
        width = max(width, r)
        height = max(height, b)

    rows_per_char = height
    lines = []
    lines.append("#pragma once")
    lines.append("")
    lines.append("#include <cstdint>")
    lines.append("")
    lines.append("// Generated by scripts/gen_font.py - do not edit by hand.")
    lines.append("// Monospace bitmap of ASCII 32..126; each row is a bitmask,")
    lines.append("// bit (width-1-x) set = pixel on.")
    lines.append("namespace simseed::fontdata {")
    lines.append("")
    lines.append(f"constexpr int kGlyphWidth = {width};")
    lines.append(f"constexpr int kGlyphHeight = {rows_per_char};")
    lines.append("")
    lines.append(f"constexpr std::uint16_t kGlyphs[95][{rows_per_char}] = {{")
    for ch in CHARS:
        img = Image.new("L", (width, rows_per_char), 0)
        draw = ImageDraw.Draw(img)
        draw.text((0, 0), ch, fill=255, font=font)
        rows = []
        for y in range(rows_per_char):
            mask = 0
            for x in range(width):
                if img.getpixel((x, y)) > 127:
                    mask |= 1 << (width - 1 - x)
            rows.append(f"0x{mask:04x}")
        label = ch if ch != "\\" else "backslash"
        lines.append("    {" + ", ".join(rows) + "}, // '" + label + "'")
    lines.append("};")
    lines.append("")
    lines.append("} // namespace simseed::fontdata")
    with open("src/plot_font.hpp", "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"glyph cell {width}x{rows_per_char}, 95 glyphs")


if __name__ == "__main__":
    main()
