#pragma once

#include <cstdint>

// Generated by scripts/gen_font.py - do not edit by hand.
// Monospace bitmap of ASCII 32..126; each row is a bitmask,
// bit (width-1-x) set = pixel on.
namespace simseed::fontdata {

constexpr int kGlyphWidth = 6;
constexpr int kGlyphHeight = 11;

constexpr std::uint16_t kGlyphs[95][11] = {
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // ' '
    {0x0000, 0x0000, 0x0000, 0x0018, 0x0018, 0x0018, 0x0018, 0x0000, 0x0018, 0x0000, 0x0000}, // '!'
    {0x0000, 0x0000, 0x0000, 0x0014, 0x0014, 0x0014, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '"'
    {0x0000, 0x0000, 0x0014, 0x0014, 0x003e, 0x0014, 0x0014, 0x003e, 0x0014, 0x0014, 0x0000}, // '#'
    {0x0000, 0x0008, 0x001e, 0x0032, 0x003c, 0x001e, 0x0006, 0x0036, 0x003c, 0x0008, 0x0000}, // '$'
    {0x0000, 0x0000, 0x0038, 0x002a, 0x003c, 0x0008, 0x001e, 0x002a, 0x000e, 0x0000, 0x0000}, // '%'
    {0x0000, 0x0000, 0x0000, 0x001c, 0x0030, 0x0018, 0x003e, 0x002c, 0x003e, 0x0000, 0x0000}, // '&'
    {0x0000, 0x0000, 0x000c, 0x0008, 0x0010, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '''
    {0x0000, 0x0000, 0x0004, 0x0008, 0x0018, 0x0018, 0x0018, 0x0018, 0x0008, 0x0004, 0x0000}, // '('
    {0x0000, 0x0000, 0x0010, 0x0008, 0x000c, 0x000c, 0x000c, 0x000c, 0x0008, 0x0010, 0x0000}, // ')'
    {0x0000, 0x0000, 0x0008, 0x003c, 0x0018, 0x0024, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '*'
    {0x0000, 0x0000, 0x0000, 0x0008, 0x0008, 0x003e, 0x0008, 0x0008, 0x0000, 0x0000, 0x0000}, // '+'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x000c, 0x0008, 0x0010}, // ','
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x003e, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '-'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0018, 0x0000, 0x0000}, // '.'
    {0x0000, 0x0000, 0x0002, 0x0002, 0x0004, 0x0004, 0x0008, 0x0008, 0x0010, 0x0010, 0x0000}, // '/'
    {0x0000, 0x0000, 0x001c, 0x0036, 0x0036, 0x0036, 0x0036, 0x0036, 0x001c, 0x0000, 0x0000}, // '0'
    {0x0000, 0x0000, 0x000c, 0x003c, 0x000c, 0x000c, 0x000c, 0x000c, 0x003f, 0x0000, 0x0000}, // '1'
    {0x0000, 0x0000, 0x001c, 0x0036, 0x0006, 0x000c, 0x0018, 0x0036, 0x003e, 0x0000, 0x0000}, // '2'
    {0x0000, 0x0000, 0x001c, 0x0036, 0x0006, 0x001c, 0x0006, 0x0036, 0x001c, 0x0000, 0x0000}, // '3'
    {0x0000, 0x0000, 0x0006, 0x000e, 0x0016, 0x0036, 0x003f, 0x0006, 0x0006, 0x0000, 0x0000}, // '4'
    {0x0000, 0x0000, 0x003e, 0x0030, 0x003c, 0x0036, 0x0006, 0x0026, 0x003c, 0x0000, 0x0000}, // '5'
    {0x0000, 0x0000, 0x001c, 0x0036, 0x0030, 0x003c, 0x0036, 0x0036, 0x001c, 0x0000, 0x0000}, // '6'
    {0x0000, 0x0000, 0x003e, 0x0036, 0x0006, 0x000c, 0x000c, 0x0018, 0x0018, 0x0000, 0x0000}, // '7'
    {0x0000, 0x0000, 0x001c, 0x0036, 0x0036, 0x001c, 0x0036, 0x0036, 0x001c, 0x0000, 0x0000}, // '8'
    {0x0000, 0x0000, 0x001c, 0x0036, 0x0036, 0x001e, 0x0006, 0x0036, 0x001c, 0x0000, 0x0000}, // '9'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0018, 0x0000, 0x0000, 0x0018, 0x0000, 0x0000}, // ':'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0018, 0x0000, 0x0000, 0x0018, 0x0010, 0x0020}, // ';'
    {0x0000, 0x0000, 0x0000, 0x000c, 0x0018, 0x0030, 0x0018, 0x000c, 0x0000, 0x0000, 0x0000}, // '<'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x003c, 0x0000, 0x003c, 0x0000, 0x0000, 0x0000, 0x0000}, // '='
    {0x0000, 0x0000, 0x0000, 0x0018, 0x000c, 0x0006, 0x000c, 0x0018, 0x0000, 0x0000, 0x0000}, // '>'
    {0x0000, 0x0000, 0x0000, 0x001c, 0x0026, 0x000c, 0x0018, 0x0000, 0x0018, 0x0000, 0x0000}, // '?'
    {0x0000, 0x0000, 0x001c, 0x0032, 0x0026, 0x002a, 0x002a, 0x0027, 0x0030, 0x001c, 0x0000}, // '@'
    {0x0000, 0x0000, 0x0000, 0x003c, 0x001c, 0x0014, 0x003e, 0x0036, 0x0037, 0x0000, 0x0000}, // 'A'
    {0x0000, 0x0000, 0x0000, 0x003c, 0x0036, 0x003c, 0x0036, 0x0036, 0x003c, 0x0000, 0x0000}, // 'B'
    {0x0000, 0x0000, 0x0000, 0x001e, 0x0036, 0x0030, 0x0030, 0x0036, 0x001c, 0x0000, 0x0000}, // 'C'
    {0x0000, 0x0000, 0x0000, 0x003c, 0x0036, 0x0036, 0x0036, 0x0036, 0x003c, 0x0000, 0x0000}, // 'D'
    {0x0000, 0x0000, 0x0000, 0x003e, 0x0030, 0x003c, 0x0030, 0x0036, 0x003e, 0x0000, 0x0000}, // 'E'
    {0x0000, 0x0000, 0x0000, 0x003e, 0x0030, 0x003c, 0x0030, 0x0030, 0x0038, 0x0000, 0x0000}, // 'F'
    {0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x0030, 0x003e, 0x0036, 0x001e, 0x0000, 0x0000}, // 'G'
    {0x0000, 0x0000, 0x0000, 0x0037, 0x0036, 0x003e, 0x0036, 0x0036, 0x0037, 0x0000, 0x0000}, // 'H'
    {0x0000, 0x0000, 0x0000, 0x003c, 0x0018, 0x0018, 0x0018, 0x0018, 0x003c, 0x0000, 0x0000}, // 'I'
    {0x0000, 0x0000, 0x0000, 0x001e, 0x000c, 0x000c, 0x002c, 0x002c, 0x0038, 0x0000, 0x0000}, // 'J'
    {0x0000, 0x0000, 0x0000, 0x0036, 0x0034, 0x0038, 0x003c, 0x0036, 0x003b, 0x0000, 0x0000}, // 'K'
    {0x0000, 0x0000, 0x0000, 0x0038, 0x0030, 0x0030, 0x0030, 0x0036, 0x003e, 0x0000, 0x0000}, // 'L'
    {0x0000, 0x0000, 0x0000, 0x0022, 0x0036, 0x0036, 0x003e, 0x002a, 0x002a, 0x0000, 0x0000}, // 'M'
    {0x0000, 0x0000, 0x0000, 0x0037, 0x003a, 0x003a, 0x0036, 0x0036, 0x0032, 0x0000, 0x0000}, // 'N'
    {0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x0036, 0x0036, 0x0036, 0x001c, 0x0000, 0x0000}, // 'O'
    {0x0000, 0x0000, 0x0000, 0x003c, 0x0036, 0x0036, 0x003c, 0x0030, 0x0038, 0x0000, 0x0000}, // 'P'
    {0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x0036, 0x0036, 0x0036, 0x001c, 0x0006, 0x0000}, // 'Q'
    {0x0000, 0x0000, 0x0000, 0x003c, 0x0036, 0x0036, 0x003c, 0x0036, 0x003b, 0x0000, 0x0000}, // 'R'
    {0x0000, 0x0000, 0x0000, 0x001e, 0x0032, 0x003c, 0x000e, 0x0026, 0x003c, 0x0000, 0x0000}, // 'S'
    {0x0000, 0x0000, 0x0000, 0x003e, 0x001a, 0x0018, 0x0018, 0x0018, 0x003c, 0x0000, 0x0000}, // 'T'
    {0x0000, 0x0000, 0x0000, 0x0037, 0x0036, 0x0036, 0x0036, 0x0036, 0x001c, 0x0000, 0x0000}, // 'U'
    {0x0000, 0x0000, 0x0000, 0x0037, 0x0036, 0x0014, 0x001c, 0x001c, 0x0008, 0x0000, 0x0000}, // 'V'
    {0x0000, 0x0000, 0x0000, 0x002b, 0x002a, 0x002a, 0x003e, 0x001c, 0x0014, 0x0000, 0x0000}, // 'W'
    {0x0000, 0x0000, 0x0000, 0x0033, 0x001e, 0x000c, 0x000c, 0x001e, 0x0033, 0x0000, 0x0000}, // 'X'
    {0x0000, 0x0000, 0x0000, 0x0033, 0x0033, 0x001e, 0x000c, 0x000c, 0x001e, 0x0000, 0x0000}, // 'Y'
    {0x0000, 0x0000, 0x0000, 0x003e, 0x0036, 0x000c, 0x0018, 0x0036, 0x003e, 0x0000, 0x0000}, // 'Z'
    {0x0000, 0x0000, 0x001c, 0x0018, 0x0018, 0x0018, 0x0018, 0x0018, 0x0018, 0x001c, 0x0000}, // '['
    {0x0000, 0x0000, 0x0020, 0x0020, 0x0010, 0x0010, 0x0008, 0x0008, 0x0004, 0x0004, 0x0000}, // 'backslash'
    {0x0000, 0x0000, 0x001c, 0x000c, 0x000c, 0x000c, 0x000c, 0x000c, 0x000c, 0x001c, 0x0000}, // ']'
    {0x0000, 0x0000, 0x0008, 0x001c, 0x0036, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '^'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x003f}, // '_'
    {0x0000, 0x0000, 0x0018, 0x0008, 0x0004, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '`'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x001e, 0x0036, 0x003f, 0x0000, 0x0000}, // 'a'
    {0x0000, 0x0000, 0x0030, 0x0030, 0x003c, 0x0036, 0x0036, 0x0036, 0x003c, 0x0000, 0x0000}, // 'b'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x0030, 0x0036, 0x001c, 0x0000, 0x0000}, // 'c'
    {0x0000, 0x0000, 0x000e, 0x0006, 0x001e, 0x0036, 0x0036, 0x0036, 0x001f, 0x0000, 0x0000}, // 'd'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x003e, 0x0030, 0x001e, 0x0000, 0x0000}, // 'e'
    {0x0000, 0x0000, 0x000e, 0x0018, 0x003e, 0x0018, 0x0018, 0x0018, 0x003e, 0x0000, 0x0000}, // 'f'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001b, 0x0036, 0x0036, 0x0036, 0x001e, 0x0006, 0x003c}, // 'g'
    {0x0000, 0x0000, 0x0030, 0x0030, 0x003c, 0x0036, 0x0036, 0x0036, 0x0036, 0x0000, 0x0000}, // 'h'
    {0x0000, 0x0000, 0x000c, 0x0000, 0x003c, 0x000c, 0x000c, 0x000c, 0x003f, 0x0000, 0x0000}, // 'i'
    {0x0000, 0x0000, 0x000c, 0x0000, 0x003c, 0x000c, 0x000c, 0x000c, 0x000c, 0x000c, 0x0038}, // 'j'
    {0x0000, 0x0000, 0x0030, 0x0030, 0x0036, 0x003c, 0x0038, 0x003c, 0x0037, 0x0000, 0x0000}, // 'k'
    {0x0000, 0x0000, 0x003c, 0x000c, 0x000c, 0x000c, 0x000c, 0x000c, 0x003f, 0x0000, 0x0000}, // 'l'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x003c, 0x003e, 0x002a, 0x002a, 0x002a, 0x0000, 0x0000}, // 'm'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x002c, 0x0036, 0x0036, 0x0036, 0x0036, 0x0000, 0x0000}, // 'n'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001c, 0x0036, 0x0036, 0x0036, 0x001c, 0x0000, 0x0000}, // 'o'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x003c, 0x0036, 0x0036, 0x0036, 0x003c, 0x0030, 0x0038}, // 'p'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001b, 0x0036, 0x0036, 0x0036, 0x001e, 0x0006, 0x000f}, // 'q'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0037, 0x001d, 0x0018, 0x0018, 0x003c, 0x0000, 0x0000}, // 'r'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001e, 0x0038, 0x001e, 0x0007, 0x003e, 0x0000, 0x0000}, // 's'
    {0x0000, 0x0000, 0x0018, 0x0018, 0x003e, 0x0018, 0x0018, 0x001b, 0x000e, 0x0000, 0x0000}, // 't'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0036, 0x0036, 0x0036, 0x0036, 0x001f, 0x0000, 0x0000}, // 'u'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0036, 0x0036, 0x001c, 0x001c, 0x0008, 0x0000, 0x0000}, // 'v'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x002b, 0x002a, 0x003e, 0x001e, 0x0014, 0x0000, 0x0000}, // 'w'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x003b, 0x001e, 0x000c, 0x001e, 0x0037, 0x0000, 0x0000}, // 'x'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x0037, 0x0036, 0x0036, 0x0014, 0x001c, 0x0018, 0x0030}, // 'y'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x003e, 0x002c, 0x0018, 0x0036, 0x003e, 0x0000, 0x0000}, // 'z'
    {0x0000, 0x0000, 0x0006, 0x000c, 0x000c, 0x0018, 0x000c, 0x000c, 0x000c, 0x0006, 0x0000}, // '{'
    {0x0000, 0x0000, 0x0000, 0x0008, 0x0008, 0x0008, 0x0008, 0x0008, 0x0008, 0x0008, 0x0000}, // '|'
    {0x0000, 0x0000, 0x0030, 0x0018, 0x0018, 0x000c, 0x0018, 0x0018, 0x0018, 0x0030, 0x0000}, // '}'
    {0x0000, 0x0000, 0x0000, 0x0000, 0x001a, 0x002c, 0x0000, 0x0000, 0x0000, 0x0000, 0x0000}, // '~'
};

} // namespace simseed::fontdata
