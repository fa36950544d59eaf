/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef PERCEPT_FONT_DATA_HPP_
#define PERCEPT_FONT_DATA_HPP_

// Small ASCII bitmap font (codes 32..126) used by the chart renderer.
// Each glyph is 11 rows; bit i of a row lights the pixel at x = i.
// advance[] is the horizontal step per glyph.

namespace percept::report {

inline constexpr int kFontHeight = 11;

inline constexpr unsigned char kFontAdvance[95] = {
    4, 3, 4, 7, 7, 8, 8, 2, 5, 3, 7, 7, 2, 4, 2, 5, 6, 5, 6,
    6, 7, 6, 6, 6, 6, 6, 2, 2, 6, 6, 6, 5, 10, 8, 7, 8, 8, 7,
    7, 8, 8, 3, 6, 8, 7, 9, 8, 8, 7, 8, 8, 7, 8, 7, 8, 11, 8,
    8, 8, 5, 5, 3, 6, 6, 3, 6, 7, 6, 6, 7, 5, 6, 7, 3, 3, 7,
    4, 9, 7, 6, 7, 6, 5, 5, 4, 7, 7, 9, 6, 7, 7, 4, 3, 4, 7,
};

inline constexpr unsigned short kFontRows[95][11] = {
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000},  // ' '
    {0x000, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000, 0x002, 0x000},  // '!'
    {0x000, 0x000, 0x006, 0x006, 0x006, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000},  // '"'
    {0x000, 0x000, 0x014, 0x014, 0x004, 0x01e, 0x00c, 0x01e, 0x00a, 0x002, 0x000},  // '#'
    {0x000, 0x008, 0x01c, 0x03e, 0x02a, 0x00e, 0x01c, 0x028, 0x02a, 0x01c, 0x008},  // '$'
    {0x000, 0x000, 0x027, 0x015, 0x015, 0x00a, 0x028, 0x054, 0x054, 0x072, 0x000},  // '%'
    {0x000, 0x000, 0x01c, 0x002, 0x022, 0x07c, 0x026, 0x022, 0x022, 0x03c, 0x000},  // '&'
    {0x000, 0x000, 0x001, 0x001, 0x001, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000},  // '''
    {0x000, 0x000, 0x004, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x004, 0x004},  // '('
    {0x000, 0x000, 0x001, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x001, 0x001},  // ')'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x008, 0x008, 0x01c, 0x014, 0x000, 0x000},  // '*'
    {0x000, 0x000, 0x000, 0x000, 0x008, 0x008, 0x03e, 0x008, 0x008, 0x000, 0x000},  // '+'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x001, 0x000},  // ','
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x003, 0x000, 0x000, 0x000, 0x000},  // '-'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x001, 0x000},  // '.'
    {0x000, 0x000, 0x004, 0x004, 0x000, 0x002, 0x002, 0x002, 0x001, 0x001, 0x000},  // '/'
    {0x000, 0x000, 0x00e, 0x01b, 0x011, 0x011, 0x011, 0x011, 0x01b, 0x00e, 0x000},  // '0'
    {0x000, 0x000, 0x00c, 0x00e, 0x008, 0x008, 0x008, 0x008, 0x008, 0x008, 0x000},  // '1'
    {0x000, 0x000, 0x00c, 0x012, 0x010, 0x010, 0x008, 0x004, 0x002, 0x01e, 0x000},  // '2'
    {0x000, 0x000, 0x00e, 0x013, 0x010, 0x00c, 0x010, 0x011, 0x011, 0x00e, 0x000},  // '3'
    {0x000, 0x000, 0x010, 0x018, 0x014, 0x014, 0x012, 0x03e, 0x010, 0x010, 0x000},  // '4'
    {0x000, 0x000, 0x01e, 0x002, 0x001, 0x00f, 0x013, 0x010, 0x011, 0x00e, 0x000},  // '5'
    {0x000, 0x000, 0x00e, 0x013, 0x011, 0x00f, 0x011, 0x011, 0x011, 0x00e, 0x000},  // '6'
    {0x000, 0x000, 0x01f, 0x010, 0x008, 0x008, 0x004, 0x004, 0x002, 0x002, 0x000},  // '7'
    {0x000, 0x000, 0x00e, 0x011, 0x011, 0x00e, 0x011, 0x011, 0x011, 0x00e, 0x000},  // '8'
    {0x000, 0x000, 0x00e, 0x011, 0x011, 0x011, 0x01e, 0x011, 0x019, 0x00e, 0x000},  // '9'
    {0x000, 0x000, 0x000, 0x000, 0x001, 0x000, 0x000, 0x000, 0x000, 0x001, 0x000},  // ':'
    {0x000, 0x000, 0x000, 0x000, 0x001, 0x000, 0x000, 0x000, 0x001, 0x001, 0x000},  // ';'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x018, 0x006, 0x006, 0x008, 0x010, 0x000},  // '<'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x01e, 0x000, 0x01e, 0x000, 0x000, 0x000},  // '='
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x006, 0x018, 0x018, 0x004, 0x002, 0x000},  // '>'
    {0x000, 0x000, 0x006, 0x009, 0x008, 0x008, 0x004, 0x004, 0x000, 0x004, 0x000},  // '?'
    {0x000, 0x000, 0x070, 0x08c, 0x174, 0x14a, 0x14a, 0x16a, 0x0f2, 0x004, 0x078},  // '@'
    {0x000, 0x000, 0x008, 0x00c, 0x014, 0x014, 0x01e, 0x022, 0x022, 0x021, 0x000},  // 'A'
    {0x000, 0x000, 0x01e, 0x022, 0x022, 0x002, 0x03e, 0x022, 0x022, 0x01e, 0x000},  // 'B'
    {0x000, 0x000, 0x01e, 0x022, 0x021, 0x001, 0x001, 0x021, 0x022, 0x01e, 0x000},  // 'C'
    {0x000, 0x000, 0x01e, 0x022, 0x042, 0x042, 0x042, 0x042, 0x022, 0x01e, 0x000},  // 'D'
    {0x000, 0x000, 0x03e, 0x002, 0x002, 0x002, 0x01e, 0x002, 0x002, 0x03e, 0x000},  // 'E'
    {0x000, 0x000, 0x03e, 0x002, 0x002, 0x002, 0x01e, 0x002, 0x002, 0x002, 0x000},  // 'F'
    {0x000, 0x000, 0x01e, 0x032, 0x021, 0x001, 0x039, 0x021, 0x032, 0x02e, 0x000},  // 'G'
    {0x000, 0x000, 0x042, 0x042, 0x042, 0x042, 0x07e, 0x042, 0x042, 0x042, 0x000},  // 'H'
    {0x000, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000},  // 'I'
    {0x000, 0x000, 0x010, 0x010, 0x010, 0x010, 0x010, 0x012, 0x012, 0x00c, 0x000},  // 'J'
    {0x000, 0x000, 0x022, 0x012, 0x00a, 0x00e, 0x00e, 0x01a, 0x012, 0x022, 0x000},  // 'K'
    {0x000, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x03e, 0x000},  // 'L'
    {0x000, 0x000, 0x0c6, 0x0c6, 0x0c6, 0x0aa, 0x0aa, 0x0aa, 0x0ba, 0x092, 0x000},  // 'M'
    {0x000, 0x000, 0x046, 0x046, 0x04a, 0x04a, 0x052, 0x052, 0x062, 0x062, 0x000},  // 'N'
    {0x000, 0x000, 0x01c, 0x022, 0x041, 0x041, 0x041, 0x041, 0x022, 0x01c, 0x000},  // 'O'
    {0x000, 0x000, 0x01e, 0x022, 0x022, 0x022, 0x01e, 0x002, 0x002, 0x002, 0x000},  // 'P'
    {0x000, 0x000, 0x01c, 0x022, 0x041, 0x041, 0x041, 0x041, 0x022, 0x07c, 0x000},  // 'Q'
    {0x000, 0x000, 0x01e, 0x022, 0x022, 0x022, 0x01e, 0x032, 0x022, 0x022, 0x000},  // 'R'
    {0x000, 0x000, 0x01c, 0x022, 0x002, 0x00c, 0x030, 0x020, 0x022, 0x01c, 0x000},  // 'S'
    {0x000, 0x000, 0x03e, 0x008, 0x008, 0x008, 0x008, 0x008, 0x008, 0x008, 0x000},  // 'T'
    {0x000, 0x000, 0x022, 0x022, 0x022, 0x022, 0x022, 0x022, 0x022, 0x01c, 0x000},  // 'U'
    {0x000, 0x000, 0x021, 0x022, 0x022, 0x012, 0x014, 0x014, 0x00c, 0x00c, 0x000},  // 'V'
    {0x000, 0x000, 0x131, 0x133, 0x132, 0x12a, 0x0ca, 0x0ca, 0x0cc, 0x0c4, 0x000},  // 'W'
    {0x000, 0x000, 0x022, 0x012, 0x014, 0x00c, 0x00c, 0x014, 0x012, 0x023, 0x000},  // 'X'
    {0x000, 0x000, 0x022, 0x022, 0x014, 0x01c, 0x008, 0x008, 0x008, 0x008, 0x000},  // 'Y'
    {0x000, 0x000, 0x03e, 0x030, 0x010, 0x008, 0x008, 0x004, 0x006, 0x03e, 0x000},  // 'Z'
    {0x000, 0x006, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x006},  // '['
    {0x000, 0x000, 0x001, 0x001, 0x000, 0x002, 0x002, 0x002, 0x004, 0x004, 0x000},  // 'backslash'
    {0x000, 0x003, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x003},  // ']'
    {0x000, 0x000, 0x000, 0x000, 0x00c, 0x00c, 0x012, 0x012, 0x000, 0x000, 0x000},  // '^'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x00e},  // '_'
    {0x000, 0x000, 0x000, 0x002, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x000},  // '`'
    {0x000, 0x000, 0x000, 0x000, 0x00e, 0x009, 0x00e, 0x00b, 0x009, 0x00f, 0x000},  // 'a'
    {0x000, 0x000, 0x002, 0x002, 0x01e, 0x022, 0x022, 0x022, 0x022, 0x01e, 0x000},  // 'b'
    {0x000, 0x000, 0x000, 0x000, 0x00e, 0x011, 0x001, 0x001, 0x011, 0x00e, 0x000},  // 'c'
    {0x000, 0x000, 0x010, 0x010, 0x01e, 0x011, 0x011, 0x011, 0x011, 0x01e, 0x000},  // 'd'
    {0x000, 0x000, 0x000, 0x000, 0x00e, 0x011, 0x01f, 0x001, 0x011, 0x00e, 0x000},  // 'e'
    {0x000, 0x004, 0x006, 0x002, 0x007, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000},  // 'f'
    {0x000, 0x000, 0x000, 0x000, 0x01e, 0x011, 0x011, 0x011, 0x011, 0x01e, 0x011},  // 'g'
    {0x000, 0x000, 0x002, 0x002, 0x01e, 0x026, 0x022, 0x022, 0x022, 0x022, 0x000},  // 'h'
    {0x000, 0x000, 0x002, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000},  // 'i'
    {0x000, 0x000, 0x000, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002},  // 'j'
    {0x000, 0x000, 0x002, 0x002, 0x012, 0x00a, 0x006, 0x00e, 0x01a, 0x012, 0x000},  // 'k'
    {0x000, 0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x006, 0x000},  // 'l'
    {0x000, 0x000, 0x000, 0x000, 0x0fe, 0x092, 0x092, 0x092, 0x092, 0x092, 0x000},  // 'm'
    {0x000, 0x000, 0x000, 0x000, 0x01e, 0x026, 0x022, 0x022, 0x022, 0x022, 0x000},  // 'n'
    {0x000, 0x000, 0x000, 0x000, 0x00e, 0x011, 0x011, 0x011, 0x011, 0x00e, 0x000},  // 'o'
    {0x000, 0x000, 0x000, 0x000, 0x01e, 0x022, 0x022, 0x022, 0x022, 0x01e, 0x002},  // 'p'
    {0x000, 0x000, 0x000, 0x000, 0x01e, 0x011, 0x011, 0x011, 0x011, 0x01e, 0x010},  // 'q'
    {0x000, 0x000, 0x000, 0x000, 0x00e, 0x002, 0x002, 0x002, 0x002, 0x002, 0x000},  // 'r'
    {0x000, 0x000, 0x000, 0x000, 0x007, 0x009, 0x003, 0x00c, 0x009, 0x00f, 0x000},  // 's'
    {0x000, 0x000, 0x002, 0x002, 0x007, 0x002, 0x002, 0x002, 0x002, 0x006, 0x000},  // 't'
    {0x000, 0x000, 0x000, 0x000, 0x022, 0x022, 0x022, 0x022, 0x032, 0x03c, 0x000},  // 'u'
    {0x000, 0x000, 0x000, 0x000, 0x011, 0x013, 0x00a, 0x00a, 0x00e, 0x004, 0x000},  // 'v'
    {0x000, 0x000, 0x000, 0x000, 0x099, 0x059, 0x05a, 0x056, 0x066, 0x026, 0x000},  // 'w'
    {0x000, 0x000, 0x000, 0x000, 0x009, 0x00a, 0x006, 0x006, 0x00a, 0x009, 0x000},  // 'x'
    {0x000, 0x000, 0x000, 0x000, 0x011, 0x013, 0x00a, 0x00a, 0x00e, 0x004, 0x004},  // 'y'
    {0x000, 0x000, 0x000, 0x000, 0x01e, 0x018, 0x008, 0x004, 0x006, 0x01e, 0x000},  // 'z'
    {0x000, 0x006, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x006},  // '{'
    {0x000, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002},  // '|'
    {0x000, 0x003, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x002, 0x003},  // '}'
    {0x000, 0x000, 0x000, 0x000, 0x000, 0x000, 0x026, 0x01a, 0x000, 0x000, 0x000},  // '~'
};

}  // namespace percept::report

#endif  // PERCEPT_FONT_DATA_HPP_