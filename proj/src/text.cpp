#include "phishout/text.hpp"

namespace phishout {

std::string ascii_lower_copy(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(ascii_lower(c));
    return out;
}

bool ascii_iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
    return s;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacementChar;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

char32_t next_codepoint(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return kReplacementChar;
    }
    if (i + static_cast<std::size_t>(len) > s.size()) {
        ++i;
        return kReplacementChar;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return kReplacementChar;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings, surrogates and out-of-range values.
    const bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return kReplacementChar;
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

LetterCase letter_case(char32_t cp) {
    if (cp < 0x80) {
        if (cp >= 'A' && cp <= 'Z') return LetterCase::upper;
        if (cp >= 'a' && cp <= 'z') return LetterCase::lower;
        return LetterCase::none;
    }
    // Latin-1 supplement, excluding multiplication/division signs.
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return LetterCase::upper;
    if ((cp >= 0xDF && cp <= 0xFF && cp != 0xF7) || cp == 0xB5) return LetterCase::lower;
    // Latin Extended-A: upper/lower alternate in pairs over these ranges.
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? LetterCase::upper : LetterCase::lower;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? LetterCase::upper : LetterCase::lower;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? LetterCase::upper : LetterCase::lower;
    if (cp == 0x178) return LetterCase::upper;
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? LetterCase::upper : LetterCase::lower;
    if (cp == 0x17F) return LetterCase::lower;
    // Greek.
    if ((cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) || cp == 0x386 || (cp >= 0x388 && cp <= 0x38F)) {
        return LetterCase::upper;
    }
    if ((cp >= 0x3B1 && cp <= 0x3C9) || cp == 0x3AC || (cp >= 0x3AD && cp <= 0x3B0) || cp == 0x3CA ||
        cp == 0x3CB || cp == 0x3CC || cp == 0x3CD || cp == 0x3CE) {
        return LetterCase::lower;
    }
    // Cyrillic.
    if ((cp >= 0x400 && cp <= 0x42F)) return LetterCase::upper;
    if ((cp >= 0x430 && cp <= 0x45F)) return LetterCase::lower;
    return LetterCase::none;
}

}  // namespace phishout
