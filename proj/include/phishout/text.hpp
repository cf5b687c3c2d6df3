#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace phishout {

inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_lower_copy(std::string_view s);
bool ascii_iequals(std::string_view a, std::string_view b);
std::string_view trim(std::string_view s);

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_hex_digit(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

inline int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

inline constexpr char32_t kReplacementChar = 0xFFFD;

void append_utf8(std::string& out, char32_t cp);

// Decodes the codepoint starting at byte offset i and advances i past it.
// Invalid sequences consume one byte and yield U+FFFD, so iteration always
// terminates on arbitrary bytes.
char32_t next_codepoint(std::string_view s, std::size_t& i);

enum class LetterCase { none, upper, lower };

// Case classification over the Latin, Latin-1/Extended-A, Greek and Cyrillic
// ranges. Codepoints outside those ranges are not counted as letters.
LetterCase letter_case(char32_t cp);

inline bool is_letter(char32_t cp) { return letter_case(cp) != LetterCase::none; }

// Word characters for tokenization: ASCII alphanumerics plus any classified letter.
inline bool is_word_char(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
    }
    return is_letter(cp);
}

}  // namespace phishout
