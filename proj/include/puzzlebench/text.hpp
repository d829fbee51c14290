#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace puzzlebench::text {

// Count of maximal runs of non-whitespace characters, where whitespace is
// any Unicode whitespace code point (ASCII space/tab/newlines, NBSP, the
// general-punctuation spaces, ideographic space, ...). Input is UTF-8;
// malformed bytes are treated as non-whitespace.
std::size_t count_tokens(std::string_view s);

bool is_unicode_space(char32_t cp);

// ASCII-only case folding; sufficient for tag/choice matching.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

// Trim plus strip trailing ASCII punctuation ('.', '!', '?', ','); used for
// "None of the above" detection and choice-text matching.
std::string normalize_choice(std::string_view s);

// Byte offset of the first case-insensitive occurrence of `needle` in
// `haystack`, or npos. ASCII folding only.
std::size_t ifind(std::string_view haystack, std::string_view needle);

// Last line of `s` that contains a non-whitespace character ("" if none).
std::string_view final_nonempty_line(std::string_view s);

}  // namespace puzzlebench::text
