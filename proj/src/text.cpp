#include "puzzlebench/text.hpp"

#include <algorithm>
#include <cctype>

namespace puzzlebench::text {

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85:    // NEL
    case 0xA0:    // NBSP
    case 0x1680:  // ogham space mark
    case 0x2028: case 0x2029:
    case 0x202F: case 0x205F:
    case 0x3000:  // ideographic space
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

namespace {

// Decode one UTF-8 code point at `i`; advances `i` past it. Invalid
// sequences consume one byte and yield a sentinel that is never whitespace.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) -> std::uint8_t {
    return static_cast<std::uint8_t>(s[k]);
  };
  const std::uint8_t b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
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
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (int k = 1; k < len; ++k) {
    const std::uint8_t b = byte(i + k);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

}  // namespace

std::size_t count_tokens(std::string_view s) {
  std::size_t n = 0;
  bool in_token = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char32_t cp = decode_utf8(s, i);
    if (is_unicode_space(cp)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++n;
    }
  }
  return n;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view trim(std::string_view s) {
  const auto is_ws = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

std::string normalize_choice(std::string_view s) {
  std::string_view t = trim(s);
  while (!t.empty() && (t.back() == '.' || t.back() == '!' || t.back() == '?' || t.back() == ',')) {
    t.remove_suffix(1);
    t = trim(t);
  }
  return to_lower(t);
}

std::size_t ifind(std::string_view haystack, std::string_view needle) {
  if (needle.empty() || needle.size() > haystack.size()) return std::string_view::npos;
  const auto lower = [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  };
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (lower(haystack[i + k]) != lower(needle[k])) {
        hit = false;
        break;
      }
    }
    if (hit) return i;
  }
  return std::string_view::npos;
}

std::string_view final_nonempty_line(std::string_view s) {
  std::size_t end = s.size();
  while (end > 0) {
    std::size_t start = s.rfind('\n', end - 1);
    const std::size_t line_begin = (start == std::string_view::npos) ? 0 : start + 1;
    std::string_view line = s.substr(line_begin, end - line_begin);
    if (!trim(line).empty()) return line;
    if (line_begin == 0) break;
    end = line_begin - 1;
  }
  return {};
}

}  // namespace puzzlebench::text
