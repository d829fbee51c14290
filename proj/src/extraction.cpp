#include "puzzlebench/extraction.hpp"

#include <cctype>

#include "puzzlebench/text.hpp"

namespace puzzlebench {

const char* to_string(ExtractMethod m) {
  switch (m) {
    case ExtractMethod::tag: return "tag";
    case ExtractMethod::cot_pattern: return "cot_pattern";
    case ExtractMethod::bare_integer: return "bare_integer";
    case ExtractMethod::choice_text: return "choice_text";
    default: return "abstain";
  }
}

std::optional<ExtractMethod> extract_method_from_string(const std::string& s) {
  if (s == "tag") return ExtractMethod::tag;
  if (s == "cot_pattern") return ExtractMethod::cot_pattern;
  if (s == "bare_integer") return ExtractMethod::bare_integer;
  if (s == "choice_text") return ExtractMethod::choice_text;
  if (s == "abstain") return ExtractMethod::abstain;
  return std::nullopt;
}

namespace {

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) {
  return is_ascii_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

// Parses an integer at position i; returns the value and end position, or
// nullopt if no digit is present. Values are clamped into int range by
// capping the digit count (completions never carry meaningful 10-digit
// answers).
std::optional<std::pair<int, std::size_t>> parse_int(std::string_view s, std::size_t i) {
  std::size_t j = i;
  long value = 0;
  while (j < s.size() && is_ascii_digit(s[j]) && j - i < 9) {
    value = value * 10 + (s[j] - '0');
    ++j;
  }
  if (j == i) return std::nullopt;
  return std::make_pair(static_cast<int>(value), j);
}

std::optional<Prediction> match_answer_line(std::string_view s, const std::string& label) {
  // label is "Answer 9" or "Answer"; the colon follows optional spaces.
  for (std::size_t pos = s.find(label); pos != std::string_view::npos;
       pos = s.find(label, pos + 1)) {
    std::size_t i = skip_spaces(s, pos + label.size());
    if (i >= s.size() || s[i] != ':') continue;
    i = skip_spaces(s, i + 1);
    const auto num = parse_int(s, i);
    if (!num) continue;
    std::size_t end = num->second;
    if (end < s.size() && s[end] == '.') ++end;
    if (num->first < 1 || num->first > 4) return std::nullopt;
    return Prediction::of(num->first, ExtractMethod::cot_pattern,
                          std::string(s.substr(pos, end - pos)));
  }
  return std::nullopt;
}

// True if any "Answer <number>:" line exists, regardless of its payload.
bool has_numbered_answer_line(std::string_view s) {
  for (std::size_t pos = s.find("Answer "); pos != std::string_view::npos;
       pos = s.find("Answer ", pos + 1)) {
    std::size_t i = skip_spaces(s, pos + 7);
    const auto num = parse_int(s, i);
    if (!num) continue;
    const std::size_t j = skip_spaces(s, num->second);
    if (j < s.size() && s[j] == ':') return true;
  }
  return false;
}

std::optional<Prediction> first_standalone_digit(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c < '1' || c > '4') continue;
    if (i > 0 && is_alnum(s[i - 1])) continue;
    if (i + 1 < s.size() && is_alnum(s[i + 1])) continue;
    return Prediction::of(c - '0', ExtractMethod::bare_integer, std::string(1, c));
  }
  return std::nullopt;
}

}  // namespace

std::optional<Prediction> extract_tagged(std::string_view completion, std::size_t slot) {
  const std::string n = std::to_string(slot);
  const std::string open = "<ans" + n + ">";
  const std::string close = "</ans" + n + ">";
  const auto skip_ws = [&completion](std::size_t i) {
    while (i < completion.size() &&
           (completion[i] == ' ' || completion[i] == '\t' || completion[i] == '\n' ||
            completion[i] == '\r')) {
      ++i;
    }
    return i;
  };
  const std::size_t start = completion.find(open);
  if (start == std::string_view::npos) return std::nullopt;
  std::size_t i = skip_ws(start + open.size());
  const auto num = parse_int(completion, i);
  if (!num) return std::nullopt;
  i = skip_ws(num->second);
  if (completion.compare(i, close.size(), close) != 0) return std::nullopt;
  if (num->first < 1 || num->first > 4) return std::nullopt;
  return Prediction::of(num->first, ExtractMethod::tag,
                        std::string(completion.substr(start, i + close.size() - start)));
}

std::optional<Prediction> extract_cot_answer(std::string_view completion,
                                             std::size_t question_number) {
  const std::string numbered = "Answer " + std::to_string(question_number);
  if (auto hit = match_answer_line(completion, numbered)) return hit;
  if (has_numbered_answer_line(completion)) return std::nullopt;
  return match_answer_line(completion, "Answer");
}

Prediction extract(std::string_view completion, std::size_t slot,
                   const std::array<std::string, 4>& choices) {
  if (auto hit = extract_tagged(completion, slot)) return *hit;
  if (auto hit = extract_cot_answer(completion, slot)) return *hit;
  if (auto hit = first_standalone_digit(text::final_nonempty_line(completion))) return *hit;
  if (auto hit = first_standalone_digit(completion)) return *hit;

  int matched = 0;
  std::size_t match_pos = 0;
  std::size_t match_len = 0;
  for (int i = 0; i < 4; ++i) {
    const std::string needle = [&] {
      std::string_view t = text::trim(choices[static_cast<std::size_t>(i)]);
      while (!t.empty() && (t.back() == '.' || t.back() == '!' || t.back() == '?')) {
        t.remove_suffix(1);
      }
      return std::string(text::trim(t));
    }();
    if (needle.empty()) continue;
    const std::size_t pos = text::ifind(completion, needle);
    if (pos != std::string_view::npos) {
      if (matched != 0) return Prediction::abstain();  // ambiguous
      matched = i + 1;
      match_pos = pos;
      match_len = needle.size();
    }
  }
  if (matched != 0) {
    return Prediction::of(matched, ExtractMethod::choice_text,
                          std::string(completion.substr(match_pos, match_len)));
  }
  return Prediction::abstain();
}

}  // namespace puzzlebench
