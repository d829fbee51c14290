#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace puzzlebench {

enum class ExtractMethod { tag, cot_pattern, bare_integer, choice_text, abstain };

const char* to_string(ExtractMethod m);
std::optional<ExtractMethod> extract_method_from_string(const std::string& s);

// The parsed answer for one completion. `choice` is empty exactly when the
// completion yielded nothing parsable, in which case method is abstain and
// raw_excerpt is empty.
struct Prediction {
  std::optional<int> choice;  // 1..4
  ExtractMethod method = ExtractMethod::abstain;
  std::string raw_excerpt;

  bool abstained() const { return !choice.has_value(); }

  static Prediction abstain() { return {}; }
  static Prediction of(int choice, ExtractMethod method, std::string excerpt) {
    return Prediction{choice, method, std::move(excerpt)};
  }
};

// Strict format: first "<ansN> d </ansN>" occurrence for the given slot,
// whitespace around d optional. An out-of-range d is a no-match, not an
// abstention; lower-priority stages may still fire.
std::optional<Prediction> extract_tagged(std::string_view completion, std::size_t slot);

// Answer-line format: first "Answer N: d" (optional trailing period) for the
// given question number; falls back to bare "Answer: d" only when no
// numbered answer line is present at all.
std::optional<Prediction> extract_cot_answer(std::string_view completion,
                                             std::size_t question_number);

// Full strict-to-lenient chain:
//   tag -> answer line -> standalone digit 1..4 (final line, then whole
//   text) -> unique case-insensitive containment of exactly one choice ->
//   abstain.
// A standalone digit is one not adjacent to another digit or letter. Choice
// matching ignores the choice's trailing punctuation and requires exactly
// one choice to appear; ambiguity abstains rather than guessing.
Prediction extract(std::string_view completion, std::size_t slot,
                   const std::array<std::string, 4>& choices);

}  // namespace puzzlebench
