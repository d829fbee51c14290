#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "puzzlebench/corpus.hpp"

namespace puzzlebench {

enum class Strategy { zero_shot, few_shot, cot };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& s);

struct StrategyConfig {
  Strategy strategy = Strategy::zero_shot;
  std::size_t shots = 0;
  std::uint64_t seed = 0;

  // zero_shot requires shots == 0; few_shot/cot require shots >= 1.
  void validate() const;
};

// A solved exemplar with per-choice reasoning, used by the chain-of-thought
// layout. Annotations are human-authored and loaded from a file; the answer
// must agree with the puzzle's gold label.
struct CoTExemplar {
  Puzzle puzzle;
  std::array<std::string, 4> rationales;
  std::string decision;
  int answer = 0;  // 1..4, equals puzzle.gold
};

struct CoTAnnotation {
  std::string id;
  std::array<std::string, 4> rationales;
  std::string decision;
  int answer = 0;
};

using CoTAnnotationMap = std::map<std::string, CoTAnnotation>;

// One record per line: {id, rationales[4], decision, answer}.
CoTAnnotationMap load_cot_annotations(const std::string& path);

struct RenderedPrompt {
  std::string text;
  StrategyConfig strategy;
  std::vector<std::string> exemplar_ids;  // sampling order
  std::string query_id;
  std::size_t answer_slot = 1;  // == shots + 1
};

// The three prompt layouts. Rendering is pure and byte-stable; the exact
// line-by-line layouts are frozen in docs/prompt-formats.md and pinned by
// golden-file tests.
RenderedPrompt render_zero_shot(const Puzzle& puzzle);
RenderedPrompt render_few_shot(const Puzzle& puzzle, const std::vector<Puzzle>& exemplars);
RenderedPrompt render_cot(const Puzzle& puzzle, const std::vector<CoTExemplar>& exemplars);

// Composes exemplar sampling with the renderer selected by cfg. For cot,
// every sampled exemplar id must be covered by `annotations`.
RenderedPrompt build_prompt(const Puzzle& puzzle, const StrategyConfig& cfg,
                            const PuzzleSet& train, const CoTAnnotationMap& annotations);

}  // namespace puzzlebench
