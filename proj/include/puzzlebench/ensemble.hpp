#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puzzlebench/backend.hpp"
#include "puzzlebench/extraction.hpp"
#include "puzzlebench/prompting.hpp"

namespace puzzlebench {

struct EnsembleConfig {
  std::size_t repeats = 5;
  StrategyConfig strategy;  // template; repeat r runs with a derived seed
  std::uint64_t base_seed = 0;

  void validate() const;
};

struct EnsembleResult {
  std::string puzzle_id;
  std::vector<Prediction> votes;  // ordered by repeat index
  std::map<int, std::size_t> tally;  // choice -> count, abstentions excluded
  std::optional<int> final_choice;   // empty = abstain
  bool tie_broken = false;
  double agreement = 0.0;  // max tally / non-abstaining votes; 0 if all abstain
};

struct VoteOutcome {
  std::optional<int> final_choice;
  bool tie_broken = false;
};

// Majority vote with abstentions removed; ties break to the lowest choice
// index so results are deterministic and auditable. All votes abstaining
// yields an abstention. Votes must be non-empty.
VoteOutcome majority_vote(const std::vector<std::optional<int>>& votes);

// One prompt -> complete -> extract pass plus everything needed to audit it.
struct TraceRecord {
  std::string puzzle_id;
  std::size_t repeat = 0;  // 0 for non-ensemble runs
  std::string prompt_hash;
  std::vector<std::string> exemplar_ids;
  std::string completion;
  Prediction prediction;
  std::string error;  // backend failure message; prediction abstains
};

// Runs a single pass. Backend failures that exhaust retries are recorded in
// the trace and become an abstention instead of aborting the batch; auth
// and configuration errors still propagate.
TraceRecord run_single(const Puzzle& puzzle, const StrategyConfig& cfg, const PuzzleSet& train,
                       const CoTAnnotationMap& annotations, Backend& backend);

// Repeats run_single with per-repeat seeds derived from base_seed (repeat r
// uses the r-th SplitMix64 output, so repeats may execute in any order or
// concurrently with identical results) and aggregates by majority vote.
EnsembleResult run_ensemble(const Puzzle& puzzle, const EnsembleConfig& ecfg,
                            const PuzzleSet& train, const CoTAnnotationMap& annotations,
                            Backend& backend, std::vector<TraceRecord>* traces);

}  // namespace puzzlebench
