#include "puzzlebench/ensemble.hpp"

#include <algorithm>

#include "puzzlebench/errors.hpp"
#include "puzzlebench/rng.hpp"

namespace puzzlebench {

void EnsembleConfig::validate() const {
  if (repeats < 1) throw ConfigError("ensemble repeats must be >= 1");
  strategy.validate();
}

VoteOutcome majority_vote(const std::vector<std::optional<int>>& votes) {
  if (votes.empty()) throw Error("majority_vote: empty vote list");
  std::size_t counts[5] = {0, 0, 0, 0, 0};
  for (const auto& v : votes) {
    if (!v) continue;
    if (*v < 1 || *v > 4) throw Error("majority_vote: choice out of range");
    ++counts[*v];
  }
  std::size_t best = 0;
  int final_choice = 0;
  for (int c = 1; c <= 4; ++c) {
    if (counts[c] > best) {
      best = counts[c];
      final_choice = c;
    }
  }
  if (best == 0) return {std::nullopt, false};
  bool tie = false;
  for (int c = final_choice + 1; c <= 4; ++c) {
    if (counts[c] == best) tie = true;
  }
  return {final_choice, tie};
}

TraceRecord run_single(const Puzzle& puzzle, const StrategyConfig& cfg, const PuzzleSet& train,
                       const CoTAnnotationMap& annotations, Backend& backend) {
  TraceRecord trace;
  trace.puzzle_id = puzzle.id;

  const RenderedPrompt prompt = build_prompt(puzzle, cfg, train, annotations);
  trace.exemplar_ids = prompt.exemplar_ids;
  const BackendConfig& bcfg = backend.config();
  trace.prompt_hash = cache_key(prompt.text, bcfg.model_name, bcfg.temperature, bcfg.max_tokens);

  try {
    const Completion completion = backend.complete(prompt);
    trace.completion = completion.text;
    trace.prediction = extract(completion.text, prompt.answer_slot, puzzle.choices);
  } catch (const RetriesExhaustedError& ex) {
    trace.error = ex.what();
    trace.prediction = Prediction::abstain();
  } catch (const ScriptMissError& ex) {
    trace.error = ex.what();
    trace.prediction = Prediction::abstain();
  }
  return trace;
}

EnsembleResult run_ensemble(const Puzzle& puzzle, const EnsembleConfig& ecfg,
                            const PuzzleSet& train, const CoTAnnotationMap& annotations,
                            Backend& backend, std::vector<TraceRecord>* traces) {
  ecfg.validate();
  EnsembleResult result;
  result.puzzle_id = puzzle.id;

  std::vector<std::optional<int>> votes;
  votes.reserve(ecfg.repeats);
  for (std::size_t r = 1; r <= ecfg.repeats; ++r) {
    StrategyConfig cfg = ecfg.strategy;
    cfg.seed = derive_repeat_seed(ecfg.base_seed, r);
    TraceRecord trace = run_single(puzzle, cfg, train, annotations, backend);
    trace.repeat = r;
    result.votes.push_back(trace.prediction);
    votes.push_back(trace.prediction.choice);
    if (traces != nullptr) traces->push_back(std::move(trace));
  }

  std::size_t abstain = 0;
  for (const auto& v : votes) {
    if (v) {
      ++result.tally[*v];
    } else {
      ++abstain;
    }
  }
  const VoteOutcome outcome = majority_vote(votes);
  result.final_choice = outcome.final_choice;
  result.tie_broken = outcome.tie_broken;
  if (abstain < votes.size()) {
    std::size_t best = 0;
    for (const auto& [choice, count] : result.tally) best = std::max(best, count);
    result.agreement =
        static_cast<double>(best) / static_cast<double>(votes.size() - abstain);
  }
  return result;
}

}  // namespace puzzlebench
