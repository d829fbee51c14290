#pragma once

#include <map>
#include <string>

#include "puzzlebench/config.hpp"

namespace puzzlebench {

// Run directory artifacts:
//   manifest.json     config echo (output dir and secrets excluded), dataset
//                     digests, per-puzzle results; byte-stable across reruns
//   predictions.jsonl one line per puzzle: final answer
//   traces.jsonl      one line per (puzzle, repeat): prompt hash, exemplar
//                     ids, completion, prediction; byte-stable
//   stats.json        backend call accounting; varies with cache state
//   score.json        present when the eval set carries gold labels
struct RunResult {
  std::string run_dir;
  std::uint64_t backend_calls = 0;
  std::uint64_t cache_hits = 0;
  bool scored = false;
};

// Executes a full run: load, prompt, complete, extract, (vote,) persist.
// Deterministic given config + datasets + scripted backend: predictions and
// manifest bytes are identical across reruns regardless of cache state or
// parallelism.
RunResult execute_run(const RunConfig& cfg, Clock& clock);

// predictions.jsonl -> id -> Prediction (for re-scoring a finished run).
std::map<std::string, Prediction> load_predictions(const std::string& path);

ScoreReport load_score_report(const std::string& path);
void save_score_report(const ScoreReport& report, const std::string& path);

// Label echoed into the manifest; used by cmd_score/cmd_report.
RunLabel load_manifest_label(const std::string& run_dir);

}  // namespace puzzlebench
