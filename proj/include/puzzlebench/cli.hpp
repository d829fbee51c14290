#pragma once

#include <string>
#include <vector>

#include "puzzlebench/config.hpp"
#include "puzzlebench/run.hpp"

namespace puzzlebench::cli {

// Exit codes: 0 success, 1 usage, then one class per failure family so
// scripts can tell them apart.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBackend = 4;
inline constexpr int kExitScoring = 5;

int exit_code_for_current_exception();

// validate: per-file subtask counts plus all invariant diagnostics;
// nonzero on any violation.
int cmd_validate(const std::vector<std::string>& paths, DatasetFormat format);

// stats: whitespace-token statistics per subtask.
int cmd_stats(const std::string& path, DatasetFormat format);

// run: execute a config end to end; prints the run directory.
int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides);

// score: re-score a finished run directory against a gold dataset.
int cmd_score(const std::string& run_dir, const std::string& gold_path, DatasetFormat format,
              Split split, bool with_group_consistency);

// report: merge score reports across run directories with the stored
// baselines; empty output path writes to stdout.
int cmd_report(const std::vector<std::string>& run_dirs, const std::string& baselines_path,
               ReportFormat format, const std::string& output_path);

// render: print the exact prompt a run would send for one puzzle. A
// non-empty exemplar id list bypasses seeded sampling and uses those train
// puzzles in the given order.
int cmd_render(const std::string& dataset_path, DatasetFormat format, const std::string& id,
               const StrategyConfig& strategy, const std::string& train_path,
               const std::string& annotations_path,
               const std::vector<std::string>& exemplar_ids);

}  // namespace puzzlebench::cli
