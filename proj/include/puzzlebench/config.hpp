#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "puzzlebench/backend.hpp"
#include "puzzlebench/ensemble.hpp"
#include "puzzlebench/evaluation.hpp"

namespace puzzlebench {

// Flat key=value text format ('#' comments, blank lines ignored). Later
// assignments win, so CLI overrides are applied by appending. Unknown keys
// are rejected to catch typos. The full schema is documented in
// docs/run-config.md.
std::map<std::string, std::string> parse_kv_file(const std::string& path);
void apply_kv_overrides(std::map<std::string, std::string>& kv,
                        const std::vector<std::string>& overrides);  // "key=value"

struct RunConfig {
  RunLabel label;
  StrategyConfig strategy;
  bool ensemble = false;
  std::size_t ensemble_repeats = 5;

  std::string train_path;
  std::string eval_path;
  Split eval_split = Split::dev;
  DatasetFormat dataset_format = DatasetFormat::jsonl;
  std::string annotations_path;

  BackendConfig backend;

  std::string cache_dir;
  std::string output_dir = "runs";
  std::string run_name;  // default: derived from config + dataset digests
  std::size_t parallelism = 0;  // 0 = hardware concurrency

  static RunConfig from_kv(const std::map<std::string, std::string>& kv);

  // Checks cross-field constraints and that referenced files exist.
  void validate() const;
};

}  // namespace puzzlebench
