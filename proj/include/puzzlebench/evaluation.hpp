#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puzzlebench/corpus.hpp"
#include "puzzlebench/ensemble.hpp"
#include "puzzlebench/extraction.hpp"

namespace puzzlebench {

// Identifies one run configuration in reports.
struct RunLabel {
  std::string model;
  Strategy strategy = Strategy::zero_shot;
  std::size_t shots = 0;
  bool ensemble = false;

  // Table vocabulary: zero/few-shot are "Regular" prompting, chain-of-thought
  // is "CoT" with " [E]" appended for ensembled runs.
  std::string prompting_string() const;
  std::string shots_string() const;  // "Zero Shot" / "4 Shot" / ...
};

struct SubtaskScore {
  std::size_t n_items = 0;
  std::size_t n_correct = 0;
  std::size_t n_abstain = 0;
  double accuracy = 0.0;  // n_correct / n_items; 0 when empty
};

struct ScoreReport {
  RunLabel label;
  Split split = Split::dev;
  SubtaskScore sentence;
  SubtaskScore word;

  const SubtaskScore& for_subtask(Subtask s) const {
    return s == Subtask::sentence ? sentence : word;
  }
};

// Exact-match accuracy against gold labels. Every gold puzzle must have a
// prediction entry (abstentions allowed, scored incorrect); an entry for an
// unknown id or a missing entry is a ScoringError.
ScoreReport score(const std::map<std::string, Prediction>& predictions,
                  const PuzzleSet& gold, const RunLabel& label);

// Optional metric over reconstruction variants: fraction of groups whose
// members are all answered correctly. Ungrouped puzzles form singleton
// groups.
double group_consistency(const std::map<std::string, Prediction>& predictions,
                         const PuzzleSet& gold);

struct BaselineRow {
  std::string model;
  std::string prompting;
  std::string shots;
  // Accuracies as published; empty = not reported.
  std::optional<double> sen_dev, sen_test, word_dev, word_test;
};

struct BaselineTable {
  std::vector<BaselineRow> rows;

  static BaselineTable load(const std::string& path);
  const BaselineRow* find(const std::string& model, const std::string& prompting,
                          const std::string& shots) const;
};

enum class ReportFormat { markdown, csv };

// Comparison table: fixed column order (model, prompting, shots, sen_dev,
// sen_test, word_dev, word_test); baseline rows first, then one row per run
// config merged across splits. Markdown cells show two decimals (round half
// up); CSV keeps full precision. Missing cells render "--" (empty in CSV).
std::string render_report(const std::vector<ScoreReport>& reports,
                          const BaselineTable& baselines, ReportFormat format);

struct AgreementSummary {
  double mean_agreement = 0.0;
  double tie_rate = 0.0;      // fraction of results with a broken tie
  double abstain_rate = 0.0;  // fraction of individual votes that abstained
};

AgreementSummary agreement_summary(const std::vector<EnsembleResult>& results);

// Two-decimal display used by the markdown report (round half up).
std::string format_accuracy(double value);

}  // namespace puzzlebench
