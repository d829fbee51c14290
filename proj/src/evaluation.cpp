#include "puzzlebench/evaluation.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "puzzlebench/errors.hpp"
#include "puzzlebench/text.hpp"

namespace puzzlebench {

std::string RunLabel::prompting_string() const {
  std::string out = strategy == Strategy::cot ? "CoT" : "Regular";
  if (ensemble) out += " [E]";
  return out;
}

std::string RunLabel::shots_string() const {
  if (shots == 0) return "Zero Shot";
  return std::to_string(shots) + " Shot";
}

ScoreReport score(const std::map<std::string, Prediction>& predictions,
                  const PuzzleSet& gold, const RunLabel& label) {
  std::set<std::string> gold_ids;
  for (const auto& p : gold.puzzles) gold_ids.insert(p.id);
  for (const auto& [id, pred] : predictions) {
    if (gold_ids.count(id) == 0) {
      throw ScoringError("prediction for unknown puzzle id: " + id);
    }
  }

  ScoreReport report;
  report.label = label;
  report.split = gold.split;
  for (const auto& puzzle : gold.puzzles) {
    if (!puzzle.gold) {
      throw ScoringError("puzzle " + puzzle.id + " has no gold label; cannot score");
    }
    const auto it = predictions.find(puzzle.id);
    if (it == predictions.end()) {
      throw ScoringError("missing prediction for gold puzzle id: " + puzzle.id);
    }
    SubtaskScore& s = puzzle.subtask == Subtask::sentence ? report.sentence : report.word;
    ++s.n_items;
    if (it->second.abstained()) {
      ++s.n_abstain;  // scored as incorrect
    } else if (*it->second.choice == *puzzle.gold) {
      ++s.n_correct;
    }
  }
  for (SubtaskScore* s : {&report.sentence, &report.word}) {
    if (s->n_items > 0) {
      s->accuracy = static_cast<double>(s->n_correct) / static_cast<double>(s->n_items);
    }
  }
  return report;
}

double group_consistency(const std::map<std::string, Prediction>& predictions,
                         const PuzzleSet& gold) {
  std::map<std::string, bool> group_all_correct;
  for (const auto& puzzle : gold.puzzles) {
    if (!puzzle.gold) throw ScoringError("puzzle " + puzzle.id + " has no gold label");
    const auto it = predictions.find(puzzle.id);
    if (it == predictions.end()) {
      throw ScoringError("missing prediction for gold puzzle id: " + puzzle.id);
    }
    const bool correct =
        !it->second.abstained() && *it->second.choice == *puzzle.gold;
    const std::string key = puzzle.group_id ? *puzzle.group_id : "#" + puzzle.id;
    const auto [pos, inserted] = group_all_correct.emplace(key, correct);
    if (!inserted) pos->second = pos->second && correct;
  }
  if (group_all_correct.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& [key, all_correct] : group_all_correct) {
    if (all_correct) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(group_all_correct.size());
}

namespace {

std::optional<double> parse_cell(std::string_view cell) {
  const std::string_view t = text::trim(cell);
  if (t.empty() || t == "--") return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw DataError("baseline table: bad accuracy cell: " + std::string(cell));
  }
  return value;
}

std::string full_precision(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

BaselineTable BaselineTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open baseline table: " + path);
  BaselineTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.rfind("model,", 0) == 0) continue;  // header
    std::vector<std::string> cells;
    std::stringstream ss{std::string(t)};
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) {
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 7 columns, got " + std::to_string(cells.size()));
    }
    BaselineRow row;
    row.model = std::string(text::trim(cells[0]));
    row.prompting = std::string(text::trim(cells[1]));
    row.shots = std::string(text::trim(cells[2]));
    row.sen_dev = parse_cell(cells[3]);
    row.sen_test = parse_cell(cells[4]);
    row.word_dev = parse_cell(cells[5]);
    row.word_test = parse_cell(cells[6]);
    for (const auto& v : {row.sen_dev, row.sen_test, row.word_dev, row.word_test}) {
      if (v && (*v < 0.0 || *v > 1.0)) {
        throw DataError(path + ":" + std::to_string(lineno) + ": accuracy outside [0,1]");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

const BaselineRow* BaselineTable::find(const std::string& model, const std::string& prompting,
                                       const std::string& shots) const {
  for (const auto& row : rows) {
    if (row.model == model && row.prompting == prompting && row.shots == shots) return &row;
  }
  return nullptr;
}

std::string format_accuracy(double value) {
  // Round half up at two decimals, matching the published tables.
  const double scaled = std::floor(value * 100.0 + 0.5);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", scaled / 100.0);
  return buf;
}

namespace {

struct MergedRow {
  RunLabel label;
  std::optional<double> cells[4];  // sen_dev, sen_test, word_dev, word_test
};

std::vector<MergedRow> merge_reports(const std::vector<ScoreReport>& reports) {
  std::vector<MergedRow> rows;
  const auto row_for = [&rows](const RunLabel& label) -> MergedRow& {
    for (auto& r : rows) {
      if (r.label.model == label.model && r.label.strategy == label.strategy &&
          r.label.shots == label.shots && r.label.ensemble == label.ensemble) {
        return r;
      }
    }
    rows.push_back(MergedRow{label, {}});
    return rows.back();
  };
  for (const auto& report : reports) {
    MergedRow& row = row_for(report.label);
    const int base = report.split == Split::dev ? 0 : 1;
    if (report.sentence.n_items > 0) row.cells[base] = report.sentence.accuracy;
    if (report.word.n_items > 0) row.cells[2 + base] = report.word.accuracy;
  }
  return rows;
}

}  // namespace

std::string render_report(const std::vector<ScoreReport>& reports,
                          const BaselineTable& baselines, ReportFormat format) {
  const std::vector<MergedRow> rows = merge_reports(reports);
  std::string out;

  const auto emit_md_cell = [](const std::optional<double>& v) {
    return v ? format_accuracy(*v) : std::string("--");
  };
  const auto emit_csv_cell = [](const std::optional<double>& v, bool full) {
    if (!v) return std::string();
    return full ? full_precision(*v) : format_accuracy(*v);
  };

  if (format == ReportFormat::markdown) {
    out += "| Model | Prompting | Shots | Sen_Dev | Sen_Test | Word_Dev | Word_Test |\n";
    out += "| --- | --- | --- | --- | --- | --- | --- |\n";
    for (const auto& row : baselines.rows) {
      out += "| " + row.model + " | " + row.prompting + " | " + row.shots + " | " +
             emit_md_cell(row.sen_dev) + " | " + emit_md_cell(row.sen_test) + " | " +
             emit_md_cell(row.word_dev) + " | " + emit_md_cell(row.word_test) + " |\n";
    }
    for (const auto& row : rows) {
      out += "| " + row.label.model + " | " + row.label.prompting_string() + " | " +
             row.label.shots_string();
      for (const auto& cell : row.cells) out += " | " + emit_md_cell(cell);
      out += " |\n";
    }
  } else {
    out += "model,prompting,shots,sen_dev,sen_test,word_dev,word_test\n";
    for (const auto& row : baselines.rows) {
      out += row.model + "," + row.prompting + "," + row.shots + "," +
             emit_csv_cell(row.sen_dev, false) + "," + emit_csv_cell(row.sen_test, false) +
             "," + emit_csv_cell(row.word_dev, false) + "," +
             emit_csv_cell(row.word_test, false) + "\n";
    }
    for (const auto& row : rows) {
      out += row.label.model + "," + row.label.prompting_string() + "," +
             row.label.shots_string();
      for (const auto& cell : row.cells) out += "," + emit_csv_cell(cell, true);
      out += "\n";
    }
  }
  return out;
}

AgreementSummary agreement_summary(const std::vector<EnsembleResult>& results) {
  AgreementSummary summary;
  if (results.empty()) return summary;
  std::size_t total_votes = 0;
  std::size_t abstained_votes = 0;
  std::size_t ties = 0;
  double agreement_sum = 0.0;
  for (const auto& r : results) {
    agreement_sum += r.agreement;
    if (r.tie_broken) ++ties;
    total_votes += r.votes.size();
    for (const auto& v : r.votes) {
      if (v.abstained()) ++abstained_votes;
    }
  }
  summary.mean_agreement = agreement_sum / static_cast<double>(results.size());
  summary.tie_rate = static_cast<double>(ties) / static_cast<double>(results.size());
  if (total_votes > 0) {
    summary.abstain_rate =
        static_cast<double>(abstained_votes) / static_cast<double>(total_votes);
  }
  return summary;
}

}  // namespace puzzlebench
