#include "puzzlebench/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "puzzlebench/errors.hpp"

namespace puzzlebench::cli {

namespace fs = std::filesystem;

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const DataError& ex) {
    std::cerr << "data error: " << ex.what() << "\n";
    return kExitData;
  } catch (const ScoringError& ex) {
    std::cerr << "scoring error: " << ex.what() << "\n";
    return kExitScoring;
  } catch (const BackendError& ex) {
    std::cerr << "backend error: " << ex.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
}

int cmd_validate(const std::vector<std::string>& paths, DatasetFormat format) {
  bool failed = false;
  for (const auto& path : paths) {
    try {
      // Split tag is irrelevant for validation; dev is a neutral choice.
      const PuzzleSet set = load_dataset(path, format, Split::dev);
      std::size_t n_sentence = 0;
      std::size_t n_word = 0;
      std::size_t n_unlabeled = 0;
      for (const auto& p : set.puzzles) {
        (p.subtask == Subtask::sentence ? n_sentence : n_word) += 1;
        if (!p.gold) ++n_unlabeled;
      }
      std::cout << path << ": sentence: " << n_sentence << ", word: " << n_word;
      if (n_unlabeled > 0) std::cout << " (" << n_unlabeled << " unlabeled)";
      std::cout << "\n";
    } catch (const DataError& ex) {
      std::cerr << ex.what() << "\n";
      failed = true;
    }
  }
  return failed ? kExitData : kExitOk;
}

int cmd_stats(const std::string& path, DatasetFormat format) {
  const PuzzleSet set = load_dataset(path, format, Split::dev);
  const CorpusStats stats = compute_stats(set);
  std::printf("%-24s %10s %10s\n", "", "Sentence", "Word");
  std::printf("%-24s %10zu %10zu\n", "Number of puzzles", stats.sentence.n, stats.word.n);
  std::printf("%-24s %10.2f %10.2f\n", "Avg. tokens (prompt)",
              stats.sentence.avg_prompt_tokens, stats.word.avg_prompt_tokens);
  std::printf("%-24s %10.2f %10.2f\n", "Avg. tokens (choices)",
              stats.sentence.avg_choice_tokens, stats.word.avg_choice_tokens);
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  auto kv = parse_kv_file(config_path);
  apply_kv_overrides(kv, overrides);
  const RunConfig cfg = RunConfig::from_kv(kv);

  SystemClock clock;
  const RunResult result = execute_run(cfg, clock);
  std::cout << "run directory: " << result.run_dir << "\n";
  std::cout << "backend calls: " << result.backend_calls
            << ", cache hits: " << result.cache_hits << "\n";
  if (result.scored) {
    const ScoreReport report = load_score_report(result.run_dir + "/score.json");
    for (const Subtask subtask : {Subtask::sentence, Subtask::word}) {
      const SubtaskScore& s = report.for_subtask(subtask);
      if (s.n_items == 0) continue;
      std::cout << to_string(subtask) << " accuracy: " << format_accuracy(s.accuracy) << " ("
                << s.n_correct << "/" << s.n_items << ", " << s.n_abstain << " abstained)\n";
    }
  }
  return kExitOk;
}

int cmd_score(const std::string& run_dir, const std::string& gold_path, DatasetFormat format,
              Split split, bool with_group_consistency) {
  const RunLabel label = load_manifest_label(run_dir);
  const PuzzleSet gold = load_dataset(gold_path, format, split);
  const auto predictions = load_predictions(run_dir + "/predictions.jsonl");
  const ScoreReport report = score(predictions, gold, label);
  save_score_report(report, run_dir + "/score.json");

  for (const Subtask subtask : {Subtask::sentence, Subtask::word}) {
    const SubtaskScore& s = report.for_subtask(subtask);
    if (s.n_items == 0) continue;
    std::cout << to_string(subtask) << " accuracy: " << format_accuracy(s.accuracy) << " ("
              << s.n_correct << "/" << s.n_items << ", " << s.n_abstain << " abstained)\n";
  }
  if (with_group_consistency) {
    std::cout << "group consistency: " << format_accuracy(group_consistency(predictions, gold))
              << "\n";
  }
  return kExitOk;
}

int cmd_render(const std::string& dataset_path, DatasetFormat format, const std::string& id,
               const StrategyConfig& strategy, const std::string& train_path,
               const std::string& annotations_path,
               const std::vector<std::string>& exemplar_ids) {
  const PuzzleSet eval_set = load_dataset(dataset_path, format, Split::dev);
  const Puzzle* puzzle = eval_set.find(id);
  if (puzzle == nullptr) throw DataError("no puzzle with id " + id + " in " + dataset_path);
  PuzzleSet train;
  if (!train_path.empty()) train = load_dataset(train_path, format, Split::train);
  CoTAnnotationMap annotations;
  if (!annotations_path.empty()) annotations = load_cot_annotations(annotations_path);

  RenderedPrompt prompt;
  if (exemplar_ids.empty()) {
    prompt = build_prompt(*puzzle, strategy, train, annotations);
  } else {
    std::vector<Puzzle> picked;
    for (const auto& eid : exemplar_ids) {
      const Puzzle* e = train.find(eid);
      if (e == nullptr) throw DataError("exemplar id " + eid + " not in " + train_path);
      picked.push_back(*e);
    }
    if (strategy.strategy == Strategy::few_shot) {
      prompt = render_few_shot(*puzzle, picked);
    } else if (strategy.strategy == Strategy::cot) {
      std::vector<CoTExemplar> exemplars;
      for (auto& e : picked) {
        const auto it = annotations.find(e.id);
        if (it == annotations.end()) {
          throw DataError("no chain-of-thought annotation for exemplar " + e.id);
        }
        exemplars.push_back(
            CoTExemplar{std::move(e), it->second.rationales, it->second.decision,
                        it->second.answer});
      }
      prompt = render_cot(*puzzle, exemplars);
    } else {
      throw ConfigError("--exemplars only applies to few_shot and cot");
    }
  }
  std::cout << prompt.text;
  return kExitOk;
}

int cmd_report(const std::vector<std::string>& run_dirs, const std::string& baselines_path,
               ReportFormat format, const std::string& output_path) {
  std::vector<ScoreReport> reports;
  for (const auto& dir : run_dirs) {
    if (!fs::exists(dir + "/manifest.json")) {
      throw DataError("missing manifest in run directory: " + dir);
    }
    if (!fs::exists(dir + "/score.json")) {
      throw DataError("missing score report in run directory: " + dir +
                      " (run `score` against a gold set first)");
    }
    reports.push_back(load_score_report(dir + "/score.json"));
  }
  BaselineTable baselines;
  if (!baselines_path.empty()) baselines = BaselineTable::load(baselines_path);

  const std::string rendered = render_report(reports, baselines, format);
  if (output_path.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw Error("cannot write report: " + output_path);
    out << rendered;
    std::cout << "report written to " << output_path << "\n";
  }
  return kExitOk;
}

}  // namespace puzzlebench::cli
