#include "puzzlebench/run.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "puzzlebench/digest.hpp"
#include "puzzlebench/errors.hpp"

namespace puzzlebench {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

json prediction_json(const Prediction& p) {
  json out;
  out["choice"] = p.choice ? json(*p.choice) : json(nullptr);
  out["method"] = to_string(p.method);
  out["excerpt"] = p.raw_excerpt;
  return out;
}

json trace_json(const TraceRecord& t) {
  json out;
  out["id"] = t.puzzle_id;
  out["repeat"] = t.repeat;
  out["prompt_hash"] = t.prompt_hash;
  out["exemplar_ids"] = t.exemplar_ids;
  out["completion"] = t.completion;
  out["prediction"] = prediction_json(t.prediction);
  if (!t.error.empty()) out["error"] = t.error;
  return out;
}

json ensemble_result_json(const EnsembleResult& r) {
  json out;
  out["id"] = r.puzzle_id;
  json votes = json::array();
  for (const auto& v : r.votes) votes.push_back(prediction_json(v));
  out["votes"] = std::move(votes);
  json tally = json::object();
  for (const auto& [choice, count] : r.tally) tally[std::to_string(choice)] = count;
  out["tally"] = std::move(tally);
  out["final"] = r.final_choice ? json(*r.final_choice) : json(nullptr);
  out["tie_broken"] = r.tie_broken;
  out["agreement"] = r.agreement;
  return out;
}

json label_json(const RunLabel& label) {
  return json{{"model", label.model},
              {"strategy", to_string(label.strategy)},
              {"shots", label.shots},
              {"ensemble", label.ensemble}};
}

json config_echo_json(const RunConfig& cfg) {
  // Everything needed to reproduce the run except the output location.
  // Secrets never appear: the auth key is referenced by env-var name only.
  json backend;
  backend["kind"] = to_string(cfg.backend.kind);
  backend["model"] = cfg.backend.model_name;
  backend["endpoint"] = cfg.backend.endpoint;
  backend["auth_env"] = cfg.backend.auth_env;
  backend["dialect"] = to_string(cfg.backend.dialect);
  backend["temperature"] = cfg.backend.temperature;
  backend["max_tokens"] = cfg.backend.max_tokens;
  backend["timeout_ms"] = cfg.backend.timeout_ms;
  backend["max_retries"] = cfg.backend.max_retries;
  backend["requests_per_minute"] = cfg.backend.requests_per_minute;
  backend["seed"] = cfg.backend.seed;
  backend["script"] = cfg.backend.script_path;
  backend["default"] =
      cfg.backend.script_default ? json(*cfg.backend.script_default) : json(nullptr);

  json out;
  out["label"] = label_json(cfg.label);
  out["strategy"] = {{"strategy", to_string(cfg.strategy.strategy)},
                     {"shots", cfg.strategy.shots},
                     {"seed", cfg.strategy.seed}};
  out["ensemble"] = cfg.ensemble
                        ? json{{"repeats", cfg.ensemble_repeats}, {"base_seed", cfg.strategy.seed}}
                        : json(nullptr);
  out["backend"] = std::move(backend);
  out["dataset"] = {{"train", cfg.train_path},
                    {"eval", cfg.eval_path},
                    {"eval_split", to_string(cfg.eval_split)},
                    {"format", cfg.dataset_format == DatasetFormat::jsonl ? "jsonl" : "csv"},
                    {"annotations", cfg.annotations_path}};
  out["cache_dir"] = cfg.cache_dir;
  return out;
}

struct PuzzleOutcome {
  Prediction final_prediction;
  std::optional<EnsembleResult> ensemble;
  std::vector<TraceRecord> traces;
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace

RunResult execute_run(const RunConfig& cfg, Clock& clock) {
  cfg.validate();

  const PuzzleSet eval_set = load_dataset(cfg.eval_path, cfg.dataset_format, cfg.eval_split);
  PuzzleSet train;
  if (!cfg.train_path.empty()) {
    train = load_dataset(cfg.train_path, cfg.dataset_format, Split::train);
  }
  CoTAnnotationMap annotations;
  if (!cfg.annotations_path.empty()) {
    annotations = load_cot_annotations(cfg.annotations_path);
  }

  // Backend construction checks auth before any request is attempted.
  const std::unique_ptr<Backend> backend = make_backend(cfg.backend, cfg.cache_dir, clock);

  json config_echo = config_echo_json(cfg);
  json dataset_digests;
  dataset_digests["eval"] = file_digest(cfg.eval_path);
  dataset_digests["train"] =
      cfg.train_path.empty() ? json(nullptr) : json(file_digest(cfg.train_path));
  dataset_digests["annotations"] =
      cfg.annotations_path.empty() ? json(nullptr) : json(file_digest(cfg.annotations_path));

  std::string run_name = cfg.run_name;
  if (run_name.empty()) {
    run_name = "run-" + sha256_hex(config_echo.dump() + dataset_digests.dump()).substr(0, 12);
  }
  const fs::path run_dir = fs::path(cfg.output_dir) / run_name;
  fs::create_directories(run_dir);

  // Worker pool over puzzles; outcomes land in puzzle order so every file
  // below is written deterministically by this thread after the join.
  const std::size_t n = eval_set.puzzles.size();
  std::vector<PuzzleOutcome> outcomes(n);
  std::size_t workers = cfg.parallelism != 0
                            ? cfg.parallelism
                            : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next{0};
  std::mutex failure_mu;
  std::exception_ptr failure;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (failure) return;
      }
      try {
        const Puzzle& puzzle = eval_set.puzzles[i];
        PuzzleOutcome& out = outcomes[i];
        if (cfg.ensemble) {
          EnsembleConfig ecfg;
          ecfg.repeats = cfg.ensemble_repeats;
          ecfg.strategy = cfg.strategy;
          ecfg.base_seed = cfg.strategy.seed;
          out.ensemble = run_ensemble(puzzle, ecfg, train, annotations, *backend, &out.traces);
          out.final_prediction = Prediction::abstain();
          if (out.ensemble->final_choice) {
            // Provenance of the final answer: the first vote that cast it.
            for (const auto& vote : out.ensemble->votes) {
              if (vote.choice == out.ensemble->final_choice) {
                out.final_prediction = vote;
                break;
              }
            }
          }
        } else {
          TraceRecord trace = run_single(puzzle, cfg.strategy, train, annotations, *backend);
          out.final_prediction = trace.prediction;
          out.traces.push_back(std::move(trace));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  // predictions.jsonl
  std::string predictions_text;
  for (std::size_t i = 0; i < n; ++i) {
    const Puzzle& puzzle = eval_set.puzzles[i];
    const PuzzleOutcome& out = outcomes[i];
    json line;
    line["id"] = puzzle.id;
    if (out.ensemble) {
      line["choice"] = out.ensemble->final_choice ? json(*out.ensemble->final_choice)
                                                  : json(nullptr);
      line["method"] = "majority_vote";
      line["tie_broken"] = out.ensemble->tie_broken;
      line["agreement"] = out.ensemble->agreement;
    } else {
      const Prediction& p = out.final_prediction;
      line["choice"] = p.choice ? json(*p.choice) : json(nullptr);
      line["method"] = to_string(p.method);
      line["excerpt"] = p.raw_excerpt;
    }
    predictions_text += line.dump();
    predictions_text += '\n';
  }
  write_file((run_dir / "predictions.jsonl").string(), predictions_text);

  // traces.jsonl
  std::string traces_text;
  for (const auto& out : outcomes) {
    for (const auto& trace : out.traces) {
      traces_text += trace_json(trace).dump();
      traces_text += '\n';
    }
  }
  write_file((run_dir / "traces.jsonl").string(), traces_text);

  // manifest.json
  json manifest;
  manifest["format"] = "puzzlebench-run-v1";
  manifest["config"] = std::move(config_echo);
  manifest["dataset_digests"] = std::move(dataset_digests);
  manifest["n_puzzles"] = n;
  if (cfg.ensemble) {
    json results = json::array();
    for (const auto& out : outcomes) results.push_back(ensemble_result_json(*out.ensemble));
    manifest["results"] = std::move(results);
  } else {
    manifest["results"] = json(nullptr);
  }
  manifest["outputs"] = {{"predictions", "predictions.jsonl"}, {"traces", "traces.jsonl"}};
  write_file((run_dir / "manifest.json").string(), manifest.dump(2) + "\n");

  // stats.json: call accounting; intentionally outside the byte-identical
  // reproducibility contract (a warm rerun has different counts).
  RunResult result;
  result.run_dir = run_dir.string();
  result.backend_calls = backend->stats().provider_calls.load();
  result.cache_hits = backend->stats().cache_hits.load();
  json stats;
  stats["backend_calls"] = result.backend_calls;
  stats["cache_hits"] = result.cache_hits;
  stats["retries"] = backend->stats().retries.load();
  write_file((run_dir / "stats.json").string(), stats.dump(2) + "\n");

  // score.json when gold labels are present.
  const bool all_gold = !eval_set.puzzles.empty() &&
                        std::all_of(eval_set.puzzles.begin(), eval_set.puzzles.end(),
                                    [](const Puzzle& p) { return p.gold.has_value(); });
  if (all_gold) {
    std::map<std::string, Prediction> predictions;
    for (std::size_t i = 0; i < n; ++i) {
      predictions[eval_set.puzzles[i].id] = outcomes[i].final_prediction;
    }
    const ScoreReport report = score(predictions, eval_set, cfg.label);
    save_score_report(report, (run_dir / "score.json").string());
    result.scored = true;
  }
  return result;
}

std::map<std::string, Prediction> load_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open predictions file: " + path);
  std::map<std::string, Prediction> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const json rec = json::parse(line);
      Prediction p;
      if (!rec.at("choice").is_null()) p.choice = rec["choice"].get<int>();
      if (rec.contains("method")) {
        const std::string m = rec["method"].get<std::string>();
        if (const auto parsed = extract_method_from_string(m)) {
          p.method = *parsed;
        } else {
          p.method = p.choice ? ExtractMethod::tag : ExtractMethod::abstain;
        }
      }
      if (rec.contains("excerpt")) p.raw_excerpt = rec["excerpt"].get<std::string>();
      const std::string id = rec.at("id").get<std::string>();
      if (!out.emplace(id, std::move(p)).second) {
        throw DataError(path + ":" + std::to_string(lineno) + ": duplicate prediction id " + id);
      }
    } catch (const json::exception& ex) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

namespace {

json subtask_score_json(const SubtaskScore& s) {
  return json{{"n_items", s.n_items},
              {"n_correct", s.n_correct},
              {"n_abstain", s.n_abstain},
              {"accuracy", s.accuracy}};
}

SubtaskScore subtask_score_from_json(const json& j) {
  SubtaskScore s;
  s.n_items = j.at("n_items").get<std::size_t>();
  s.n_correct = j.at("n_correct").get<std::size_t>();
  s.n_abstain = j.at("n_abstain").get<std::size_t>();
  s.accuracy = j.at("accuracy").get<double>();
  return s;
}

}  // namespace

void save_score_report(const ScoreReport& report, const std::string& path) {
  json out;
  out["label"] = label_json(report.label);
  out["split"] = to_string(report.split);
  out["sentence"] = subtask_score_json(report.sentence);
  out["word"] = subtask_score_json(report.word);
  write_file(path, out.dump(2) + "\n");
}

ScoreReport load_score_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open score report: " + path);
  try {
    json doc;
    in >> doc;
    ScoreReport report;
    report.label.model = doc.at("label").at("model").get<std::string>();
    const auto strategy = strategy_from_string(doc.at("label").at("strategy").get<std::string>());
    if (!strategy) throw DataError("bad strategy in score report: " + path);
    report.label.strategy = *strategy;
    report.label.shots = doc.at("label").at("shots").get<std::size_t>();
    report.label.ensemble = doc.at("label").at("ensemble").get<bool>();
    const auto split = split_from_string(doc.at("split").get<std::string>());
    if (!split) throw DataError("bad split in score report: " + path);
    report.split = *split;
    report.sentence = subtask_score_from_json(doc.at("sentence"));
    report.word = subtask_score_from_json(doc.at("word"));
    return report;
  } catch (const json::exception& ex) {
    throw DataError("malformed score report " + path + ": " + ex.what());
  }
}

RunLabel load_manifest_label(const std::string& run_dir) {
  const std::string path = run_dir + "/manifest.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("missing manifest: " + path);
  try {
    json doc;
    in >> doc;
    const json& label = doc.at("config").at("label");
    RunLabel out;
    out.model = label.at("model").get<std::string>();
    const auto strategy = strategy_from_string(label.at("strategy").get<std::string>());
    if (!strategy) throw DataError("bad strategy in manifest: " + path);
    out.strategy = *strategy;
    out.shots = label.at("shots").get<std::size_t>();
    out.ensemble = label.at("ensemble").get<bool>();
    return out;
  } catch (const json::exception& ex) {
    throw DataError("malformed manifest " + path + ": " + ex.what());
  }
}

}  // namespace puzzlebench
