#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "puzzlebench/cli.hpp"

namespace {

using puzzlebench::DatasetFormat;
using puzzlebench::ReportFormat;
using puzzlebench::Split;

DatasetFormat to_dataset_format(const std::string& s) {
  return s == "csv" ? DatasetFormat::csv : DatasetFormat::jsonl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-choice puzzle evaluation harness"};
  app.require_subcommand(1);

  std::string format = "jsonl";
  std::vector<std::string> paths;
  auto* validate = app.add_subcommand("validate", "Validate dataset files and echo counts");
  validate->add_option("paths", paths, "dataset files")->required()->expected(-1);
  validate->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "Token statistics per subtask");
  stats->add_option("path", stats_path, "dataset file")->required();
  stats->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Execute a configured run");
  run->add_option("--config,-c", config_path, "run config file")->required();
  run->add_option("--set", overrides, "override a config key (key=value), repeatable");
  run->add_option("--out", out_dir, "override output.dir");

  std::string run_dir, gold_path, split_name = "dev";
  bool group_flag = false;
  auto* score = app.add_subcommand("score", "Score a run directory against gold labels");
  score->add_option("--run", run_dir, "run directory")->required();
  score->add_option("--gold", gold_path, "gold dataset file")->required();
  score->add_option("--split", split_name, "split tag of the gold set")
      ->check(CLI::IsMember({"train", "dev", "test"}));
  score->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
  score->add_flag("--group-consistency", group_flag,
                  "also report all-variants-correct rate per group");

  std::vector<std::string> report_dirs;
  std::string report_format = "markdown";
  std::string baselines_path = "data/baselines.csv";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Comparison table across runs plus baselines");
  report->add_option("dirs", report_dirs, "run directories")->expected(-1);
  report->add_option("--format", report_format, "markdown or csv")
      ->check(CLI::IsMember({"markdown", "csv"}));
  report->add_option("--baselines", baselines_path, "baseline table CSV (empty to omit)");
  report->add_option("-o,--output", report_out, "output file (default stdout)");

  std::string render_dataset, render_id, render_strategy = "zero_shot";
  std::string render_train, render_annotations;
  std::uint64_t render_seed = 0;
  std::size_t render_shots = 0;
  auto* render = app.add_subcommand("render", "Print the prompt for one puzzle");
  render->add_option("--dataset", render_dataset, "dataset holding the query puzzle")
      ->required();
  render->add_option("--id", render_id, "puzzle id")->required();
  render->add_option("--strategy", render_strategy, "zero_shot|few_shot|cot")
      ->check(CLI::IsMember({"zero_shot", "few_shot", "cot"}));
  render->add_option("--shots", render_shots, "exemplar count");
  render->add_option("--seed", render_seed, "sampling seed");
  render->add_option("--train", render_train, "train set for exemplar sampling");
  render->add_option("--annotations", render_annotations, "chain-of-thought annotations");
  std::vector<std::string> render_exemplars;
  render->add_option("--exemplars", render_exemplars,
                     "explicit exemplar ids (bypasses seeded sampling)");
  render->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      return puzzlebench::cli::cmd_validate(paths, to_dataset_format(format));
    }
    if (*stats) {
      return puzzlebench::cli::cmd_stats(stats_path, to_dataset_format(format));
    }
    if (*run) {
      if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);
      return puzzlebench::cli::cmd_run(config_path, overrides);
    }
    if (*score) {
      const Split split = *puzzlebench::split_from_string(split_name);
      return puzzlebench::cli::cmd_score(run_dir, gold_path, to_dataset_format(format), split,
                                         group_flag);
    }
    if (*report) {
      return puzzlebench::cli::cmd_report(
          report_dirs, baselines_path,
          report_format == "csv" ? ReportFormat::csv : ReportFormat::markdown, report_out);
    }
    if (*render) {
      puzzlebench::StrategyConfig strategy;
      strategy.strategy = *puzzlebench::strategy_from_string(render_strategy);
      strategy.shots = render_shots;
      strategy.seed = render_seed;
      return puzzlebench::cli::cmd_render(render_dataset, to_dataset_format(format), render_id,
                                          strategy, render_train, render_annotations,
                                          render_exemplars);
    }
  } catch (...) {
    return puzzlebench::cli::exit_code_for_current_exception();
  }
  return puzzlebench::cli::kExitUsage;
}
