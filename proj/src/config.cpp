#include "puzzlebench/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>

#include "puzzlebench/errors.hpp"
#include "puzzlebench/text.hpp"

namespace puzzlebench {

namespace fs = std::filesystem;

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value, got: " + std::string(t));
    }
    const std::string key(text::trim(t.substr(0, eq)));
    const std::string value(text::trim(t.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

void apply_kv_overrides(std::map<std::string, std::string>& kv,
                        const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("override must be key=value, got: " + item);
    }
    kv[std::string(text::trim(std::string_view(item).substr(0, eq)))] =
        std::string(text::trim(std::string_view(item).substr(eq + 1)));
  }
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "label.model",
      "strategy",
      "shots",
      "seed",
      "ensemble",
      "ensemble.repeats",
      "dataset.train",
      "dataset.eval",
      "dataset.eval_split",
      "dataset.format",
      "annotations",
      "backend.kind",
      "backend.model",
      "backend.endpoint",
      "backend.auth_env",
      "backend.dialect",
      "backend.temperature",
      "backend.max_tokens",
      "backend.timeout_ms",
      "backend.max_retries",
      "backend.rpm",
      "backend.seed",
      "backend.script",
      "backend.default",
      "cache.dir",
      "output.dir",
      "run.name",
      "parallelism",
  };
  return keys;
}

std::int64_t parse_int_value(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + " must be an integer, got: " + value);
  }
  return out;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + " must be a non-negative integer, got: " + value);
  }
  return out;
}

double parse_double_value(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + " must be a number, got: " + value);
  }
  return out;
}

bool parse_bool_value(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key + " must be a boolean, got: " + value);
}

}  // namespace

RunConfig RunConfig::from_kv(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (known_keys().count(key) == 0) throw ConfigError("unknown config key: " + key);
  }
  const auto get = [&kv](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() || it->second.empty() ? nullptr : &it->second;
  };

  RunConfig cfg;
  if (const auto* v = get("label.model")) cfg.label.model = *v;
  if (const auto* v = get("strategy")) {
    const auto s = strategy_from_string(*v);
    if (!s) throw ConfigError("strategy must be zero_shot|few_shot|cot, got: " + *v);
    cfg.strategy.strategy = *s;
  }
  if (const auto* v = get("shots")) {
    cfg.strategy.shots = static_cast<std::size_t>(parse_u64_value("shots", *v));
  }
  if (const auto* v = get("seed")) cfg.strategy.seed = parse_u64_value("seed", *v);
  if (const auto* v = get("ensemble")) cfg.ensemble = parse_bool_value("ensemble", *v);
  if (const auto* v = get("ensemble.repeats")) {
    cfg.ensemble_repeats =
        static_cast<std::size_t>(parse_u64_value("ensemble.repeats", *v));
  }
  if (const auto* v = get("dataset.train")) cfg.train_path = *v;
  if (const auto* v = get("dataset.eval")) cfg.eval_path = *v;
  if (const auto* v = get("dataset.eval_split")) {
    const auto s = split_from_string(*v);
    if (!s) throw ConfigError("dataset.eval_split must be train|dev|test, got: " + *v);
    cfg.eval_split = *s;
  }
  if (const auto* v = get("dataset.format")) {
    if (*v == "jsonl") {
      cfg.dataset_format = DatasetFormat::jsonl;
    } else if (*v == "csv") {
      cfg.dataset_format = DatasetFormat::csv;
    } else {
      throw ConfigError("dataset.format must be jsonl|csv, got: " + *v);
    }
  }
  if (const auto* v = get("annotations")) cfg.annotations_path = *v;

  if (const auto* v = get("backend.kind")) {
    const auto k = backend_kind_from_string(*v);
    if (!k) throw ConfigError("backend.kind must be http_chat|scripted, got: " + *v);
    cfg.backend.kind = *k;
  }
  if (const auto* v = get("backend.model")) cfg.backend.model_name = *v;
  if (const auto* v = get("backend.endpoint")) cfg.backend.endpoint = *v;
  if (const auto* v = get("backend.auth_env")) cfg.backend.auth_env = *v;
  if (const auto* v = get("backend.dialect")) {
    const auto d = wire_dialect_from_string(*v);
    if (!d) throw ConfigError("backend.dialect must be openai|anthropic, got: " + *v);
    cfg.backend.dialect = *d;
  }
  if (const auto* v = get("backend.temperature")) {
    cfg.backend.temperature = parse_double_value("backend.temperature", *v);
  }
  if (const auto* v = get("backend.max_tokens")) {
    cfg.backend.max_tokens = parse_int_value("backend.max_tokens", *v);
  }
  if (const auto* v = get("backend.timeout_ms")) {
    cfg.backend.timeout_ms = parse_int_value("backend.timeout_ms", *v);
  }
  if (const auto* v = get("backend.max_retries")) {
    cfg.backend.max_retries =
        static_cast<std::uint32_t>(parse_u64_value("backend.max_retries", *v));
  }
  if (const auto* v = get("backend.rpm")) {
    cfg.backend.requests_per_minute =
        static_cast<std::uint32_t>(parse_u64_value("backend.rpm", *v));
  }
  if (const auto* v = get("backend.seed")) {
    cfg.backend.seed = parse_u64_value("backend.seed", *v);
  }
  if (const auto* v = get("backend.script")) cfg.backend.script_path = *v;
  if (const auto* v = get("backend.default")) cfg.backend.script_default = *v;

  if (const auto* v = get("cache.dir")) cfg.cache_dir = *v;
  if (const auto* v = get("output.dir")) cfg.output_dir = *v;
  if (const auto* v = get("run.name")) cfg.run_name = *v;
  if (const auto* v = get("parallelism")) {
    cfg.parallelism = static_cast<std::size_t>(parse_u64_value("parallelism", *v));
  }

  if (cfg.label.model.empty()) cfg.label.model = cfg.backend.model_name;
  cfg.label.strategy = cfg.strategy.strategy;
  cfg.label.shots = cfg.strategy.shots;
  cfg.label.ensemble = cfg.ensemble;
  return cfg;
}

void RunConfig::validate() const {
  strategy.validate();
  backend.validate();
  if (ensemble && ensemble_repeats < 1) {
    throw ConfigError("ensemble.repeats must be >= 1");
  }
  if (eval_path.empty()) throw ConfigError("dataset.eval is required");
  if (!fs::exists(eval_path)) throw ConfigError("dataset.eval not found: " + eval_path);
  if (strategy.strategy != Strategy::zero_shot) {
    if (train_path.empty()) {
      throw ConfigError("dataset.train is required for few_shot/cot strategies");
    }
    if (!fs::exists(train_path)) {
      throw ConfigError("dataset.train not found: " + train_path);
    }
  }
  if (strategy.strategy == Strategy::cot) {
    if (annotations_path.empty()) {
      throw ConfigError("annotations file is required for the cot strategy");
    }
    if (!fs::exists(annotations_path)) {
      throw ConfigError("annotations file not found: " + annotations_path);
    }
  }
  if (backend.kind == BackendKind::scripted && !backend.script_path.empty() &&
      !fs::exists(backend.script_path)) {
    throw ConfigError("backend.script not found: " + backend.script_path);
  }
  if (label.model.empty()) {
    throw ConfigError("label.model (or backend.model) must be set");
  }
}

}  // namespace puzzlebench
