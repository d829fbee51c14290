#include "puzzlebench/backend.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>
#include <unordered_map>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "puzzlebench/digest.hpp"
#include "puzzlebench/errors.hpp"
#include "puzzlebench/rng.hpp"

namespace puzzlebench {

using json = nlohmann::json;

const char* to_string(BackendKind k) {
  return k == BackendKind::http_chat ? "http_chat" : "scripted";
}
const char* to_string(WireDialect d) {
  return d == WireDialect::openai ? "openai" : "anthropic";
}

std::optional<BackendKind> backend_kind_from_string(const std::string& s) {
  if (s == "http_chat") return BackendKind::http_chat;
  if (s == "scripted") return BackendKind::scripted;
  return std::nullopt;
}

std::optional<WireDialect> wire_dialect_from_string(const std::string& s) {
  if (s == "openai") return WireDialect::openai;
  if (s == "anthropic") return WireDialect::anthropic;
  return std::nullopt;
}

void BackendConfig::validate() const {
  if (temperature < 0.0) throw ConfigError("backend temperature must be >= 0");
  if (max_tokens <= 0) throw ConfigError("backend max_tokens must be positive");
  if (kind == BackendKind::http_chat) {
    if (endpoint.empty()) throw ConfigError("http_chat backend requires an endpoint URL");
    if (model_name.empty()) throw ConfigError("http_chat backend requires a model name");
  }
}

std::string cache_key(const std::string& prompt_text, const std::string& model_name,
                      double temperature, std::int64_t max_tokens) {
  const json key = json::array({prompt_text, model_name, temperature, max_tokens});
  return sha256_hex(key.dump());
}

// ---------------------------------------------------------------------------
// Scripted backend

ScriptedBackend::ScriptedBackend(BackendConfig cfg, std::map<std::string, std::string> script,
                                 std::optional<std::string> default_text)
    : cfg_(std::move(cfg)), script_(std::move(script)), default_text_(std::move(default_text)) {}

std::unique_ptr<ScriptedBackend> ScriptedBackend::from_file(const BackendConfig& cfg) {
  std::ifstream in(cfg.script_path, std::ios::binary);
  if (!in) throw ConfigError("cannot open script file: " + cfg.script_path);
  std::map<std::string, std::string> entries;
  std::optional<std::string> default_text = cfg.script_default;
  try {
    json doc;
    in >> doc;
    if (doc.contains("default") && !doc["default"].is_null()) {
      default_text = doc["default"].get<std::string>();
    }
    if (doc.contains("entries")) {
      for (const auto& [key, value] : doc["entries"].items()) {
        entries[key] = value.get<std::string>();
      }
    }
  } catch (const json::exception& ex) {
    throw ConfigError("malformed script file " + cfg.script_path + ": " + ex.what());
  }
  return std::make_unique<ScriptedBackend>(cfg, std::move(entries), std::move(default_text));
}

Completion ScriptedBackend::complete(const RenderedPrompt& prompt) {
  stats_.provider_calls.fetch_add(1, std::memory_order_relaxed);
  Completion out;
  out.prompt_hash = cache_key(prompt.text, cfg_.model_name, cfg_.temperature, cfg_.max_tokens);
  out.model_name = cfg_.model_name;
  const auto it = script_.find(out.prompt_hash);
  if (it != script_.end()) {
    out.text = it->second;
  } else if (default_text_) {
    out.text = *default_text_;
  } else {
    throw ScriptMissError("no scripted completion for prompt " + out.prompt_hash);
  }
  return out;
}

void save_script(const std::string& path, const std::map<std::string, std::string>& entries,
                 const std::optional<std::string>& default_text) {
  json doc;
  doc["default"] = default_text ? json(*default_text) : json(nullptr);
  doc["entries"] = json::object();
  for (const auto& [key, value] : entries) doc["entries"][key] = value;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write script file: " + path);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// HTTP chat backend

namespace {

struct ParsedUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // /v1/chat/completions
};

ParsedUrl parse_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint URL must include a scheme: " + url);
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

std::string read_auth_key(const std::string& env_name) {
  if (env_name.empty()) return {};
  const char* value = std::getenv(env_name.c_str());
  if (value == nullptr || *value == '\0') {
    throw AuthError("auth environment variable " + env_name + " is not set");
  }
  return value;
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

struct HttpChatBackend::Impl {
  std::string auth_key;
  std::mutex jitter_mu;
  SplitMix64 jitter;

  explicit Impl(std::uint64_t seed) : jitter(seed) {}
};

HttpChatBackend::HttpChatBackend(BackendConfig cfg, Clock& clock)
    : cfg_(std::move(cfg)),
      clock_(clock),
      limiter_(cfg_.requests_per_minute, clock),
      impl_(std::make_unique<Impl>(cfg_.seed)) {
  cfg_.validate();
  impl_->auth_key = read_auth_key(cfg_.auth_env);
}

HttpChatBackend::~HttpChatBackend() = default;

Completion HttpChatBackend::complete(const RenderedPrompt& prompt) {
  const ParsedUrl url = parse_url(cfg_.endpoint);

  json body;
  body["model"] = cfg_.model_name;
  body["messages"] = json::array({json{{"role", "user"}, {"content", prompt.text}}});
  body["temperature"] = cfg_.temperature;
  body["max_tokens"] = cfg_.max_tokens;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (cfg_.dialect == WireDialect::anthropic) {
    headers.emplace("x-api-key", impl_->auth_key);
    headers.emplace("anthropic-version", "2023-06-01");
  } else {
    headers.emplace("Authorization", "Bearer " + impl_->auth_key);
  }

  const std::int64_t t0 = clock_.now_micros();
  std::string last_failure;
  for (std::uint32_t attempt = 0;; ++attempt) {
    limiter_.acquire();
    stats_.provider_calls.fetch_add(1, std::memory_order_relaxed);

    httplib::Client client(url.base);
    client.set_connection_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
    client.set_read_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);

    httplib::Result res = client.Post(url.path, headers, payload, "application/json");

    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
    } else if (res->status >= 200 && res->status < 300) {
      Completion out;
      out.prompt_hash =
          cache_key(prompt.text, cfg_.model_name, cfg_.temperature, cfg_.max_tokens);
      out.model_name = cfg_.model_name;
      out.latency_micros = clock_.now_micros() - t0;
      try {
        const json doc = json::parse(res->body);
        if (cfg_.dialect == WireDialect::anthropic) {
          out.text = doc.at("content").at(0).at("text").get<std::string>();
          if (doc.contains("usage")) {
            out.usage = TokenUsage{doc["usage"].value("input_tokens", std::int64_t{0}),
                                   doc["usage"].value("output_tokens", std::int64_t{0})};
          }
        } else {
          out.text =
              doc.at("choices").at(0).at("message").at("content").get<std::string>();
          if (doc.contains("usage")) {
            out.usage = TokenUsage{doc["usage"].value("prompt_tokens", std::int64_t{0}),
                                   doc["usage"].value("completion_tokens", std::int64_t{0})};
          }
        }
      } catch (const json::exception& ex) {
        throw MalformedResponseError("cannot parse provider response (" +
                                     std::string(to_string(cfg_.dialect)) +
                                     " dialect): " + ex.what());
      }
      return out;
    } else if (retryable_status(res->status)) {
      last_failure = "HTTP " + std::to_string(res->status);
    } else {
      // Other 4xx: the request itself is wrong; retrying cannot help.
      throw HttpError(res->status, res->body);
    }

    if (attempt >= cfg_.max_retries) {
      throw RetriesExhaustedError("request failed after " + std::to_string(attempt + 1) +
                                  " attempt(s); last failure: " + last_failure);
    }
    stats_.retries.fetch_add(1, std::memory_order_relaxed);

    // Full-jitter exponential backoff: uniform in [0, base * 2^attempt],
    // base 1s, capped at 60s. The jitter stream is seeded, so schedules
    // replay exactly under a simulated clock.
    const std::int64_t cap = 60'000'000;
    std::int64_t window = 1'000'000;
    for (std::uint32_t i = 0; i < attempt && window < cap; ++i) window *= 2;
    if (window > cap) window = cap;
    std::int64_t delay;
    {
      std::lock_guard<std::mutex> lock(impl_->jitter_mu);
      delay = static_cast<std::int64_t>(
          impl_->jitter.next_below(static_cast<std::uint64_t>(window) + 1));
    }
    clock_.sleep_micros(delay);
  }
}

// ---------------------------------------------------------------------------
// Caching wrapper

struct CachingBackend::State {
  std::mutex mu;
  std::unordered_map<std::string, std::shared_future<Completion>> inflight;
};

CachingBackend::CachingBackend(std::unique_ptr<Backend> inner, std::string cache_dir)
    : inner_(std::move(inner)),
      cache_(std::move(cache_dir)),
      state_(std::make_unique<State>()) {}

Completion CachingBackend::complete(const RenderedPrompt& prompt) {
  const BackendConfig& cfg = inner_->config();
  const std::string key =
      cache_key(prompt.text, cfg.model_name, cfg.temperature, cfg.max_tokens);

  if (auto entry = cache_.get(key)) {
    inner_->stats().cache_hits.fetch_add(1, std::memory_order_relaxed);
    Completion out;
    out.text = entry->text;
    out.prompt_hash = key;
    out.model_name = entry->model_name;
    out.cached = true;
    out.usage = entry->usage;
    return out;
  }

  // Coalesce concurrent requests for the same key onto one provider call.
  std::shared_future<Completion> fut;
  bool leader = false;
  std::promise<Completion> promise;
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->inflight.find(key);
    if (it == state_->inflight.end()) {
      leader = true;
      fut = promise.get_future().share();
      state_->inflight.emplace(key, fut);
    } else {
      fut = it->second;
    }
  }
  if (!leader) {
    Completion out = fut.get();  // rethrows the leader's failure
    out.cached = true;
    inner_->stats().cache_hits.fetch_add(1, std::memory_order_relaxed);
    return out;
  }

  try {
    Completion out = inner_->complete(prompt);
    CacheEntry entry{prompt.text, cfg.model_name, cfg.temperature, cfg.max_tokens,
                     out.text,    out.usage};
    cache_.put(key, entry);
    promise.set_value(out);
    std::lock_guard<std::mutex> lock(state_->mu);
    state_->inflight.erase(key);
    return out;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard<std::mutex> lock(state_->mu);
    state_->inflight.erase(key);
    throw;
  }
}

// ---------------------------------------------------------------------------

std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, const std::string& cache_dir,
                                      Clock& clock) {
  cfg.validate();
  std::unique_ptr<Backend> inner;
  if (cfg.kind == BackendKind::scripted) {
    if (!cfg.script_path.empty()) {
      inner = ScriptedBackend::from_file(cfg);
    } else {
      inner = std::make_unique<ScriptedBackend>(cfg, std::map<std::string, std::string>{},
                                                cfg.script_default);
    }
  } else {
    inner = std::make_unique<HttpChatBackend>(cfg, clock);
  }
  if (cache_dir.empty()) return inner;
  return std::make_unique<CachingBackend>(std::move(inner), cache_dir);
}

}  // namespace puzzlebench
