#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "puzzlebench/cache.hpp"
#include "puzzlebench/clock.hpp"
#include "puzzlebench/prompting.hpp"
#include "puzzlebench/ratelimit.hpp"

namespace puzzlebench {

enum class BackendKind { http_chat, scripted };

// Provider wire dialects. One request shape (model + single user message +
// temperature + max_tokens); the dialect picks auth header and where the
// completion text lives in the response.
enum class WireDialect { openai, anthropic };

const char* to_string(BackendKind k);
const char* to_string(WireDialect d);
std::optional<BackendKind> backend_kind_from_string(const std::string& s);
std::optional<WireDialect> wire_dialect_from_string(const std::string& s);

struct BackendConfig {
  BackendKind kind = BackendKind::scripted;
  std::string endpoint;      // http_chat: full URL of the chat-completions route
  std::string model_name;
  std::string auth_env;      // name of the env var holding the API key
  WireDialect dialect = WireDialect::openai;
  double temperature = 0.0;
  std::int64_t max_tokens = 1024;
  std::int64_t timeout_ms = 30'000;
  std::uint32_t max_retries = 3;
  std::uint32_t requests_per_minute = 60;
  std::uint64_t seed = 0;  // drives backoff jitter; reproducible schedules

  // scripted only
  std::string script_path;
  std::optional<std::string> script_default;

  void validate() const;
};

struct Completion {
  std::string text;
  std::string prompt_hash;
  std::string model_name;
  std::int64_t latency_micros = 0;
  bool cached = false;
  std::optional<TokenUsage> usage;
};

// Stable content address for a completion request: SHA-256 of the compact
// JSON array [prompt_text, model_name, temperature, max_tokens]. Doubles
// use shortest round-trip formatting, so the digest is portable across
// machines and reimplementations.
std::string cache_key(const std::string& prompt_text, const std::string& model_name,
                      double temperature, std::int64_t max_tokens);

struct BackendStats {
  // Counters only; mutable so wrappers can account through const access.
  mutable std::atomic<std::uint64_t> provider_calls{0};
  mutable std::atomic<std::uint64_t> cache_hits{0};
  mutable std::atomic<std::uint64_t> retries{0};
};

class Backend {
 public:
  virtual ~Backend() = default;

  // Resolves a prompt to provider text. Implementations are safe for
  // concurrent use.
  virtual Completion complete(const RenderedPrompt& prompt) = 0;

  virtual const BackendConfig& config() const = 0;
  virtual const BackendStats& stats() const = 0;
};

// Deterministic offline backend: maps cache keys to canned completion
// texts, with an optional default for unmapped prompts. Enables desk-scale
// end-to-end runs with zero provider access.
class ScriptedBackend final : public Backend {
 public:
  ScriptedBackend(BackendConfig cfg, std::map<std::string, std::string> script,
                  std::optional<std::string> default_text);

  static std::unique_ptr<ScriptedBackend> from_file(const BackendConfig& cfg);

  Completion complete(const RenderedPrompt& prompt) override;
  const BackendConfig& config() const override { return cfg_; }
  const BackendStats& stats() const override { return stats_; }

 private:
  BackendConfig cfg_;
  std::map<std::string, std::string> script_;
  std::optional<std::string> default_text_;
  BackendStats stats_;
};

// Writes a scripted-backend file: {"default": ..., "entries": {digest: text}}.
void save_script(const std::string& path, const std::map<std::string, std::string>& entries,
                 const std::optional<std::string>& default_text);

// Generic HTTP chat-completion client with retry (exponential backoff,
// base 1s, factor 2, full jitter from the seeded stream) and token-window
// rate limiting. 4xx other than 429 fail fast and surface the body.
class HttpChatBackend final : public Backend {
 public:
  HttpChatBackend(BackendConfig cfg, Clock& clock);
  ~HttpChatBackend() override;

  Completion complete(const RenderedPrompt& prompt) override;
  const BackendConfig& config() const override { return cfg_; }
  const BackendStats& stats() const override { return stats_; }

 private:
  struct Impl;
  BackendConfig cfg_;
  Clock& clock_;
  RateLimiter limiter_;
  BackendStats stats_;
  std::unique_ptr<Impl> impl_;
};

// Write-through cache wrapper. At most one provider call per distinct key
// per process (in-flight requests for the same key coalesce); disk entries
// make completed runs replayable with zero provider calls.
class CachingBackend final : public Backend {
 public:
  CachingBackend(std::unique_ptr<Backend> inner, std::string cache_dir);

  Completion complete(const RenderedPrompt& prompt) override;
  const BackendConfig& config() const override { return inner_->config(); }
  const BackendStats& stats() const override { return inner_->stats(); }

 private:
  struct State;
  std::unique_ptr<Backend> inner_;
  DiskCache cache_;
  std::unique_ptr<State> state_;
};

// Builds the backend described by cfg, wrapped in a cache when cache_dir is
// non-empty. For http_chat the auth env var is checked here, before any
// request is attempted.
std::unique_ptr<Backend> make_backend(const BackendConfig& cfg, const std::string& cache_dir,
                                      Clock& clock);

}  // namespace puzzlebench
