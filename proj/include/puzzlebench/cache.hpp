#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace puzzlebench {

struct TokenUsage {
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

struct CacheEntry {
  std::string prompt;
  std::string model_name;
  double temperature = 0.0;
  std::int64_t max_tokens = 0;
  std::string text;
  std::optional<TokenUsage> usage;
};

// Content-addressed on-disk store for provider responses. Layout fans the
// hex digest out two levels (cache_dir/ab/cd/<digest>.json) so directories
// stay small. Entries are write-once: the first writer wins and later
// writers are no-ops, which makes concurrent duplicate computation safe.
// Inserts go through a temp file + rename for atomicity.
class DiskCache {
 public:
  explicit DiskCache(std::string root);

  std::optional<CacheEntry> get(const std::string& digest) const;

  // Returns false when an entry already existed (nothing written).
  bool put(const std::string& digest, const CacheEntry& entry);

  const std::string& root() const { return root_; }

 private:
  std::string entry_path(const std::string& digest) const;

  std::string root_;
};

}  // namespace puzzlebench
