#include "puzzlebench/cache.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "puzzlebench/errors.hpp"

namespace puzzlebench {

namespace fs = std::filesystem;
using json = nlohmann::json;

DiskCache::DiskCache(std::string root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

std::string DiskCache::entry_path(const std::string& digest) const {
  if (digest.size() < 4) throw BackendError("cache digest too short: " + digest);
  return root_ + "/" + digest.substr(0, 2) + "/" + digest.substr(2, 2) + "/" + digest +
         ".json";
}

std::optional<CacheEntry> DiskCache::get(const std::string& digest) const {
  std::ifstream in(entry_path(digest), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    const json rec = json::parse(ss.str());
    CacheEntry e;
    e.prompt = rec.at("prompt").get<std::string>();
    e.model_name = rec.at("model").get<std::string>();
    e.temperature = rec.at("temperature").get<double>();
    e.max_tokens = rec.at("max_tokens").get<std::int64_t>();
    e.text = rec.at("text").get<std::string>();
    if (rec.contains("usage") && !rec["usage"].is_null()) {
      e.usage = TokenUsage{rec["usage"].value("prompt_tokens", std::int64_t{0}),
                           rec["usage"].value("completion_tokens", std::int64_t{0})};
    }
    return e;
  } catch (const json::exception& ex) {
    throw BackendError("corrupt cache entry " + digest + ": " + ex.what());
  }
}

bool DiskCache::put(const std::string& digest, const CacheEntry& entry) {
  const fs::path path = entry_path(digest);
  if (fs::exists(path)) return false;
  fs::create_directories(path.parent_path());

  json rec;
  rec["prompt"] = entry.prompt;
  rec["model"] = entry.model_name;
  rec["temperature"] = entry.temperature;
  rec["max_tokens"] = entry.max_tokens;
  rec["text"] = entry.text;
  if (entry.usage) {
    rec["usage"] = {{"prompt_tokens", entry.usage->prompt_tokens},
                    {"completion_tokens", entry.usage->completion_tokens}};
  } else {
    rec["usage"] = nullptr;
  }

  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw BackendError("cannot write cache entry: " + tmp.string());
    out << rec.dump(2) << '\n';
  }
  // Hard-link instead of rename: linking fails if the target exists, which
  // gives first-writer-wins under concurrent inserts of the same key.
  std::error_code ec;
  fs::create_hard_link(tmp, path, ec);
  fs::remove(tmp);
  return !ec;
}

}  // namespace puzzlebench
