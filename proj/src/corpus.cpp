#include "puzzlebench/corpus.hpp"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "puzzlebench/digest.hpp"
#include "puzzlebench/errors.hpp"
#include "puzzlebench/rng.hpp"
#include "puzzlebench/text.hpp"

namespace puzzlebench {

using json = nlohmann::json;

const char* to_string(Subtask s) { return s == Subtask::sentence ? "sentence" : "word"; }
const char* to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    default: return "test";
  }
}

std::optional<Subtask> subtask_from_string(const std::string& s) {
  if (s == "sentence") return Subtask::sentence;
  if (s == "word") return Subtask::word;
  return std::nullopt;
}

std::optional<Split> split_from_string(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "dev") return Split::dev;
  if (s == "test") return Split::test;
  return std::nullopt;
}

std::optional<int> Puzzle::none_of_above_index() const {
  for (int i = 0; i < 4; ++i) {
    if (text::normalize_choice(choices[static_cast<std::size_t>(i)]) == "none of the above") {
      return i + 1;
    }
  }
  return std::nullopt;
}

const Puzzle* PuzzleSet::find(const std::string& id) const {
  for (const auto& p : puzzles) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

namespace {

struct Diagnostics {
  std::vector<std::string> errors;

  void add(const std::string& path, std::size_t line, const std::string& id,
           const std::string& message) {
    std::string where = path + ":" + std::to_string(line);
    if (!id.empty()) where += " (id=" + id + ")";
    errors.push_back(where + ": " + message);
  }

  void throw_if_any(const std::string& path) const {
    if (errors.empty()) return;
    std::string msg = "invalid dataset " + path + " (" + std::to_string(errors.size()) +
                      " error" + (errors.size() == 1 ? "" : "s") + "):";
    for (const auto& e : errors) msg += "\n  " + e;
    throw DataError(msg);
  }
};

void validate_record(Puzzle& p, const std::string& path, std::size_t line,
                     std::set<std::string>& seen_ids, Diagnostics& diag) {
  if (p.id.empty()) {
    diag.add(path, line, p.id, "empty id");
    return;
  }
  if (!seen_ids.insert(p.id).second) {
    diag.add(path, line, p.id, "duplicate id");
  }
  if (p.question.empty()) {
    diag.add(path, line, p.id, "empty question");
  }
  int nota = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (text::trim(p.choices[i]).empty()) {
      diag.add(path, line, p.id, "choice " + std::to_string(i + 1) + " is empty");
    }
    if (text::normalize_choice(p.choices[i]) == "none of the above") ++nota;
  }
  if (nota > 1) {
    diag.add(path, line, p.id, "more than one \"None of the above.\" choice");
  }
  if (p.gold && (*p.gold < 1 || *p.gold > 4)) {
    diag.add(path, line, p.id, "gold index " + std::to_string(*p.gold) + " out of range 1..4");
  }
}

std::optional<Puzzle> parse_jsonl_record(const std::string& raw, const std::string& path,
                                         std::size_t line, Diagnostics& diag) {
  json rec;
  try {
    rec = json::parse(raw);
  } catch (const json::exception& ex) {
    diag.add(path, line, "", std::string("not valid JSON: ") + ex.what());
    return std::nullopt;
  }
  if (!rec.is_object()) {
    diag.add(path, line, "", "record is not a JSON object");
    return std::nullopt;
  }
  Puzzle p;
  try {
    p.id = rec.at("id").get<std::string>();
    const auto subtask = subtask_from_string(rec.at("subtask").get<std::string>());
    if (!subtask) {
      diag.add(path, line, p.id, "subtask must be \"sentence\" or \"word\"");
      return std::nullopt;
    }
    p.subtask = *subtask;
    p.question = rec.at("question").get<std::string>();
    const auto& choices = rec.at("choices");
    if (!choices.is_array() || choices.size() != 4) {
      diag.add(path, line, p.id,
               "choices must be an array of exactly 4 strings (got " +
                   std::to_string(choices.is_array() ? choices.size() : 0) + ")");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < 4; ++i) p.choices[i] = choices[i].get<std::string>();
    if (rec.contains("gold") && !rec["gold"].is_null()) {
      p.gold = rec["gold"].get<int>();
    }
    if (rec.contains("group_id") && !rec["group_id"].is_null()) {
      p.group_id = rec["group_id"].get<std::string>();
    }
  } catch (const json::exception& ex) {
    diag.add(path, line, p.id, std::string("bad field: ") + ex.what());
    return std::nullopt;
  }
  return p;
}

// RFC 4180 style field splitting: quoted fields may contain commas and
// doubled quotes. Newlines inside quotes are not supported (one record per
// line is part of the storage contract).
std::optional<std::vector<std::string>> split_csv_line(const std::string& line,
                                                       std::string* error) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
      } else {
        cur.push_back(c);
        ++i;
      }
    } else if (c == '"') {
      if (!cur.empty()) {
        *error = "quote inside unquoted field";
        return std::nullopt;
      }
      quoted = true;
      ++i;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      ++i;
    } else {
      cur.push_back(c);
      ++i;
    }
  }
  if (quoted) {
    *error = "unterminated quoted field";
    return std::nullopt;
  }
  fields.push_back(std::move(cur));
  return fields;
}

const char* kCsvHeader = "id,subtask,question,choice1,choice2,choice3,choice4,gold,group_id";

std::optional<Puzzle> parse_csv_record(const std::string& raw, const std::string& path,
                                       std::size_t line, Diagnostics& diag) {
  std::string err;
  auto fields = split_csv_line(raw, &err);
  if (!fields) {
    diag.add(path, line, "", "malformed CSV: " + err);
    return std::nullopt;
  }
  if (fields->size() != 9) {
    diag.add(path, line, "",
             "expected 9 CSV fields (" + std::string(kCsvHeader) + "), got " +
                 std::to_string(fields->size()));
    return std::nullopt;
  }
  Puzzle p;
  p.id = (*fields)[0];
  const auto subtask = subtask_from_string((*fields)[1]);
  if (!subtask) {
    diag.add(path, line, p.id, "subtask must be \"sentence\" or \"word\"");
    return std::nullopt;
  }
  p.subtask = *subtask;
  p.question = (*fields)[2];
  for (std::size_t i = 0; i < 4; ++i) p.choices[i] = (*fields)[3 + i];
  if (!(*fields)[7].empty()) {
    try {
      p.gold = std::stoi((*fields)[7]);
    } catch (const std::exception&) {
      diag.add(path, line, p.id, "gold is not an integer: " + (*fields)[7]);
      return std::nullopt;
    }
  }
  if (!(*fields)[8].empty()) p.group_id = (*fields)[8];
  return p;
}

}  // namespace

PuzzleSet load_dataset(const std::string& path, DatasetFormat format, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file: " + path);

  PuzzleSet set;
  set.name = path;
  set.split = split;

  Diagnostics diag;
  std::set<std::string> seen_ids;
  std::string raw;
  std::size_t line = 0;
  bool header_skipped = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (text::trim(raw).empty()) continue;
    if (format == DatasetFormat::csv && !header_skipped) {
      header_skipped = true;
      if (raw == kCsvHeader) continue;
      // Headerless CSV is accepted; fall through and parse as a record.
    }
    std::optional<Puzzle> p = format == DatasetFormat::jsonl
                                  ? parse_jsonl_record(raw, path, line, diag)
                                  : parse_csv_record(raw, path, line, diag);
    if (!p) continue;
    p->split = split;
    validate_record(*p, path, line, seen_ids, diag);
    set.puzzles.push_back(std::move(*p));
  }
  diag.throw_if_any(path);
  return set;
}

std::string serialize(const PuzzleSet& set) {
  std::string out;
  for (const auto& p : set.puzzles) {
    json rec;
    rec["id"] = p.id;
    rec["subtask"] = to_string(p.subtask);
    rec["question"] = p.question;
    rec["choices"] = p.choices;
    if (p.gold) rec["gold"] = *p.gold;
    if (p.group_id) rec["group_id"] = *p.group_id;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void save_dataset(const PuzzleSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write dataset file: " + path);
  out << serialize(set);
}

CorpusStats compute_stats(const PuzzleSet& set) {
  std::size_t n[2] = {0, 0};
  std::size_t prompt_tokens[2] = {0, 0};
  std::size_t choice_tokens[2] = {0, 0};
  for (const auto& p : set.puzzles) {
    const std::size_t k = p.subtask == Subtask::sentence ? 0 : 1;
    ++n[k];
    prompt_tokens[k] += text::count_tokens(p.question);
    for (const auto& c : p.choices) choice_tokens[k] += text::count_tokens(c);
  }
  CorpusStats stats;
  SubtaskStats* out[2] = {&stats.sentence, &stats.word};
  for (std::size_t k = 0; k < 2; ++k) {
    out[k]->n = n[k];
    if (n[k] > 0) {
      out[k]->avg_prompt_tokens =
          static_cast<double>(prompt_tokens[k]) / static_cast<double>(n[k]);
      out[k]->avg_choice_tokens =
          static_cast<double>(choice_tokens[k]) / static_cast<double>(n[k] * 4);
    }
  }
  return stats;
}

std::vector<Puzzle> sample_exemplars(const PuzzleSet& set, std::size_t k,
                                     std::uint64_t seed, const std::string& exclude) {
  if (set.split != Split::train) {
    throw DataError("exemplars must be sampled from a train split set (got " +
                    std::string(to_string(set.split)) + ")");
  }
  std::vector<std::size_t> pool;
  pool.reserve(set.puzzles.size());
  for (std::size_t i = 0; i < set.puzzles.size(); ++i) {
    if (set.puzzles[i].id != exclude) pool.push_back(i);
  }
  if (k > pool.size()) {
    throw DataError("cannot sample " + std::to_string(k) + " exemplars from a pool of " +
                    std::to_string(pool.size()));
  }
  SplitMix64 rng(seed);
  for (std::size_t i = pool.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(pool[i - 1], pool[j]);
  }
  std::vector<Puzzle> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(set.puzzles[pool[i]]);
  return out;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for digest: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

}  // namespace puzzlebench
