#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace puzzlebench {

enum class Subtask { sentence, word };
enum class Split { train, dev, test };

const char* to_string(Subtask s);
const char* to_string(Split s);
std::optional<Subtask> subtask_from_string(const std::string& s);
std::optional<Split> split_from_string(const std::string& s);

// One multiple-choice puzzle. Choice indices are 1-based everywhere in this
// project, matching the numbering the prompts show to the model.
struct Puzzle {
  std::string id;
  Subtask subtask = Subtask::sentence;
  std::string question;
  std::array<std::string, 4> choices;
  std::optional<int> gold;            // 1..4; absent for unlabeled test items
  std::optional<std::string> group_id;  // links reconstruction variants
  Split split = Split::train;

  // Position (1..4) of the literal "None of the above" choice, if any.
  // Informational only; never consulted by answer logic.
  std::optional<int> none_of_above_index() const;
};

struct PuzzleSet {
  std::string name;
  Split split = Split::train;
  std::vector<Puzzle> puzzles;

  const Puzzle* find(const std::string& id) const;
};

struct SubtaskStats {
  std::size_t n = 0;
  double avg_prompt_tokens = 0.0;
  double avg_choice_tokens = 0.0;
};

struct CorpusStats {
  SubtaskStats sentence;
  SubtaskStats word;

  const SubtaskStats& for_subtask(Subtask s) const {
    return s == Subtask::sentence ? sentence : word;
  }
};

enum class DatasetFormat { jsonl, csv };

// Loads and validates a dataset file. Any invalid record rejects the whole
// file; the thrown DataError lists every offending record with its line
// number. An empty file yields an empty set.
PuzzleSet load_dataset(const std::string& path, DatasetFormat format, Split split);

// Canonical one-record-per-line serialization; load_dataset(serialize(s))
// round-trips exactly.
std::string serialize(const PuzzleSet& set);
void save_dataset(const PuzzleSet& set, const std::string& path);

// Whitespace-token statistics per subtask. Empty subtask -> zeros.
CorpusStats compute_stats(const PuzzleSet& set);

// k distinct training puzzles, never the one with id `exclude`. The pool is
// the set's puzzles in file order minus `exclude`; it is Fisher-Yates
// shuffled with a SplitMix64 stream seeded by `seed` (swap index
// j = next() % (i+1) for i = n-1..1) and the first k of the shuffle are
// returned. Pure function of (set order, k, seed, exclude).
std::vector<Puzzle> sample_exemplars(const PuzzleSet& set, std::size_t k,
                                     std::uint64_t seed, const std::string& exclude);

// SHA-256 hex digest of the file's bytes; recorded in run manifests.
std::string file_digest(const std::string& path);

}  // namespace puzzlebench
