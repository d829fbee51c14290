#include "puzzlebench/prompting.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "puzzlebench/errors.hpp"
#include "puzzlebench/text.hpp"

namespace puzzlebench {

using json = nlohmann::json;

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::zero_shot: return "zero_shot";
    case Strategy::few_shot: return "few_shot";
    default: return "cot";
  }
}

std::optional<Strategy> strategy_from_string(const std::string& s) {
  if (s == "zero_shot") return Strategy::zero_shot;
  if (s == "few_shot") return Strategy::few_shot;
  if (s == "cot") return Strategy::cot;
  return std::nullopt;
}

void StrategyConfig::validate() const {
  if (strategy == Strategy::zero_shot && shots != 0) {
    throw ConfigError("zero_shot takes no exemplars (shots must be 0)");
  }
  if (strategy != Strategy::zero_shot && shots < 1) {
    throw ConfigError(std::string(to_string(strategy)) + " requires shots >= 1");
  }
}

namespace {

constexpr const char* kRolePrefix = "You are a helpful AI assistant. You are given the task of solving a ";
constexpr const char* kDefinition =
    "It's a Multiple Choice Question paired with 4 potential answers. Choose the most "
    "suitable one.";
constexpr const char* kClosing = "Choose the most suitable answer. Thanks.";

void append_role_and_definition(std::string& out, const Puzzle& puzzle) {
  out += "Role:\n";
  out += kRolePrefix;
  out += to_string(puzzle.subtask);
  out += " puzzle.\n\nDefinition:\n";
  out += kDefinition;
  out += "\n\n";
}

void append_numbered_choices(std::string& out, const std::array<std::string, 4>& items) {
  for (std::size_t i = 0; i < 4; ++i) {
    out += std::to_string(i + 1);
    out += ". ";
    out += items[i];
    out += '\n';
  }
}

std::string ans_tag(std::size_t index, const std::string& fill) {
  const std::string n = std::to_string(index);
  return "<ans" + n + "> " + fill + " </ans" + n + ">";
}

void check_exemplars(const Puzzle& puzzle, const std::vector<std::string>& ids) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw DataError("duplicate exemplar id: " + id);
    if (id == puzzle.id) throw DataError("query puzzle " + id + " used as its own exemplar");
  }
}

}  // namespace

RenderedPrompt render_zero_shot(const Puzzle& puzzle) {
  RenderedPrompt out;
  out.strategy = {Strategy::zero_shot, 0, 0};
  out.query_id = puzzle.id;
  out.answer_slot = 1;

  std::string& t = out.text;
  append_role_and_definition(t, puzzle);
  t += "Question: ";
  t += puzzle.question;
  t += "\nChoices:\n";
  append_numbered_choices(t, puzzle.choices);
  t += kClosing;
  t += '\n';
  return out;
}

RenderedPrompt render_few_shot(const Puzzle& puzzle, const std::vector<Puzzle>& exemplars) {
  if (exemplars.empty()) throw DataError("few_shot prompt needs at least one exemplar");
  std::vector<std::string> ids;
  ids.reserve(exemplars.size());
  for (const auto& e : exemplars) {
    if (!e.gold) throw DataError("exemplar " + e.id + " has no gold label");
    ids.push_back(e.id);
  }
  check_exemplars(puzzle, ids);

  RenderedPrompt out;
  out.strategy = {Strategy::few_shot, exemplars.size(), 0};
  out.exemplar_ids = std::move(ids);
  out.query_id = puzzle.id;
  out.answer_slot = exemplars.size() + 1;

  std::string& t = out.text;
  append_role_and_definition(t, puzzle);
  t += "Examples:\n";
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    const Puzzle& e = exemplars[i];
    t += "Question";
    t += std::to_string(i + 1);
    t += ": ";
    t += e.question;
    t += '\n';
    append_numbered_choices(t, e.choices);
    t += "Correct Answer: ";
    t += ans_tag(i + 1, std::to_string(*e.gold));
    t += "\n\n";
  }
  t += "Question";
  t += std::to_string(out.answer_slot);
  t += ": ";
  t += puzzle.question;
  t += "\nChoices:\n";
  append_numbered_choices(t, puzzle.choices);
  t += "Correct Answer: ";
  t += ans_tag(out.answer_slot, "?");
  t += ' ';
  t += kClosing;
  t += '\n';
  return out;
}

RenderedPrompt render_cot(const Puzzle& puzzle, const std::vector<CoTExemplar>& exemplars) {
  if (exemplars.empty()) throw DataError("cot prompt needs at least one exemplar");
  std::vector<std::string> ids;
  ids.reserve(exemplars.size());
  for (const auto& e : exemplars) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (text::trim(e.rationales[i]).empty()) {
        throw DataError("exemplar " + e.puzzle.id + " is missing rationale " +
                        std::to_string(i + 1));
      }
    }
    if (e.answer < 1 || e.answer > 4) {
      throw DataError("exemplar " + e.puzzle.id + " has answer out of range 1..4");
    }
    if (!e.puzzle.gold) {
      throw DataError("exemplar " + e.puzzle.id + " has no gold label");
    }
    if (*e.puzzle.gold != e.answer) {
      throw DataError("exemplar " + e.puzzle.id + " answer disagrees with its gold label");
    }
    ids.push_back(e.puzzle.id);
  }
  check_exemplars(puzzle, ids);

  RenderedPrompt out;
  out.strategy = {Strategy::cot, exemplars.size(), 0};
  out.exemplar_ids = std::move(ids);
  out.query_id = puzzle.id;
  out.answer_slot = exemplars.size() + 1;

  // No role or definition blocks in this layout: just question, reasoning,
  // and answer per exemplar, then the bare query.
  std::string& t = out.text;
  const auto block = [&t](const char* label, std::size_t n, const std::string& body) {
    t += label;
    t += ' ';
    t += std::to_string(n);
    t += ": ";
    t += body;
    t += "\n--\n";
  };
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    const CoTExemplar& e = exemplars[i];
    const std::string n = std::to_string(i + 1);
    block("Question", i + 1, e.puzzle.question);
    t += "Choices ";
    t += n;
    t += ":\n";
    append_numbered_choices(t, e.puzzle.choices);
    t += "--\nChain-of-Thought ";
    t += n;
    t += ":\n";
    append_numbered_choices(t, e.rationales);
    t += "--\n";
    block("Decision", i + 1, e.decision);
    t += "Answer ";
    t += n;
    t += ": ";
    t += std::to_string(e.answer);
    t += ".\n------\n";
  }
  const std::string n = std::to_string(out.answer_slot);
  block("Question", out.answer_slot, puzzle.question);
  t += "Choices ";
  t += n;
  t += ":\n";
  append_numbered_choices(t, puzzle.choices);
  t += "--\n";
  return out;
}

RenderedPrompt build_prompt(const Puzzle& puzzle, const StrategyConfig& cfg,
                            const PuzzleSet& train, const CoTAnnotationMap& annotations) {
  cfg.validate();
  RenderedPrompt out;
  switch (cfg.strategy) {
    case Strategy::zero_shot:
      out = render_zero_shot(puzzle);
      break;
    case Strategy::few_shot:
      out = render_few_shot(puzzle, sample_exemplars(train, cfg.shots, cfg.seed, puzzle.id));
      break;
    case Strategy::cot: {
      std::vector<Puzzle> sampled = sample_exemplars(train, cfg.shots, cfg.seed, puzzle.id);
      std::vector<CoTExemplar> exemplars;
      exemplars.reserve(sampled.size());
      for (auto& p : sampled) {
        const auto it = annotations.find(p.id);
        if (it == annotations.end()) {
          throw DataError("no chain-of-thought annotation for sampled exemplar " + p.id);
        }
        exemplars.push_back(
            CoTExemplar{std::move(p), it->second.rationales, it->second.decision,
                        it->second.answer});
      }
      out = render_cot(puzzle, exemplars);
      break;
    }
  }
  out.strategy = cfg;
  return out;
}

CoTAnnotationMap load_cot_annotations(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open annotation file: " + path);
  CoTAnnotationMap out;
  std::string raw;
  std::size_t line = 0;
  std::vector<std::string> errors;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (text::trim(raw).empty()) continue;
    const std::string where = path + ":" + std::to_string(line);
    try {
      const json rec = json::parse(raw);
      CoTAnnotation a;
      a.id = rec.at("id").get<std::string>();
      const auto& rats = rec.at("rationales");
      if (!rats.is_array() || rats.size() != 4) {
        errors.push_back(where + ": rationales must be an array of exactly 4 strings");
        continue;
      }
      for (std::size_t i = 0; i < 4; ++i) a.rationales[i] = rats[i].get<std::string>();
      a.decision = rec.at("decision").get<std::string>();
      a.answer = rec.at("answer").get<int>();
      if (a.answer < 1 || a.answer > 4) {
        errors.push_back(where + ": answer out of range 1..4 (id=" + a.id + ")");
        continue;
      }
      if (!out.emplace(a.id, std::move(a)).second) {
        errors.push_back(where + ": duplicate annotation id");
      }
    } catch (const json::exception& ex) {
      errors.push_back(where + ": " + ex.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "invalid annotation file " + path + ":";
    for (const auto& e : errors) msg += "\n  " + e;
    throw DataError(msg);
  }
  return out;
}

}  // namespace puzzlebench
