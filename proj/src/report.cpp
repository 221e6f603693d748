#include "bracelab/report.hpp"

#include <cstdlib>

namespace bracelab {

SweepMode SweepMode::resolve(u64 total) const {
  if (kind != Kind::automatic) return *this;
  if (total <= kExhaustiveBudget) return {Kind::exhaustive, seed, count};
  return {Kind::sampled, seed, count};
}

Json SweepMode::to_json() const {
  Json j;
  switch (kind) {
    case Kind::automatic: j["kind"] = "automatic"; break;
    case Kind::exhaustive: j["kind"] = "exhaustive"; break;
    case Kind::sampled: j["kind"] = "sampled"; break;
  }
  if (kind != Kind::exhaustive) {
    j["seed"] = seed;
    j["count"] = count;
  }
  return j;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

Json Clause::to_json() const {
  Json j;
  j["clause"] = name;
  j["verdict"] = to_string(verdict);
  if (!witness.is_null()) j["witness"] = witness;
  if (!note.empty()) j["note"] = note;
  j["mode"] = mode.to_json();
  j["checked"] = checked;
  return j;
}

bool Report::passed() const {
  for (const auto& c : clauses)
    if (c.failed()) return false;
  return true;
}

const Clause* Report::find(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

const Clause& Report::at(const std::string& name) const {
  if (auto* c = find(name)) return *c;
  throw Error(ErrorCode::invalid_argument, "no clause named " + name + " in report " + title);
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto c : other.clauses) {
    c.name = prefix + c.name;
    clauses.push_back(std::move(c));
  }
  notices.insert(notices.end(), other.notices.begin(), other.notices.end());
}

Json Report::to_json() const {
  Json j;
  j["report"] = title;
  j["verdict"] = passed() ? "pass" : "fail";
  Json arr = Json::array();
  for (const auto& c : clauses) arr.push_back(c.to_json());
  j["clauses"] = std::move(arr);
  if (!notices.empty()) j["notices"] = notices;
  return j;
}

u64 mix64(u64 x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

unsigned worker_count() {
  static const unsigned n = [] {
    if (const char* env = std::getenv("BRACELAB_THREADS")) {
      int v = std::atoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }();
  return n;
}

Clause clause_from(std::string name, const SweepOutcome& outcome, std::string note) {
  Clause c;
  c.name = std::move(name);
  c.verdict = outcome.ok ? Verdict::pass : Verdict::fail;
  c.witness = outcome.ok ? Json() : outcome.witness;
  c.note = std::move(note);
  c.mode = outcome.mode;
  c.checked = outcome.checked;
  return c;
}

Clause skipped_clause(std::string name, std::string note) {
  Clause c;
  c.name = std::move(name);
  c.verdict = Verdict::skipped;
  c.note = std::move(note);
  return c;
}

Clause verdict_clause(std::string name, bool ok, Json witness, std::string note) {
  Clause c;
  c.name = std::move(name);
  c.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!ok) c.witness = std::move(witness);
  c.note = std::move(note);
  c.checked = 1;
  return c;
}

}  // namespace bracelab
