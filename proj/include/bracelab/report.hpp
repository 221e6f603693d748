#pragma once

#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bracelab/padic.hpp"
#include "json.hpp"

namespace bracelab {

using Json = nlohmann::ordered_json;

inline constexpr u64 kDefaultSeed = 20240917;
inline constexpr u64 kDefaultSamples = 100000;
/// Implied loop counts up to this bound are swept exhaustively in automatic mode.
inline constexpr u64 kExhaustiveBudget = 100000000;

struct SweepMode {
  enum class Kind { automatic, exhaustive, sampled };
  Kind kind = Kind::automatic;
  u64 seed = kDefaultSeed;
  u64 count = kDefaultSamples;

  static SweepMode automatic(u64 seed = kDefaultSeed, u64 count = kDefaultSamples) {
    return {Kind::automatic, seed, count};
  }
  static SweepMode exhaustive() { return {Kind::exhaustive, kDefaultSeed, kDefaultSamples}; }
  static SweepMode sampled(u64 seed = kDefaultSeed, u64 count = kDefaultSamples) {
    return {Kind::sampled, seed, count};
  }
  /// Resolves automatic mode against the size of the tuple space.
  SweepMode resolve(u64 total) const;
  bool is_exhaustive() const { return kind == Kind::exhaustive; }
  /// Mode for a sweep whose space was already shrunk by an exact reduction
  /// (e.g. additivity): explicit sampling is kept, anything else becomes automatic.
  SweepMode reduced() const { return kind == Kind::sampled ? *this : automatic(seed, count); }
  Json to_json() const;
};

enum class Verdict { pass, fail, skipped };
std::string to_string(Verdict v);

struct Clause {
  std::string name;
  Verdict verdict = Verdict::pass;
  Json witness;  // null unless failing
  std::string note;
  SweepMode mode = SweepMode::exhaustive();
  u64 checked = 0;

  bool failed() const { return verdict == Verdict::fail; }
  Json to_json() const;
};

struct Report {
  std::string title;
  std::vector<Clause> clauses;
  std::vector<std::string> notices;

  bool passed() const;
  const Clause* find(const std::string& name) const;
  const Clause& at(const std::string& name) const;
  void add(Clause c) { clauses.push_back(std::move(c)); }
  void append(const Report& other, const std::string& prefix = "");
  Json to_json() const;
};

/// splitmix64 step; used for counter-based sampling so that sampled tuples do
/// not depend on the number of worker threads.
u64 mix64(u64 x);
inline u64 sample_value(u64 seed, u64 tuple, u64 slot, u64 bound) {
  return mix64(seed ^ mix64(tuple * 0x9E3779B97F4A7C15ULL + slot + 1)) % bound;
}

unsigned worker_count();

struct SweepOutcome {
  bool ok = true;
  Json witness;
  u64 checked = 0;
  SweepMode mode;
};

/// Checks `fn` on every tuple of [0, extents[0]) x ... (exhaustive) or on
/// `mode.count` pseudo-random tuples (sampled). `fn` returns a witness on
/// failure. The reported witness is the one with the smallest tuple number, so
/// results are reproducible regardless of threading.
template <size_t Arity, class Fn>
SweepOutcome sweep(const std::array<u64, Arity>& extents, const SweepMode& requested, Fn&& fn) {
  u128 total128 = 1;
  for (u64 e : extents) total128 *= e;
  const u64 total = total128 > (u128{1} << 62) ? (u64{1} << 62) : static_cast<u64>(total128);
  SweepOutcome out;
  out.mode = requested.resolve(total);
  const bool exhaustive = out.mode.kind == SweepMode::Kind::exhaustive;
  const u64 steps = exhaustive ? total : out.mode.count;
  if (total == 0 || steps == 0) return out;

  std::atomic<u64> first_fail{~u64{0}};
  std::vector<std::optional<Json>> witnesses(worker_count());
  std::vector<u64> fail_at(worker_count(), ~u64{0});
  std::atomic<u64> next_block{0};
  constexpr u64 kBlock = 4096;
  std::exception_ptr error;
  std::atomic<bool> errored{false};

  auto run = [&](unsigned w) {
    for (;;) {
      u64 start = next_block.fetch_add(kBlock);
      if (start >= steps || start > first_fail.load(std::memory_order_relaxed)) return;
      u64 end = std::min(steps, start + kBlock);
      std::array<u64, Arity> idx{};
      if (exhaustive) {
        u64 r = start;
        for (size_t a = 0; a < Arity; ++a) {
          idx[a] = r % extents[a];
          r /= extents[a];
        }
      }
      for (u64 t = start; t < end; ++t) {
        if (exhaustive) {
          if (t != start) {
            for (size_t a = 0; a < Arity; ++a) {
              if (++idx[a] < extents[a]) break;
              idx[a] = 0;
            }
          }
        } else {
          for (size_t a = 0; a < Arity; ++a) idx[a] = sample_value(out.mode.seed, t, a, extents[a]);
        }
        if (auto wit = fn(idx)) {
          if (t < fail_at[w]) {
            fail_at[w] = t;
            witnesses[w] = std::move(*wit);
          }
          u64 cur = first_fail.load();
          while (t < cur && !first_fail.compare_exchange_weak(cur, t)) {
          }
          return;
        }
      }
    }
  };
  auto worker = [&](unsigned w) {
    try {
      run(w);
    } catch (...) {
      if (!errored.exchange(true)) error = std::current_exception();
      first_fail.store(0);
    }
  };
  const unsigned workers = worker_count();
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  u64 best = ~u64{0};
  for (unsigned w = 0; w < workers; ++w) {
    if (fail_at[w] < best) {
      best = fail_at[w];
      out.ok = false;
      out.witness = *witnesses[w];
    }
  }
  out.checked = out.ok ? steps : best + 1;
  return out;
}

/// Builds a clause from a sweep outcome.
Clause clause_from(std::string name, const SweepOutcome& outcome, std::string note = "");
Clause skipped_clause(std::string name, std::string note);
/// Clause decided by a direct (non-sweep) computation.
Clause verdict_clause(std::string name, bool ok, Json witness = Json(), std::string note = "");

}  // namespace bracelab
