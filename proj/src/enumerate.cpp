#include "bracelab/enumerate.hpp"

#include <map>

namespace bracelab {

namespace {

using Perm = std::vector<std::uint16_t>;

class Search {
 public:
  Search(const PrimePowerGroup& g, u64 budget) : g_(g), n_(g.order()), budget_(budget) {
    add_.resize(n_ * n_);
    for (u64 x = 0; x < n_; ++x)
      for (u64 y = 0; y < n_; ++y) add_[x * n_ + y] = g.index_of(g.add(g.element_at(x), g.element_at(y)));
    collect_automorphisms();
    comp_.assign(auts_.size() * auts_.size(), -1);
    lam_.assign(n_, -1);
  }

  Enumeration run() {
    if (!assign(0, identity_) || !propagate()) throw Error(ErrorCode::internal, "identity assignment failed");
    dfs();
    out_.automorphisms = auts_.size();
    return std::move(out_);
  }

 private:
  void collect_automorphisms() {
    const int r = g_.rank();
    const auto gens = g_.generators();
    std::vector<u64> pick(r, 0);
    std::map<Perm, int> seen;
    for (;;) {
      bool ok = true;
      for (int j = 0; j < r && ok; ++j) ok = g_.order_log(g_.element_at(pick[j])) <= g_.exponent(j);
      if (ok) {
        Perm perm(n_);
        std::vector<std::uint8_t> hit(n_, 0);
        for (u64 x = 0; x < n_ && ok; ++x) {
          const auto c = g_.coords(g_.element_at(x));
          Element img = g_.zero();
          for (int j = 0; j < r; ++j) img = g_.add(img, g_.scale(g_.element_at(pick[j]), c[j]));
          const u64 i = g_.index_of(img);
          if (hit[i]) ok = false;
          hit[i] = 1;
          perm[x] = static_cast<std::uint16_t>(i);
        }
        if (ok) {
          bool is_identity = true;
          for (u64 x = 0; x < n_; ++x) is_identity = is_identity && perm[x] == x;
          if (is_identity) identity_ = static_cast<int>(auts_.size());
          index_.emplace(perm, static_cast<int>(auts_.size()));
          auts_.push_back(std::move(perm));
        }
      }
      int j = 0;
      while (j < r && ++pick[j] == n_) pick[j++] = 0;
      if (j == r) break;
    }
  }

  int compose(int f, int h) {
    int& c = comp_[f * auts_.size() + h];
    if (c < 0) {
      Perm perm(n_);
      for (u64 x = 0; x < n_; ++x) perm[x] = auts_[f][auts_[h][x]];
      c = index_.at(perm);
    }
    return c;
  }

  bool assign(u64 a, int f) {
    if (lam_[a] == f) return true;
    if (lam_[a] >= 0) return false;
    lam_[a] = f;
    trail_.push_back(a);
    return true;
  }

  // Closes the trail under λ_{a + λ_a(b)} = λ_a λ_b for both orders of each pair.
  bool propagate() {
    while (head_ < trail_.size()) {
      const u64 x = trail_[head_++];
      for (size_t i = 0; i < head_; ++i) {
        const u64 y = trail_[i];
        for (int side = 0; side < 2; ++side) {
          const u64 a = side ? y : x, b = side ? x : y;
          const u64 c = add_[a * n_ + auts_[lam_[a]][b]];
          if (!assign(c, compose(lam_[a], lam_[b]))) return false;
        }
      }
    }
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      lam_[trail_.back()] = -1;
      trail_.pop_back();
    }
    head_ = mark;
  }

  void record() {
    std::vector<Element> rows;
    const int r = g_.rank();
    rows.reserve(n_ * r);
    for (u64 a = 0; a < n_; ++a)
      for (int j = 0; j < r; ++j)
        rows.push_back(g_.element_at(auts_[lam_[a]][g_.index_of(g_.generator(j))]));
    out_.braces.push_back(
        certify_brace(Brace(g_, std::make_shared<LambdaTableRule>(g_, std::move(rows))), SweepMode::exhaustive()));
    ++out_.count;
  }

  void dfs() {
    if (++out_.nodes > budget_) {
      out_.complete = false;
      return;
    }
    u64 a = 0;
    while (a < n_ && lam_[a] >= 0) ++a;
    if (a == n_) {
      record();
      return;
    }
    const size_t mark = trail_.size();
    for (size_t f = 0; f < auts_.size() && out_.complete; ++f) {
      if (assign(a, static_cast<int>(f)) && propagate()) dfs();
      undo(mark);
    }
  }

  PrimePowerGroup g_;
  u64 n_;
  u64 budget_;
  std::vector<std::uint32_t> add_;
  std::vector<Perm> auts_;
  std::map<Perm, int> index_;
  int identity_ = -1;
  std::vector<int> comp_;
  std::vector<int> lam_;
  std::vector<u64> trail_;
  size_t head_ = 0;
  Enumeration out_;
};

}  // namespace

Json Enumeration::to_json() const {
  Json j;
  j["count"] = count;
  j["complete"] = complete;
  j["nodes"] = nodes;
  j["automorphisms"] = automorphisms;
  return j;
}

Enumeration enumerate_small(u64 p, const std::vector<unsigned>& exponents, u64 budget) {
  const PrimePowerGroup g = make_group(p, exponents);
  if (p > 7 || g.order() > p * p)
    throw Error(ErrorCode::intractable, "enumeration is limited to |A| <= p^2 and p <= 7");
  return Search(g, budget).run();
}

}  // namespace bracelab
