#include "bracelab/subgroup.hpp"

#include <algorithm>
#include <deque>

namespace bracelab {

std::string to_string(Subgroup::Tag tag) {
  switch (tag) {
    case Subgroup::Tag::whole: return "whole";
    case Subgroup::Tag::p_power: return "p-power";
    case Subgroup::Tag::annihilator: return "annihilator";
    case Subgroup::Tag::e_chain: return "e-chain";
    case Subgroup::Tag::star_power: return "star-power";
    case Subgroup::Tag::q_chain: return "q-chain";
    case Subgroup::Tag::ideal: return "ideal";
    case Subgroup::Tag::custom: return "custom";
  }
  return "?";
}

Subgroup Subgroup::coordinate(const PrimePowerGroup& g, const std::array<unsigned, kMaxRank>& valuations, Tag tag,
                              int parameter) {
  Subgroup s(g);
  for (int j = 0; j < g.rank(); ++j) {
    s.valuations_[j] = std::min(valuations[j], g.exponent(j));
    if (s.valuations_[j] < g.exponent(j)) s.generators_.push_back(g.scale(g.generator(j), g.ppow(s.valuations_[j])));
  }
  s.tag_ = tag;
  s.parameter_ = parameter;
  return s;
}

Subgroup Subgroup::p_power(const PrimePowerGroup& g, unsigned i) {
  std::array<unsigned, kMaxRank> v{};
  v.fill(i);
  return coordinate(g, v, i == 0 ? Tag::whole : Tag::p_power, static_cast<int>(i));
}

Subgroup Subgroup::annihilator(const PrimePowerGroup& g, unsigned i) {
  std::array<unsigned, kMaxRank> v{};
  for (int j = 0; j < g.rank(); ++j) v[j] = g.exponent(j) > i ? g.exponent(j) - i : 0;
  return coordinate(g, v, Tag::annihilator, static_cast<int>(i));
}

Subgroup Subgroup::whole(const PrimePowerGroup& g) { return p_power(g, 0); }

Subgroup Subgroup::zero(const PrimePowerGroup& g) {
  std::array<unsigned, kMaxRank> v{};
  v.fill(64);
  return coordinate(g, v, Tag::custom, 0);
}

Subgroup Subgroup::from_members(const PrimePowerGroup& g, std::vector<std::uint8_t> member, Tag tag,
                                int parameter) {
  if (member.size() != g.order()) throw Error(ErrorCode::invalid_argument, "member mask size mismatch");
  Subgroup s(g);
  auto data = std::make_shared<Data>();
  SpanBuilder span(g);
  for (u64 x = 0; x < g.order(); ++x) {
    if (!member[x]) continue;
    data->elements.push_back(x);
    span.add(g.element_at(x));
  }
  data->closed = span.size() == data->elements.size();
  s.generators_ = span.generators();
  data->member = std::move(member);
  s.data_ = std::move(data);
  s.tag_ = tag;
  s.parameter_ = parameter;
  return s;
}

std::string Subgroup::label() const {
  std::string out = to_string(tag_);
  if (tag_ != Tag::whole && tag_ != Tag::custom) out += "(" + std::to_string(parameter_) + ")";
  return out;
}

bool Subgroup::contains(const Element& a) const {
  if (data_) return data_->member[parent_.index_of(a)] != 0;
  for (int j = 0; j < parent_.rank(); ++j) {
    const unsigned v = valuations_[j];
    if (v >= parent_.exponent(j)) {
      if (a.c[j] != 0) return false;
    } else if (a.c[j] % parent_.ppow(v) != 0) {
      return false;
    }
  }
  return true;
}

u64 Subgroup::size() const {
  if (data_) return data_->elements.size();
  u64 s = 1;
  for (int j = 0; j < parent_.rank(); ++j) s *= parent_.ppow(parent_.exponent(j) - valuations_[j]);
  return s;
}

Element Subgroup::element_at(u64 i) const {
  if (data_) return parent_.element_at(data_->elements.at(i));
  Element a;
  for (int j = 0; j < parent_.rank(); ++j) {
    const u64 count = parent_.ppow(parent_.exponent(j) - valuations_[j]);
    a.c[j] = (i % count) * parent_.ppow(valuations_[j]);
    i /= count;
  }
  return a;
}

std::vector<Element> Subgroup::elements() const {
  if (size() > kEnumerationLimit) throw Error(ErrorCode::intractable, "subgroup too large to enumerate");
  std::vector<Element> out;
  out.reserve(size());
  for (u64 i = 0; i < size(); ++i) out.push_back(element_at(i));
  return out;
}

const std::vector<Element>& Subgroup::generators() const { return generators_; }

bool Subgroup::additive_closed() const { return !data_ || data_->closed; }

bool Subgroup::subset_of(const Subgroup& other) const {
  if (!data_ && !other.data_) {
    for (int j = 0; j < parent_.rank(); ++j)
      if (valuations_[j] < other.valuations_[j]) return false;
    return true;
  }
  if (additive_closed() && other.additive_closed()) {
    for (const auto& x : generators_)
      if (!other.contains(x)) return false;
    return true;
  }
  for (u64 i = 0; i < size(); ++i)
    if (!other.contains(element_at(i))) return false;
  return true;
}

Subgroup Subgroup::scaled(unsigned i) const {
  if (!data_) {
    auto v = valuations_;
    for (int j = 0; j < parent_.rank(); ++j) v[j] += i;
    return coordinate(parent_, v, Tag::custom, 0);
  }
  SpanBuilder span(parent_);
  for (const auto& x : generators_) span.add(parent_.scale(x, parent_.ppow(std::min(i, parent_.max_exponent()))));
  return span.finish(Tag::custom, 0);
}

Json Subgroup::to_json() const {
  Json j;
  j["tag"] = to_string(tag_);
  j["parameter"] = parameter_;
  j["order"] = size();
  j["structural"] = structural();
  Json gens = Json::array();
  for (const auto& x : generators_) gens.push_back(element_json(parent_, x));
  j["generators"] = std::move(gens);
  return j;
}

// ---------------------------------------------------------------------------

SpanBuilder::SpanBuilder(const PrimePowerGroup& g) : g_(g) {
  if (g.order() > kEnumerationLimit)
    throw Error(ErrorCode::intractable, "span over group of order " + std::to_string(g.order()));
  member_.assign(g.order(), 0);
  member_[0] = 1;
  elements_.push_back(g.zero());
}

bool SpanBuilder::add(const Element& x) {
  if (contains(x)) return false;
  const size_t base = elements_.size();
  Element shift = x;
  while (!contains(shift)) {
    for (size_t i = 0; i < base; ++i) {
      Element y = g_.add(shift, elements_[i]);
      member_[g_.index_of(y)] = 1;
      elements_.push_back(y);
    }
    shift = g_.add(shift, x);
  }
  generators_.push_back(x);
  return true;
}

Subgroup SpanBuilder::finish(Subgroup::Tag tag, int parameter) const {
  return Subgroup::from_members(g_, member_, tag, parameter);
}

Subgroup circle_closure(const Brace& b, const std::vector<Element>& gens, Subgroup::Tag tag, int parameter) {
  const auto& g = b.group();
  if (g.order() > kEnumerationLimit)
    throw Error(ErrorCode::intractable, "circle closure over order " + std::to_string(g.order()));
  std::vector<std::uint8_t> member(g.order(), 0);
  std::vector<Element> elems{g.zero()};
  member[0] = 1;
  std::vector<Element> active;
  for (const auto& x : gens) {
    if (member[g.index_of(x)]) continue;
    active.push_back(x);
    // Restart the orbit walk with the enlarged generator set; each accepted
    // generator at least multiplies the order by p.
    std::deque<Element> queue(elems.begin(), elems.end());
    while (!queue.empty()) {
      Element e = queue.front();
      queue.pop_front();
      for (const auto& s : active) {
        Element y = b.circle(e, s);
        u64 iy = g.index_of(y);
        if (!member[iy]) {
          member[iy] = 1;
          elems.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return Subgroup::from_members(g, std::move(member), tag, parameter);
}

}  // namespace bracelab
