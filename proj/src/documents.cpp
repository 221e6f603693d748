#include "bracelab/documents.hpp"

#include <fstream>
#include <sstream>

#include "bracelab/flows.hpp"

namespace bracelab {

namespace {

Error bad_doc(const std::string& what) { return Error(ErrorCode::invalid_argument, "brace-v1: " + what); }

u64 index_entry(const Json& v, u64 order) {
  if (!v.is_number_unsigned()) throw bad_doc("table entries must be non-negative integers");
  const u64 x = v.get<u64>();
  if (x >= order) throw Error(ErrorCode::out_of_range, "brace-v1: table entry " + std::to_string(x));
  return x;
}

Brace brace_from_op(const PrimePowerGroup& g, const Json& op) {
  if (!op.is_object() || !op.contains("kind") || !op["kind"].is_string()) throw bad_doc("op.kind missing");
  const std::string kind = op["kind"].get<std::string>();
  const u64 n = g.order();
  if (kind == "trivial") return Brace(g, std::make_shared<TrivialRule>());
  if (kind == "ring") {
    if (g.rank() != 1) throw bad_doc("ring op needs a cyclic group");
    return Brace(g, std::make_shared<RingRule>(op.at("s").get<unsigned>()));
  }
  if (kind == "heisenberg") {
    if (g.exponents() != std::vector<unsigned>{1, 1}) throw bad_doc("heisenberg op needs exponents [1,1]");
    return Brace(g, std::make_shared<HeisenbergRule>());
  }
  if (kind == "star_table") {
    if (n > kTableLimit) throw Error(ErrorCode::intractable, "star table for order " + std::to_string(n));
    const Json& t = op.at("table");
    if (!t.is_array() || t.size() != n * n)
      throw bad_doc("star_table must have " + std::to_string(n * n) + " entries");
    std::vector<u64> table;
    table.reserve(n * n);
    for (const auto& v : t) table.push_back(index_entry(v, n));
    return Brace(g, std::make_shared<StarTableRule>(g, std::move(table)));
  }
  if (kind == "lambda_table") {
    const Json& rows = op.at("rows");
    if (!rows.is_array() || rows.size() != n) throw bad_doc("lambda_table must have one row per element");
    std::vector<Element> images;
    images.reserve(n * g.rank());
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != static_cast<size_t>(g.rank()))
        throw bad_doc("lambda_table rows must have one entry per generator");
      for (const auto& v : row) images.push_back(g.element_at(index_entry(v, n)));
    }
    return Brace(g, std::make_shared<LambdaTableRule>(g, std::move(images)));
  }
  if (kind == "flows") {
    auto ring = std::make_shared<PreLieRing>(PreLieRing::from_json(op.at("prelie")));
    if (!(ring->group() == g)) throw bad_doc("flows pre-Lie ring lives on a different group");
    return Brace(g, std::make_shared<FlowsRule>(std::make_shared<FlowContext>(std::move(ring))));
  }
  throw bad_doc("unknown op kind '" + kind + "'");
}

}  // namespace

Brace parse_brace(const Json& doc) {
  if (!doc.is_object()) throw bad_doc("document must be an object");
  if (doc.value("format", "") != "brace-v1") throw bad_doc("format must be \"brace-v1\"");
  for (const char* key : {"p", "exponents", "op"})
    if (!doc.contains(key)) throw bad_doc(std::string("missing key ") + key);
  const auto exps = doc["exponents"].get<std::vector<unsigned>>();
  const PrimePowerGroup g = make_group(doc["p"].get<u64>(), exps);
  return brace_from_op(g, doc["op"]);
}

Brace load_brace(const Json& doc, const SweepMode& mode) { return certify_brace(parse_brace(doc), mode); }

Json save_brace(const Brace& b) {
  const auto& g = b.group();
  const auto& rule = b.rule();
  Json op;
  op["kind"] = rule.kind();
  if (auto* r = dynamic_cast<const RingRule*>(&rule)) {
    op["s"] = r->s();
  } else if (auto* f = dynamic_cast<const FlowsRule*>(&rule)) {
    op["prelie"] = f->context().ring().to_json();
  } else if (auto* l = dynamic_cast<const LambdaTableRule*>(&rule)) {
    Json rows = Json::array();
    const int r = g.rank();
    for (u64 a = 0; a < g.order(); ++a) {
      Json row = Json::array();
      for (int j = 0; j < r; ++j) row.push_back(g.index_of(l->rows()[a * r + j]));
      rows.push_back(std::move(row));
    }
    op["rows"] = std::move(rows);
  } else if (rule.kind() == "trivial" || rule.kind() == "heisenberg") {
  } else if (g.order() <= kTableLimit) {
    const Brace t = tabulate(b);
    op = Json{{"kind", "star_table"}, {"table", static_cast<const StarTableRule&>(t.rule()).table()}};
  } else {
    return save_brace(to_lambda_table(b));
  }
  Json doc;
  doc["format"] = "brace-v1";
  doc["p"] = g.p();
  doc["exponents"] = g.exponents();
  doc["op"] = std::move(op);
  return doc;
}

std::string canonical_text(const Json& doc) { return doc.dump() + "\n"; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::invalid_argument, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::invalid_argument, "write failed for " + path);
}

}  // namespace bracelab
