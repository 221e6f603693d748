#include "bracelab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "bracelab/documents.hpp"
#include "bracelab/filtration.hpp"
#include "bracelab/flows.hpp"

namespace bracelab {

namespace {

std::vector<Report> guarded(const std::string& title, const std::function<std::vector<Report>()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    Report r;
    r.title = title;
    if (e.code() == ErrorCode::unsupported_prime)
      r.add(skipped_clause("error", e.what()));
    else
      r.add(verdict_clause("error", false, Json{{"error", to_string(e.code())}}, e.what()));
    return {r};
  }
}

unsigned default_k(const PrimePowerGroup& g) {
  const unsigned a = g.max_exponent();
  const unsigned step = static_cast<unsigned>(g.p() - 1);
  return std::max(1u, (a + step - 1) / step);
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{"axioms", "properties", "filtration", "prelie", "flows", "all"};
  return ids;
}

bool SuiteResult::passed() const {
  for (const auto& r : reports)
    if (!r.passed()) return false;
  return true;
}

Json SuiteResult::to_json(bool timing) const {
  Json j;
  j["format"] = "suite-result-v1";
  j["suite"] = suite;
  j["verdict"] = passed() ? "pass" : "fail";
  j["mode"] = mode.to_json();
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  j["reports"] = std::move(arr);
  if (timing) j["seconds"] = seconds;
  return j;
}

std::vector<Report> axiom_checks(const Brace& b, const SuiteOptions& o) {
  return guarded("axioms", [&] { return std::vector<Report>{validate_brace(b, o.mode)}; });
}

std::vector<Report> property_checks(const Brace& b, const SuiteOptions& o) {
  return guarded("properties", [&] {
    std::vector<Report> out;
    for (auto m : {DescentMode::property1, DescentMode::property1prime, DescentMode::property1doubleprime,
                   DescentMode::engel}) {
      const int depth = o.depth.value_or(default_depth(m, b.p()));
      if (depth < 1) {
        Report r;
        r.title = to_string(m);
        r.add(skipped_clause("descent", "depth " + std::to_string(depth) + " for p = " + std::to_string(b.p())));
        out.push_back(std::move(r));
        continue;
      }
      PropertyReport pr = check_descent(b, m, depth, o.mode);
      pr.report.title = pr.property + " (depth " + std::to_string(pr.depth) + ")";
      out.push_back(std::move(pr.report));
    }
    out.push_back(uniform_report(b, o.k.value_or(default_k(b.group())), std::nullopt, o.mode));
    return out;
  });
}

std::vector<Report> filtration_checks(const Brace& b, const SuiteOptions& o) {
  return guarded("filtration", [&] { return std::vector<Report>{verify_ideal_lattice(b, o.mode)}; });
}

std::vector<Report> prelie_checks(const Brace& b, const SuiteOptions& o, std::optional<QuotientPreLie>* built) {
  return guarded("prelie", [&] {
    const BuildParams params = BuildParams::make(b.group(), o.k);
    QuotientPreLieOptions qo;
    qo.policy = o.section;
    qo.seed = o.section_seed;
    qo.comparison_seeds = o.comparison_seeds;
    qo.check = o.mode;
    QuotientPreLie q = build_quotient_prelie(b, params, qo);
    std::vector<Report> out;
    Report build = q.checks;
    build.title = "build";
    for (const auto& n : q.notices) build.notices.push_back(n);
    out.push_back(std::move(build));

    SweepMode identity = o.mode;
    if (identity.kind == SweepMode::Kind::automatic) identity.count = std::max(identity.count, o.prelie_samples);
    out.push_back(verify_prelie_axioms(q.ring(), identity));

    Report bridge;
    bridge.title = "scaling bridge";
    bridge.add(scaling_bridge_clause(b, q, o.mode));
    out.push_back(std::move(bridge));

    const PullbackSection s(b.group(), params.k, o.section, o.section_seed);
    out.push_back(verify_f_injective(b, params, s, o.mode));
    out.push_back(verify_dot_additivity(b, params, o.mode));
    out.push_back(verify_section_additivity(s, Subgroup::annihilator(b.group(), params.k), o.mode));
    out.push_back(nilpotency_report(b, q));
    if (built) built->emplace(std::move(q));
    return out;
  });
}

std::vector<Report> roundtrip_checks(const Brace& b, const SuiteOptions& o) {
  return guarded("flows roundtrip", [&] {
    return std::vector<Report>{verify_flows_roundtrip(b, BuildParams::make(b.group(), o.k), o.mode)};
  });
}

std::vector<Report> recovery_checks(const Brace& b, const SuiteOptions& o) {
  return guarded("recovery", [&] {
    return std::vector<Report>{
        verify_main_recovery(b, BuildParams::make(b.group(), o.k), o.mode, o.comparison_seeds)};
  });
}

SuiteResult run_suite(const Brace& b, const std::string& suite, const SuiteOptions& o) {
  const bool all = suite == "all";
  if (std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end())
    throw Error(ErrorCode::invalid_argument, "unknown suite '" + suite + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res;
  res.suite = suite;
  res.mode = o.mode;
  auto take = [&](std::vector<Report> rs) {
    for (auto& r : rs) res.reports.push_back(std::move(r));
  };
  if (all || suite == "axioms") take(axiom_checks(b, o));
  if (all || suite == "properties") take(property_checks(b, o));
  if (all || suite == "filtration") take(filtration_checks(b, o));
  if (all || suite == "prelie") take(prelie_checks(b, o));
  if (all || suite == "flows") {
    take(roundtrip_checks(b, o));
    take(recovery_checks(b, o));
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

SuiteResult run_suite(const Json& doc, const std::string& suite, const SuiteOptions& o) {
  if (std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end())
    throw Error(ErrorCode::invalid_argument, "unknown suite '" + suite + "'");
  return run_suite(load_brace(doc, o.mode), suite, o);
}

}  // namespace bracelab
