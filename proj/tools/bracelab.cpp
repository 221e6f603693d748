// bracelab command-line front end. Exit status: 0 when every check passes,
// 1 on a failed check, 2 on usage or input errors.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bracelab/documents.hpp"
#include "bracelab/enumerate.hpp"
#include "bracelab/generators.hpp"
#include "bracelab/suite.hpp"

using namespace bracelab;

namespace {

struct ModeFlags {
  std::string mode = "automatic";
  u64 seed = kDefaultSeed;
  u64 count = kDefaultSamples;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "sweep mode")
        ->check(CLI::IsMember({"automatic", "exhaustive", "sampled"}))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();
    cmd->add_option("--count", count, "sample count")->capture_default_str();
  }
  SweepMode resolve() const {
    if (mode == "exhaustive") return SweepMode::exhaustive();
    if (mode == "sampled") return SweepMode::sampled(seed, count);
    return SweepMode::automatic(seed, count);
  }
};

void print_report(const Report& r) {
  std::cout << "[" << (r.passed() ? "pass" : "FAIL") << "] " << r.title << "\n";
  for (const auto& c : r.clauses) {
    std::cout << "  " << to_string(c.verdict) << "  " << c.name;
    if (c.verdict != Verdict::skipped) std::cout << "  (" << c.checked << " checked)";
    if (!c.note.empty()) std::cout << "  " << c.note;
    std::cout << "\n";
    if (!c.witness.is_null()) std::cout << "      witness: " << c.witness.dump() << "\n";
  }
  for (const auto& n : r.notices) std::cout << "  notice: " << n << "\n";
}

int emit(const SuiteResult& res, bool json) {
  if (json) {
    std::cout << res.to_json().dump(2) << "\n";
  } else {
    for (const auto& r : res.reports) print_report(r);
    std::cout << (res.passed() ? "PASS" : "FAIL") << "  " << res.suite << "\n";
  }
  return res.exit_code();
}

SuiteResult bundle(const std::string& name, std::vector<Report> reports, const SweepMode& mode) {
  SuiteResult res;
  res.suite = name;
  res.mode = mode;
  res.reports = std::move(reports);
  return res;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bracelab: finite left braces, their filtrations and pre-Lie rings"};
  app.require_subcommand(1);

  std::string file;
  bool json = false;
  ModeFlags flags;
  std::optional<unsigned> k;
  std::optional<int> depth;
  std::string section = "canonical";
  std::string out_path;
  std::string suite_id = "all";
  u64 p = 0;
  std::vector<unsigned> exponents;
  u64 budget = 1000000;
  bool emit_docs = false;

  auto with_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "brace-v1 document")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--json", json, "print JSON");
    flags.attach(cmd);
  };
  auto* validate = app.add_subcommand("validate", "check the brace axioms");
  with_file(validate);
  auto* props = app.add_subcommand("props", "descent properties and uniform-group clauses");
  with_file(props);
  props->add_option("--depth", depth, "descent depth");
  auto* filtration = app.add_subcommand("filtration", "ideal lattice of the p-power and annihilator filtrations");
  with_file(filtration);
  auto* prelie = app.add_subcommand("prelie", "build the quotient pre-Lie ring");
  with_file(prelie);
  prelie->add_option("--k", k, "pullback depth");
  prelie->add_option("--section", section, "canonical or random:SEED");
  prelie->add_option("--out", out_path, "write the pre-Lie ring as prelie-v1");
  auto* flows = app.add_subcommand("flows", "group of flows over the passage product on p^kA");
  with_file(flows);
  flows->add_option("--k", k, "pullback depth");
  auto* recover = app.add_subcommand("recover", "recover the quotient product from the pre-Lie ring");
  with_file(recover);
  recover->add_option("--k", k, "pullback depth");
  auto* enumerate = app.add_subcommand("enumerate", "all braces on a small additive group");
  enumerate->add_option("--p", p, "prime")->required();
  enumerate->add_option("--exponents", exponents, "cyclic factor exponents")->required()->delimiter(',');
  enumerate->add_option("--budget", budget, "search node budget")->capture_default_str();
  enumerate->add_flag("--emit", emit_docs, "include the brace documents");
  auto* suite = app.add_subcommand("suite", "run a check bundle");
  with_file(suite);
  suite->add_option("--suite", suite_id, "axioms, properties, filtration, prelie, flows or all")
      ->check(CLI::IsMember(suite_ids()))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    SuiteOptions opts;
    opts.mode = flags.resolve();
    opts.k = k;
    opts.depth = depth;
    if (section.rfind("random:", 0) == 0) {
      opts.section = PullbackSection::Policy::random;
      opts.section_seed = std::stoull(section.substr(7));
    } else if (section != "canonical") {
      std::cerr << "error: --section must be canonical or random:SEED\n";
      return 2;
    }

    if (enumerate->parsed()) {
      const Enumeration e = enumerate_small(p, exponents, budget);
      Json j = e.to_json();
      if (emit_docs) {
        Json docs = Json::array();
        for (const auto& b : e.braces) docs.push_back(save_brace(b));
        j["braces"] = std::move(docs);
      }
      std::cout << j.dump(emit_docs ? -1 : 2) << "\n";
      return e.complete ? 0 : 1;
    }

    if (validate->parsed()) {
      const Brace b = parse_brace(read_json_file(file));
      return emit(bundle("validate", {validate_brace(b, opts.mode)}, opts.mode), json);
    }

    const Brace b = load_brace_file(file, opts.mode);
    if (props->parsed()) return emit(bundle("props", property_checks(b, opts), opts.mode), json);
    if (filtration->parsed()) return emit(bundle("filtration", filtration_checks(b, opts), opts.mode), json);
    if (flows->parsed()) return emit(bundle("flows", roundtrip_checks(b, opts), opts.mode), json);
    if (recover->parsed()) return emit(bundle("recover", recovery_checks(b, opts), opts.mode), json);
    if (prelie->parsed()) {
      std::optional<QuotientPreLie> q;
      const int code = emit(bundle("prelie", prelie_checks(b, opts, &q), opts.mode), json);
      if (!out_path.empty()) {
        if (!q) {
          std::cerr << "error: no pre-Lie ring was built\n";
          return 1;
        }
        write_text_file(out_path, canonical_text(q->ring().to_json()));
      }
      return code;
    }
    return emit(run_suite(b, suite_id, opts), json);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::not_a_brace ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
