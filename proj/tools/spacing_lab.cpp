// spacing-lab: build the constructions, run set checks and witness searches, and
// re-verify the JSON certificates they emit.
//
// JSON goes to stdout (or --out), diagnostics to stderr.
// Exit codes: 0 holds / witness found / certificate valid, 1 refuted / invalid, 2 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "arguments.hpp"
#include "spacing/spacing.hpp"

namespace {

using namespace spacing;
using io::json;

constexpr int exit_ok = 0;
constexpr int exit_refuted = 1;
constexpr int exit_error = 2;

struct Common {
  unsigned jobs = 1;
  std::string out;
};

void emit(const json& doc, const Common& common)
{
  if (common.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(common.out);
  if (!file)
    throw std::runtime_error("cannot write '" + common.out + "'");
  file << doc.dump(2) << '\n';
}

std::uint64_t resolve_horizon(const std::optional<std::uint64_t>& flag)
{
  if (flag)
    return *flag;
  if (const char* env = std::getenv("SPACING_LAB_HORIZON"))
    return cli::parse_u64(env);
  throw std::invalid_argument("a horizon is required (--horizon or SPACING_LAB_HORIZON)");
}

int verdict_exit(const HorizonVerdict& v) { return v.holds() ? exit_ok : exit_refuted; }

struct BuildArgs {
  std::string kind;
  std::uint64_t m = 2;
  std::uint64_t M = 3;
  std::uint64_t N = 1;
  std::uint64_t stages = 1;
  std::string A = "3";
  std::string convention = "at-least-one";
};

int run_build(const BuildArgs& a, const Common& common)
{
  if (a.kind == "blocks") {
    emit(io::to_json(block_family(a.m)), common);
  } else if (a.kind == "lemma") {
    const auto set = cli::parse_set("explicit:" + a.A);
    emit(io::to_json(lemma_extend(*set.as_explicit(), a.N, a.M)), common);
  } else if (a.kind == "staged") {
    StageConvention convention;
    if (a.convention == "literal")
      convention = StageConvention::Literal;
    else if (a.convention == "at-least-one")
      convention = StageConvention::AtLeastOne;
    else
      throw std::invalid_argument("unknown convention '" + a.convention + "'");
    emit(io::to_json(staged_p(a.M, a.stages, convention)), common);
  } else {
    throw std::invalid_argument("unknown build kind '" + a.kind + "'");
  }
  return exit_ok;
}

struct CheckArgs {
  std::string property;
  std::string set;
  std::optional<std::uint64_t> stage;
  std::optional<std::uint64_t> horizon;
  CheckParams params;
};

int run_check_command(CheckArgs a, const Common& common)
{
  std::optional<SpacingSet> set;
  if (!a.set.empty())
    set = cli::parse_set(a.set, a.stage);
  if (a.property != "dispersed")
    a.params.horizon = resolve_horizon(a.horizon);
  const auto report = run_check(a.property, set, a.params, ScanOptions{common.jobs});
  emit(io::to_json(report), common);
  std::cerr << a.property << ": " << to_string(report.verdict.status)
            << (report.verdict.structural ? " (" + *report.verdict.structural + ")" : "") << '\n';
  return verdict_exit(report.verdict);
}

struct WitnessArgs {
  std::string mode;
  std::string set;
  std::optional<std::uint64_t> stage;
  std::optional<std::uint64_t> horizon;
  std::string exponents = "1";
  std::string u = "1";
  std::string v = "1";
  std::string pairs;
  std::uint64_t m = 1;
  std::uint64_t depth = 0;
  std::string query;
  bool all = false;
};

int run_witness(const WitnessArgs& a, const Common& common)
{
  const ScanOptions options{common.jobs};
  WitnessReport report;
  if (!a.query.empty()) {
    const auto doc = cli::read_json_file(a.query);
    if (doc.contains("type") && doc.at("type") == "witness")
      report = rerun_witness(io::witness_from(doc), options);
    else
      report = product_witness(io::query_from(doc.contains("query") ? doc.at("query") : doc), options);
  } else {
    if (a.set.empty())
      throw std::invalid_argument("--set is required");
    const auto set = cli::parse_set(a.set, a.stage);
    const auto horizon = resolve_horizon(a.horizon);

    if (a.mode == "refute-product") {
      const auto r = refute_product_transitivity(set, horizon, options);
      emit(io::to_json(r), common);
      std::cerr << "sigma x sigma^" << r.m << ": " << r.hits.size() << " hits up to " << horizon
                << (r.verdict.structural ? ", structural certificate " + *r.verdict.structural : "") << '\n';
      return verdict_exit(r.verdict);
    }
    if (a.mode == "nested") {
      const auto targets = cli::parse_patterns(a.v, a.m);
      const auto r = nested_refinement(set, targets, a.depth, horizon, options);
      emit(io::to_json(r, set, a.depth, horizon), common);
      return verdict_exit(r.verdict);
    }
    if (a.mode == "hitting" || a.mode == "product") {
      const auto exponents = a.mode == "hitting" ? std::vector<std::uint64_t>{1} : cli::parse_u64_list(a.exponents);
      ProductQuery q{set, exponents, cli::parse_patterns(a.u, exponents.size()),
                     cli::parse_patterns(a.v, exponents.size()), horizon};
      if (a.all) {
        const auto hits = product_hitting(q, options);
        emit(io::hits_document(q, hits), common);
        return hits.empty() ? exit_refuted : exit_ok;
      }
      report = product_witness(q, options, a.mode);
    } else if (a.mode == "multi") {
      auto [sources, targets] = a.pairs.empty()
                                    ? std::pair{cli::parse_patterns(a.u, a.m), cli::parse_patterns(a.v, a.m)}
                                    : cli::parse_pairs(a.pairs, a.m);
      report = multi_transitivity_witness(set, sources, targets, horizon, options);
    } else if (a.mode == "delta") {
      report = delta_transitivity_witness(set, cli::parse_pattern(a.u), cli::parse_patterns(a.v, a.m), horizon, options);
    } else {
      throw std::invalid_argument("unknown witness mode '" + a.mode + "'");
    }
  }
  emit(io::to_json(report), common);
  if (report.witness)
    std::cerr << report.mode << ": witness n = " << *report.witness << '\n';
  else
    std::cerr << report.mode << ": no witness up to " << report.query.horizon
              << (report.verdict.structural ? " (structural: " + *report.verdict.structural + ")" : "") << '\n';
  return verdict_exit(report.verdict);
}

int run_verify(const std::string& path, const Common& common)
{
  io::json doc;
  try {
    doc = cli::read_json_file(path);
  } catch (const io::FormatError& e) {
    std::cerr << "INVALID: " << e.what() << '\n';
    return exit_refuted;
  }
  const auto outcome = verify_certificate(doc, ScanOptions{common.jobs});
  std::cerr << (outcome.ok ? "valid" : "INVALID") << (outcome.type.empty() ? "" : " " + outcome.type) << ": "
            << outcome.message << '\n';
  return outcome.ok ? exit_ok : exit_refuted;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"spacing-lab: spacing shifts, counterexample constructions and transitivity certificates"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--jobs,-j", common.jobs, "Worker threads for horizon scans (0 = all cores)");

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a spacing set: blocks, lemma or staged");
  build_cmd->add_option("kind", build.kind, "blocks | lemma | staged")->required();
  build_cmd->add_option("--m", build.m, "Block family base m >= 2");
  build_cmd->add_option("--M", build.M, "Dispersion bound M >= 3");
  build_cmd->add_option("--N", build.N, "Number of word pairs per scenario");
  build_cmd->add_option("--A", build.A, "Initial set A, e.g. 3 or 3,7");
  build_cmd->add_option("--stages", build.stages, "Number of extension stages");
  build_cmd->add_option("--convention", build.convention, "Stage pair count: at-least-one (N = max(n,1)) | literal (N = n)");
  build_cmd->add_option("--out,-o", common.out, "Write JSON here instead of stdout");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a set property and print a JSON report");
  check_cmd->add_option("property", check.property,
                        "thick | complement-thick | weak-mixing | syndetic | dispersed | not-mp")
      ->required();
  check_cmd->add_option("--set", check.set, "blocks:M, explicit:LIST or a JSON file");
  check_cmd->add_option("--stage", check.stage, "Use one stage of a staged set");
  check_cmd->add_option("--horizon", check.horizon, "Scan [1, horizon]");
  check_cmd->add_option("--run-target", check.params.run_target, "Run length sought");
  check_cmd->add_option("--m", check.params.m, "Block base for not-mp");
  check_cmd->add_option("--q", check.params.q, "Dispersion bound");
  check_cmd->add_option("--L", check.params.bound, "Syndeticity bound");
  check_cmd->add_option("--out,-o", common.out, "Write JSON here instead of stdout");

  WitnessArgs witness;
  auto* witness_cmd = app.add_subcommand("witness", "Search for a transitivity witness");
  witness_cmd->add_option("mode", witness.mode, "hitting | product | multi | delta | nested | refute-product");
  witness_cmd->add_option("--set", witness.set, "blocks:M, explicit:LIST or a JSON file");
  witness_cmd->add_option("--stage", witness.stage, "Use one stage of a staged set");
  witness_cmd->add_option("--horizon", witness.horizon, "Search n in [1, horizon]");
  witness_cmd->add_option("--exponents", witness.exponents, "Product exponents, e.g. 1,2");
  witness_cmd->add_option("--u", witness.u, "Source pattern(s)");
  witness_cmd->add_option("--v", witness.v, "Target pattern(s)");
  witness_cmd->add_option("--pairs", witness.pairs, "u/v pairs for multi, e.g. 100000001/100000001");
  witness_cmd->add_option("--m", witness.m, "Number of coordinates (multi, delta, nested)");
  witness_cmd->add_option("--depth", witness.depth, "Refinement depth (nested)");
  witness_cmd->add_option("--query", witness.query, "Query or report JSON instead of flags");
  witness_cmd->add_flag("--all", witness.all, "List every hit instead of the smallest (hitting, product)");
  witness_cmd->add_option("--out,-o", common.out, "Write JSON here instead of stdout");

  std::string certificate;
  auto* verify_cmd = app.add_subcommand("verify", "Re-validate a certificate; exit 0 iff every claim holds");
  verify_cmd->add_option("file", certificate, "Certificate JSON")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_error;
  }

  try {
    if (*build_cmd)
      return run_build(build, common);
    if (*check_cmd)
      return run_check_command(check, common);
    if (*witness_cmd) {
      if (witness.mode.empty() && witness.query.empty())
        throw std::invalid_argument("witness needs a mode or --query");
      return run_witness(witness, common);
    }
    if (*verify_cmd)
      return run_verify(certificate, common);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return exit_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_error;
  }
  return exit_error;
}
