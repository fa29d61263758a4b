#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/crc.hpp>
#include <nlohmann/json.hpp>

#include "spacing/bigint.hpp"
#include "spacing/constructions.hpp"
#include "spacing/spacing_set.hpp"
#include "spacing/transitivity.hpp"
#include "spacing/verdict.hpp"
#include "spacing/word.hpp"

// Canonical JSON forms. Object keys are sorted (nlohmann's default map), bignums are
// decimal strings, and every top-level document carries "schema": "v1". Typed documents
// (those with a "type") also carry "checksum": the CRC-32 of their compact dump without it.
namespace spacing::io {

using json = nlohmann::json;

inline constexpr const char* schema_version = "v1";

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline const json& field(const json& j, const char* key)
{
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline void check_schema(const json& j)
{
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != schema_version)
    throw FormatError("missing or unsupported schema version");
}

inline std::string checksum_of(json j)
{
  j.erase("checksum");
  const auto text = j.dump();
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  char hex[9];
  std::snprintf(hex, sizeof hex, "%08x", static_cast<unsigned>(crc.checksum()));
  return hex;
}

/// Throws FormatError unless the recorded checksum matches the content.
inline void check_checksum(const json& j)
{
  const auto& recorded = field(j, "checksum");
  if (!recorded.is_string() || recorded.get<std::string>() != checksum_of(j))
    throw FormatError("checksum mismatch");
}

inline json stamp(json j)
{
  j["schema"] = schema_version;
  if (j.contains("type"))
    j["checksum"] = checksum_of(j);
  return j;
}

inline json big(const BigInt& v) { return to_decimal(v); }

inline BigInt big_from(const json& j)
{
  if (!j.is_string())
    throw FormatError("expected a decimal string, got " + j.dump());
  try {
    return parse_decimal(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline std::uint64_t u64_from(const json& j)
{
  if (!j.is_number_unsigned())
    throw FormatError("expected a nonnegative integer, got " + j.dump());
  return j.get<std::uint64_t>();
}

inline json bigs(const std::vector<BigInt>& vs)
{
  json a = json::array();
  for (const auto& v : vs)
    a.push_back(big(v));
  return a;
}

inline std::vector<BigInt> bigs_from(const json& j)
{
  if (!j.is_array())
    throw FormatError("expected an array of decimal strings");
  std::vector<BigInt> out;
  for (const auto& v : j)
    out.push_back(big_from(v));
  return out;
}

inline json u64s(const std::vector<std::uint64_t>& vs) { return json(vs); }

inline std::vector<std::uint64_t> u64s_from(const json& j)
{
  if (!j.is_array())
    throw FormatError("expected an array of integers");
  std::vector<std::uint64_t> out;
  for (const auto& v : j)
    out.push_back(u64_from(v));
  return out;
}

// ---- words and patterns

inline json to_json(const Word& w) { return {{"len", big(w.length())}, {"support", bigs(w.support())}}; }

inline Word word_from(const json& j)
{
  try {
    return Word(big_from(field(j, "len")), bigs_from(field(j, "support")));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline json to_json(const PartialPattern& p)
{
  std::vector<BigInt> ones;
  std::vector<BigInt> zeros;
  for (const auto& [pos, sym] : p.constraints())
    (sym ? ones : zeros).push_back(pos);
  return {{"ones", bigs(ones)}, {"zeros", bigs(zeros)}};
}

inline PartialPattern pattern_from(const json& j)
{
  PartialPattern::Constraints c;
  for (const auto& p : bigs_from(field(j, "zeros")))
    c.emplace(p, false);
  for (const auto& p : bigs_from(field(j, "ones")))
    if (!c.emplace(p, true).second)
      throw FormatError("pattern position " + to_decimal(p) + " is both 0 and 1");
  return PartialPattern(std::move(c));
}

inline json patterns(const std::vector<PartialPattern>& ps)
{
  json a = json::array();
  for (const auto& p : ps)
    a.push_back(to_json(p));
  return a;
}

inline std::vector<PartialPattern> patterns_from(const json& j)
{
  if (!j.is_array())
    throw FormatError("expected an array of patterns");
  std::vector<PartialPattern> out;
  for (const auto& p : j)
    out.push_back(pattern_from(p));
  return out;
}

// ---- spacing sets

inline ExplicitSet explicit_from(const json& j)
{
  auto values = bigs_from(j);
  try {
    return ExplicitSet::from_sorted(std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

/// {"kind":"explicit","elements":[...]} | {"kind":"blocks","m":2} | {"kind":"staged","stages":[[...],...]}
inline json to_json(const SpacingSet& set)
{
  if (const auto* b = set.as_blocks())
    return stamp({{"kind", "blocks"}, {"m", b->m}});
  if (const auto* e = set.as_explicit())
    return stamp({{"kind", "explicit"}, {"elements", bigs(e->elements())}});
  json stages = json::array();
  for (const auto& s : set.as_staged()->stages())
    stages.push_back(bigs(s.elements()));
  return stamp({{"kind", "staged"}, {"stages", stages}});
}

inline SpacingSet set_from(const json& j)
{
  check_schema(j);
  const auto kind = field(j, "kind");
  try {
    if (kind == "blocks")
      return BlockFamily{u64_from(field(j, "m"))};
    if (kind == "explicit")
      return explicit_from(field(j, "elements"));
    if (kind == "staged") {
      std::vector<ExplicitSet> stages;
      for (const auto& s : field(j, "stages"))
        stages.push_back(explicit_from(s));
      return StagedUnion(std::move(stages));
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown spacing-set kind " + kind.dump());
}

// ---- verdicts

inline json to_json(const HorizonVerdict& v)
{
  json j = {{"status", to_string(v.status)}};
  j["horizon"] = v.horizon ? json(*v.horizon) : json(nullptr);
  j["structural"] = v.structural ? json(*v.structural) : json(nullptr);
  j["certificate"] =
      v.certificate ? json{{"tag", v.certificate->tag}, {"values", bigs(v.certificate->values)}} : json(nullptr);
  return j;
}

inline HorizonVerdict verdict_from(const json& j)
{
  HorizonVerdict v;
  const auto status = field(j, "status");
  if (status == "proven")
    v.status = Status::Proven;
  else if (status == "verified")
    v.status = Status::VerifiedUpToHorizon;
  else if (status == "refuted")
    v.status = Status::Refuted;
  else
    throw FormatError("unknown verdict status " + status.dump());
  if (!field(j, "horizon").is_null())
    v.horizon = u64_from(j.at("horizon"));
  if (!field(j, "structural").is_null())
    v.structural = field(j, "structural").get<std::string>();
  if (const auto& c = field(j, "certificate"); !c.is_null())
    v.certificate = Certificate{field(c, "tag").get<std::string>(), bigs_from(field(c, "values"))};
  return v;
}

// ---- constructions

inline json to_json(const LemmaOutput& out)
{
  json scenarios = json::array();
  for (const auto& s : out.scenarios) {
    json pairs = json::array();
    for (const auto& [u, v] : s.pairs)
      pairs.push_back({{"u", to_json(u)}, {"v", to_json(v)}});
    json witnesses = json::array();
    for (const auto& w : s.witnesses)
      witnesses.push_back(to_json(w));
    scenarios.push_back({{"pairs", pairs}, {"l", big(s.l)}, {"witnesses", witnesses}});
  }
  return stamp({{"type", "lemma"},
                {"A", bigs(out.A.elements())},
                {"M", out.M},
                {"N", out.N},
                {"k", big(out.k)},
                {"degenerate", out.degenerate},
                {"scenario_count", big(out.scenario_count)},
                {"scenarios", scenarios},
                {"B", bigs(out.B.elements())}});
}

inline LemmaOutput lemma_from(const json& j)
{
  check_schema(j);
  if (field(j, "type") != "lemma")
    throw FormatError("not a lemma transcript");
  LemmaOutput out;
  out.A = explicit_from(field(j, "A"));
  out.M = u64_from(field(j, "M"));
  out.N = u64_from(field(j, "N"));
  out.k = big_from(field(j, "k"));
  if (!field(j, "degenerate").is_boolean())
    throw FormatError("'degenerate' must be a boolean");
  out.degenerate = j.at("degenerate").get<bool>();
  out.scenario_count = big_from(field(j, "scenario_count"));
  for (const auto& s : field(j, "scenarios")) {
    Scenario sc;
    for (const auto& p : field(s, "pairs"))
      sc.pairs.emplace_back(word_from(field(p, "u")), word_from(field(p, "v")));
    sc.l = big_from(field(s, "l"));
    for (const auto& w : field(s, "witnesses"))
      sc.witnesses.push_back(word_from(w));
    out.scenarios.push_back(std::move(sc));
  }
  out.B = explicit_from(field(j, "B"));
  return out;
}

inline json to_json(const StagedConstruction& s)
{
  json transcripts = json::array();
  for (const auto& t : s.transcripts)
    transcripts.push_back(to_json(t));
  return stamp({{"type", "staged"},
                {"M", s.M},
                {"convention", to_string(s.convention)},
                {"descriptor", to_json(s.spacing_set())},
                {"transcripts", transcripts}});
}

inline StagedConstruction staged_from(const json& j)
{
  check_schema(j);
  if (field(j, "type") != "staged")
    throw FormatError("not a staged construction");
  StagedConstruction s;
  s.M = u64_from(field(j, "M"));
  const auto convention = field(j, "convention");
  if (convention == "literal")
    s.convention = StageConvention::Literal;
  else if (convention == "at-least-one")
    s.convention = StageConvention::AtLeastOne;
  else
    throw FormatError("unknown stage convention " + convention.dump());
  const auto set = set_from(field(j, "descriptor"));
  if (set.as_staged() == nullptr)
    throw FormatError("staged construction descriptor must be of kind 'staged'");
  s.stages = set.as_staged()->stages();
  for (const auto& t : field(j, "transcripts"))
    s.transcripts.push_back(lemma_from(t));
  return s;
}

// ---- transitivity reports

inline json to_json(const ProductQuery& q)
{
  return {{"set", to_json(q.set)},
          {"exponents", u64s(q.exponents)},
          {"sources", patterns(q.sources)},
          {"targets", patterns(q.targets)},
          {"horizon", q.horizon}};
}

inline ProductQuery query_from(const json& j)
{
  ProductQuery q{set_from(field(j, "set")), u64s_from(field(j, "exponents")), patterns_from(field(j, "sources")),
                 patterns_from(field(j, "targets")), u64_from(field(j, "horizon"))};
  try {
    q.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return q;
}

inline json to_json(const WitnessReport& r)
{
  return stamp({{"type", "witness"},
                {"mode", r.mode},
                {"query", to_json(r.query)},
                {"witness", r.witness ? json(*r.witness) : json(nullptr)},
                {"merged", patterns(r.merged)},
                {"verdict", to_json(r.verdict)}});
}

inline WitnessReport witness_from(const json& j)
{
  check_schema(j);
  if (field(j, "type") != "witness")
    throw FormatError("not a witness report");
  WitnessReport r;
  r.mode = field(j, "mode").get<std::string>();
  r.query = query_from(field(j, "query"));
  if (!field(j, "witness").is_null())
    r.witness = u64_from(j.at("witness"));
  r.merged = patterns_from(field(j, "merged"));
  r.verdict = verdict_from(field(j, "verdict"));
  return r;
}

/// Full hitting set of a product query (the collect-everything counterpart of a witness report).
inline json hits_document(const ProductQuery& q, const std::vector<std::uint64_t>& hits)
{
  return stamp({{"type", "hits"}, {"query", to_json(q)}, {"hits", u64s(hits)}});
}

inline json to_json(const RefutationReport& r)
{
  return stamp({{"type", "refutation"},
                {"m", r.m},
                {"query", to_json(r.query)},
                {"hits", u64s(r.hits)},
                {"not_mp", to_json(r.not_mp)},
                {"verdict", to_json(r.verdict)}});
}

inline RefutationReport refutation_from(const json& j)
{
  check_schema(j);
  if (field(j, "type") != "refutation")
    throw FormatError("not a refutation report");
  return {u64_from(field(j, "m")), query_from(field(j, "query")), u64s_from(field(j, "hits")),
          verdict_from(field(j, "not_mp")), verdict_from(field(j, "verdict"))};
}

inline json to_json(const NestedRefinement& r, const SpacingSet& set, std::uint64_t depth, std::uint64_t horizon)
{
  json refined = json::array();
  for (const auto& step : r.refined)
    refined.push_back(patterns(step));
  return stamp({{"type", "refinement"},
                {"set", to_json(set)},
                {"depth", depth},
                {"horizon", horizon},
                {"targets", patterns(r.targets)},
                {"times", u64s(r.times)},
                {"refined", refined},
                {"failed_step", r.failed_step ? json(*r.failed_step) : json(nullptr)},
                {"verdict", to_json(r.verdict)}});
}

inline NestedRefinement refinement_from(const json& j)
{
  check_schema(j);
  if (field(j, "type") != "refinement")
    throw FormatError("not a refinement transcript");
  NestedRefinement r;
  r.targets = patterns_from(field(j, "targets"));
  r.times = u64s_from(field(j, "times"));
  for (const auto& step : field(j, "refined"))
    r.refined.push_back(patterns_from(step));
  if (!field(j, "failed_step").is_null())
    r.failed_step = u64_from(j.at("failed_step"));
  r.verdict = verdict_from(field(j, "verdict"));
  return r;
}

} // namespace spacing::io
