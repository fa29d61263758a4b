#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spacing/constructions.hpp"
#include "spacing/language.hpp"
#include "spacing/serialize.hpp"
#include "spacing/set_verdicts.hpp"
#include "spacing/transitivity.hpp"

namespace spacing {

struct CheckParams {
  std::optional<std::uint64_t> horizon;
  std::optional<std::uint64_t> run_target;
  std::optional<std::uint64_t> m;
  std::optional<std::uint64_t> q;
  std::optional<std::uint64_t> bound; ///< syndeticity bound L

  friend bool operator==(const CheckParams&, const CheckParams&) = default;
};

/// Outcome of one set-level property check.
struct CheckReport {
  std::string property;
  std::optional<SpacingSet> set;
  CheckParams params;
  HorizonVerdict verdict;
};

namespace detail {

inline std::uint64_t need(const std::optional<std::uint64_t>& v, const char* name)
{
  if (!v)
    throw std::invalid_argument(std::string("missing parameter --") + name);
  return *v;
}

inline const SpacingSet& need(const std::optional<SpacingSet>& s)
{
  if (!s)
    throw std::invalid_argument("missing spacing set");
  return *s;
}

} // namespace detail

/// Runs `property` ∈ {thick, complement-thick, weak-mixing, syndetic, dispersed, not-mp}.
inline CheckReport run_check(const std::string& property, std::optional<SpacingSet> set, const CheckParams& params,
                             const ScanOptions& options = {})
{
  using detail::need;
  CheckReport r{property, std::move(set), params, {}};
  if (property == "thick") {
    r.verdict = thickness_verdict(need(r.set), need(params.horizon, "horizon"), need(params.run_target, "run-target"));
  } else if (property == "complement-thick") {
    r.verdict = complement_thickness_verdict(need(r.set), need(params.horizon, "horizon"),
                                             need(params.run_target, "run-target"));
  } else if (property == "weak-mixing") {
    r.verdict = weak_mixing_verdict(need(r.set), need(params.horizon, "horizon"), need(params.run_target, "run-target"));
  } else if (property == "syndetic") {
    const auto s = syndeticity_verdict(need(r.set), need(params.horizon, "horizon"), params.bound);
    r.verdict = s.verdict ? *s.verdict
                          : HorizonVerdict::verified(*params.horizon, Certificate{"max-gap", {s.max_gap}});
  } else if (property == "dispersed") {
    const auto* finite = need(r.set).finite_view();
    if (finite == nullptr)
      throw std::invalid_argument("dispersedness is defined for finite sets only");
    const auto q = need(params.q, "q");
    if (auto d = is_q_dispersed(*finite, q); d)
      r.verdict = HorizonVerdict::proven("exhaustive-finite", Certificate{"q", {q}});
    else
      r.verdict = HorizonVerdict::refuted(Certificate{"pair", {d.failing->first, d.failing->second}});
  } else if (property == "not-mp") {
    const auto m = need(params.m, "m");
    r.set = block_family(m);
    r.verdict = verify_not_mp(m, need(params.horizon, "horizon"), options);
  } else {
    throw std::invalid_argument("unknown property '" + property + "'");
  }
  return r;
}

namespace io {

inline json to_json(const CheckParams& p)
{
  json j = json::object();
  auto put = [&](const char* key, const std::optional<std::uint64_t>& v) {
    if (v)
      j[key] = *v;
  };
  put("horizon", p.horizon);
  put("run_target", p.run_target);
  put("m", p.m);
  put("q", p.q);
  put("L", p.bound);
  return j;
}

inline CheckParams check_params_from(const json& j)
{
  if (!j.is_object())
    throw FormatError("check params must be an object");
  CheckParams p;
  for (const auto& [key, value] : j.items()) {
    const auto v = u64_from(value);
    if (key == "horizon")
      p.horizon = v;
    else if (key == "run_target")
      p.run_target = v;
    else if (key == "m")
      p.m = v;
    else if (key == "q")
      p.q = v;
    else if (key == "L")
      p.bound = v;
    else
      throw FormatError("unknown check parameter '" + key + "'");
  }
  return p;
}

inline json to_json(const CheckReport& r)
{
  return stamp({{"type", "check"},
                {"property", r.property},
                {"set", r.set ? to_json(*r.set) : json(nullptr)},
                {"params", to_json(r.params)},
                {"verdict", to_json(r.verdict)}});
}

inline CheckReport check_from(const json& j)
{
  check_schema(j);
  if (field(j, "type") != "check")
    throw FormatError("not a check report");
  CheckReport r;
  r.property = field(j, "property").get<std::string>();
  if (!field(j, "set").is_null())
    r.set = set_from(j.at("set"));
  r.params = check_params_from(field(j, "params"));
  r.verdict = verdict_from(field(j, "verdict"));
  return r;
}

} // namespace io

/// Independent re-validation of a lemma transcript from its raw data.
/// Returns the first failing claim, or nullopt when every claim holds.
inline std::optional<std::string> check_lemma_transcript(const LemmaOutput& t,
                                                         std::uint64_t language_guard = default_language_guard)
{
  if (t.M < 3)
    return "M must be at least 3";
  if (t.A.empty())
    return "A is empty";
  if (!is_q_dispersed(t.A, t.M))
    return "A is not M-dispersed";
  if (t.k != t.A.max() + 1)
    return "k differs from max A + 1";
  if (t.degenerate != (t.N == 0))
    return "degenerate flag inconsistent with N";
  if (t.N == 0) {
    if (!t.scenarios.empty() || t.scenario_count != 0 || !(t.B == t.A))
      return "degenerate transcript must have no scenarios and B = A";
    return std::nullopt;
  }
  if (t.k > language_guard)
    return "k exceeds the language guard; transcript cannot be re-checked";
  const auto k = static_cast<std::uint64_t>(t.k);
  const SpacingSet A(t.A);
  const SpacingSet B(t.B);
  const auto words = enumerate_language(A, k, language_guard);
  if (t.scenario_count != pow(BigInt(words.size()), 2 * t.N))
    return "scenario count differs from |L_k(A)|^(2N)";
  if (BigInt(t.scenarios.size()) != t.scenario_count)
    return "number of listed scenarios differs from the scenario count";

  std::vector<BigInt> expected = t.A.elements();
  std::vector<std::pair<BigInt, BigInt>> windows;
  const BigInt growth = t.N + 1;
  BigInt factor = 1;
  for (std::size_t j = 0; j < t.scenarios.size(); ++j) {
    const auto& s = t.scenarios[j];
    const auto where = "scenario " + std::to_string(j + 1) + ": ";
    if (s.pairs != scenario_tuple(j, t.N, words))
      return where + "word pairs are not the canonical tuple";
    if (j > 0)
      factor *= growth; // (N+1)^j
    if (j == 0 ? s.l < 2 * t.k + t.M - 1 : s.l < factor * t.scenarios[j - 1].l)
      return where + "gap length l violates its lower bound";
    if (s.witnesses.size() != t.N)
      return where + "wrong number of witness words";
    for (std::uint64_t i = 1; i <= t.N; ++i) {
      const auto& w = s.witnesses[i - 1];
      const auto& [u, v] = s.pairs[i - 1];
      if (!(w == concat_with_gap(u, s.l * i - t.k, v)))
        return where + "witness word " + std::to_string(i) + " is not u 0^(i l - k) v";
      if (!is_admissible(w, B))
        return where + "witness word " + std::to_string(i) + " is not B-admissible";
      const auto window = spacing_window(i, s.l, t.k);
      for (const auto& d : spacing_set_of(w)) {
        expected.push_back(d);
        if (!t.A.contains(d) && (d < window.first || d > window.second))
          return where + "new spacing " + to_decimal(d) + " outside its window";
      }
      windows.push_back(window);
    }
  }
  if (!(ExplicitSet::from_unsorted(std::move(expected)) == t.B))
    return "B is not A together with the spacings of the witness words";
  std::sort(windows.begin(), windows.end());
  for (std::size_t w = 1; w < windows.size(); ++w)
    if (windows[w].first <= windows[w - 1].second)
      return "spacing windows overlap";
  if (auto d = is_q_dispersed(t.B, t.M); !d)
    return "B is not M-dispersed at (" + to_decimal(d.failing->first) + ", " + to_decimal(d.failing->second) + ")";
  for (const auto& b : t.B.elements())
    if (!t.A.contains(b) && b < t.scenarios.front().l - t.k + 1)
      return "min(B \\ A) below l_1 - k + 1";
  if (auto sep = language_equal_up_to(A, B, k, language_guard))
    return "L_k(B) differs from L_k(A)";
  return std::nullopt;
}

inline std::optional<std::string> check_staged(const StagedConstruction& s)
{
  if (s.stages.empty() || !(s.stages.front() == ExplicitSet::from_sorted({BigInt(s.M)})))
    return "stage 0 must be {M}";
  if (s.transcripts.size() + 1 != s.stages.size())
    return "need exactly one transcript per stage after the first";
  for (std::size_t n = 0; n < s.transcripts.size(); ++n) {
    const auto& t = s.transcripts[n];
    const auto where = "stage " + std::to_string(n + 1) + ": ";
    if (!(t.A == s.stages[n]) || !(t.B == s.stages[n + 1]))
      return where + "transcript does not link consecutive stages";
    if (t.M != s.M || t.N != pairs_for_stage(n, s.convention))
      return where + "transcript parameters do not match the stage convention";
    if (auto failure = check_lemma_transcript(t))
      return where + *failure;
  }
  if (s.convention == StageConvention::AtLeastOne && !StagedUnion(s.stages).strictly_increasing())
    return "stages do not increase strictly";
  return std::nullopt;
}

/// Claims in a witness report that can be checked without searching.
inline std::optional<std::string> check_witness_claims(const WitnessReport& r)
{
  const auto& q = r.query;
  if (r.witness.has_value() != (r.verdict.status != Status::Refuted))
    return "verdict disagrees with the presence of a witness";
  if (!r.witness)
    return r.merged.empty() ? std::nullopt : std::optional<std::string>("refuted report lists merged patterns");
  const BigInt n = *r.witness;
  if (r.mode == "delta") {
    if (r.merged.size() != 1)
      return "delta witness must carry one combined pattern";
    const auto& p = r.merged.front();
    if (!pattern_nonempty(p, q.set) || !p.refines(q.sources.front()))
      return "combined pattern is empty or misses U";
    for (std::size_t i = 0; i < q.targets.size(); ++i)
      if (!p.refines(shift(q.targets[i], n * (i + 1))))
        return "combined pattern misses V_" + std::to_string(i + 1);
    return std::nullopt;
  }
  if (r.merged.size() != q.exponents.size())
    return "one merged pattern per coordinate expected";
  for (std::size_t i = 0; i < r.merged.size(); ++i) {
    const auto& p = r.merged[i];
    if (!pattern_nonempty(p, q.set))
      return "merged pattern " + std::to_string(i + 1) + " is not admissible";
    if (!p.refines(q.sources[i]) || !p.refines(shift(q.targets[i], n * q.exponents[i])))
      return "merged pattern " + std::to_string(i + 1) + " does not contain U_i and the shifted V_i";
  }
  return std::nullopt;
}

struct VerifyOutcome {
  bool ok = false;
  std::string type;
  std::string message;
};

/// Re-validates any emitted certificate. Cheap-to-recompute reports are additionally
/// re-run and must match field for field.
inline VerifyOutcome verify_certificate(const io::json& doc, const ScanOptions& options = {})
{
  VerifyOutcome out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.message = std::move(why);
    return out;
  };
  try {
    io::check_schema(doc);
    out.type = io::field(doc, "type").get<std::string>();
    io::check_checksum(doc);
    if (out.type == "lemma") {
      const auto t = io::lemma_from(doc);
      if (auto failure = check_lemma_transcript(t))
        return fail(*failure);
      if (io::to_json(t) != doc)
        return fail("transcript is not in canonical form");
    } else if (out.type == "staged") {
      const auto s = io::staged_from(doc);
      if (auto failure = check_staged(s))
        return fail(*failure);
      if (io::to_json(s) != doc)
        return fail("staged construction is not in canonical form");
    } else if (out.type == "check") {
      const auto r = io::check_from(doc);
      const auto again = run_check(r.property, r.set, r.params, options);
      if (!(again.verdict == r.verdict))
        return fail("recomputed verdict differs from the recorded one");
      if (io::to_json(again) != doc)
        return fail("recomputed report differs from the recorded one");
    } else if (out.type == "witness") {
      const auto r = io::witness_from(doc);
      if (auto failure = check_witness_claims(r))
        return fail(*failure);
      if (io::to_json(rerun_witness(r, options)) != doc)
        return fail("rescan over the horizon disagrees with the report");
    } else if (out.type == "hits") {
      const auto q = io::query_from(io::field(doc, "query"));
      const auto hits = io::u64s_from(io::field(doc, "hits"));
      for (auto n : hits)
        if (n == 0 || n > q.horizon || !product_hit_at(q, n))
          return fail("listed time " + std::to_string(n) + " is not a hit");
      if (io::hits_document(q, product_hitting(q, options)) != doc)
        return fail("rescan over the horizon disagrees with the listed hits");
    } else if (out.type == "refutation") {
      const auto r = io::refutation_from(doc);
      if (r.query.set.as_blocks() == nullptr)
        return fail("refutation applies to block families only");
      const auto again = refute_product_transitivity(r.query.set, r.query.horizon, options);
      if (io::to_json(again) != doc)
        return fail("rescan over the horizon disagrees with the report");
    } else if (out.type == "refinement") {
      const auto set = io::set_from(io::field(doc, "set"));
      const auto r = io::refinement_from(doc);
      if (auto failure = check_refinement(r, set))
        return fail(*failure);
      const auto depth = io::u64_from(io::field(doc, "depth"));
      const auto horizon = io::u64_from(io::field(doc, "horizon"));
      const auto again = nested_refinement(set, r.targets, depth, horizon, options);
      if (io::to_json(again, set, depth, horizon) != doc)
        return fail("recomputed refinement differs from the recorded one");
    } else {
      return fail("unknown certificate type '" + out.type + "'");
    }
  } catch (const std::exception& e) {
    return fail(std::string("malformed certificate: ") + e.what());
  }
  out.ok = true;
  out.message = "all claims re-validated";
  return out;
}

} // namespace spacing
