#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spacing/bigint.hpp"
#include "spacing/constructions.hpp"
#include "spacing/parallel_scan.hpp"
#include "spacing/set_verdicts.hpp"
#include "spacing/spacing_set.hpp"
#include "spacing/verdict.hpp"
#include "spacing/word.hpp"

namespace spacing {

/// Transitivity query for σ^(e_1) × ... × σ^(e_r) on Σ_P: is there n in [1, horizon]
/// with σ^(e_i n)(U_i) ∩ V_i ≠ ∅ for every coordinate i?
struct ProductQuery {
  SpacingSet set = BlockFamily{2};
  std::vector<std::uint64_t> exponents;
  std::vector<PartialPattern> sources;
  std::vector<PartialPattern> targets;
  std::uint64_t horizon = 1;

  void validate() const
  {
    if (exponents.empty())
      throw std::invalid_argument("product query needs at least one coordinate");
    if (sources.size() != exponents.size() || targets.size() != exponents.size())
      throw std::invalid_argument("product query needs one source and one target pattern per exponent");
    for (auto e : exponents)
      if (e == 0)
        throw std::invalid_argument("exponents must be positive");
    if (horizon == 0)
      throw std::invalid_argument("horizon must be positive");
  }

  friend bool operator==(const ProductQuery&, const ProductQuery&) = default;
};

/// f^(*m) = f × f^2 × ... × f^m applied to the pairs (U_i, V_i).
inline ProductQuery staircase_query(SpacingSet set, const std::vector<PartialPattern>& sources,
                                    const std::vector<PartialPattern>& targets, std::uint64_t horizon)
{
  ProductQuery q{std::move(set), {}, sources, targets, horizon};
  for (std::uint64_t i = 1; i <= sources.size(); ++i)
    q.exponents.push_back(i);
  return q;
}

/// N(U, V) ∩ [1, horizon]: n with U ∩ σ^(-n) V nonempty in Σ_P.
inline std::vector<std::uint64_t> hitting_times(const PartialPattern& source, const PartialPattern& target,
                                                const SpacingSet& set, std::uint64_t horizon,
                                                const ScanOptions& options = {})
{
  return collect_hits(
      1, horizon, [&](std::uint64_t n) { return intersect(source, shift(target, n), set).has_value(); }, options);
}

/// Per-coordinate merged patterns at time n, or nullopt if some coordinate is empty.
inline std::optional<std::vector<PartialPattern>> product_hit_at(const ProductQuery& q, std::uint64_t n)
{
  std::vector<PartialPattern> merged;
  merged.reserve(q.exponents.size());
  for (std::size_t i = 0; i < q.exponents.size(); ++i) {
    auto m = intersect(q.sources[i], shift(q.targets[i], BigInt(q.exponents[i]) * n), q.set);
    if (!m)
      return std::nullopt;
    merged.push_back(std::move(*m));
  }
  return merged;
}

/// Hitting set of the product map, merging each coordinate at its own time e_i·n.
inline std::vector<std::uint64_t> product_hitting(const ProductQuery& q, const ScanOptions& options = {})
{
  q.validate();
  return collect_hits(1, q.horizon, [&](std::uint64_t n) { return product_hit_at(q, n).has_value(); }, options);
}

/// Same set computed as ⋂_i {n : e_i·n ∈ N(U_i, V_i)}.
inline std::vector<std::uint64_t> product_hitting_by_coordinates(const ProductQuery& q, const ScanOptions& options = {})
{
  q.validate();
  std::vector<std::uint64_t> result;
  for (std::uint64_t n = 1; n <= q.horizon; ++n)
    result.push_back(n);
  for (std::size_t i = 0; i < q.exponents.size() && !result.empty(); ++i) {
    const auto e = q.exponents[i];
    const auto times = hitting_times(q.sources[i], q.targets[i], q.set, e * q.horizon, options);
    const std::set<std::uint64_t> hits(times.begin(), times.end());
    std::erase_if(result, [&](std::uint64_t n) { return !hits.contains(e * n); });
  }
  return result;
}

/// Evidence produced by a witness search.
struct WitnessReport {
  std::string mode; ///< hitting | product | multi | delta
  ProductQuery query;
  std::optional<std::uint64_t> witness;
  std::vector<PartialPattern> merged; ///< per coordinate (one combined pattern for delta)
  HorizonVerdict verdict;

  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

namespace detail {

inline bool shares_one(const PartialPattern& a, const PartialPattern& b)
{
  for (const auto& [pos, sym] : a.constraints()) {
    if (!sym)
      continue;
    auto it = b.constraints().find(pos);
    if (it != b.constraints().end() && it->second)
      return true;
  }
  return false;
}

// Some coordinate pair (i, j) with e_j = b·e_i whose source and target both force a 1 at a common
// position: a hit would need e_i·n and b·e_i·n in P(b).
inline bool product_excluded_by_not_mp(const ProductQuery& q)
{
  const auto* blocks = q.set.as_blocks();
  if (blocks == nullptr)
    return false;
  for (std::size_t i = 0; i < q.exponents.size(); ++i) {
    if (!shares_one(q.sources[i], q.targets[i]))
      continue;
    for (std::size_t j = 0; j < q.exponents.size(); ++j)
      if (q.exponents[j] == blocks->m * q.exponents[i] && shares_one(q.sources[j], q.targets[j]))
        return true;
  }
  return false;
}

inline PartialPattern ones_common(const PartialPattern& a, const PartialPattern& b)
{
  PartialPattern::Constraints c;
  for (const auto& [pos, sym] : a.constraints()) {
    auto it = b.constraints().find(pos);
    if (sym && it != b.constraints().end() && it->second)
      c.emplace(pos, true);
  }
  return PartialPattern(std::move(c));
}

// U, V_a and V_(a·b) force a 1 at one common position c: a hit needs a·n and a·b·n in P(b).
inline bool delta_excluded_by_not_mp(const SpacingSet& set, const PartialPattern& source,
                                     const std::vector<PartialPattern>& targets)
{
  const auto* blocks = set.as_blocks();
  if (blocks == nullptr)
    return false;
  for (std::uint64_t a = 1; a * blocks->m <= targets.size(); ++a) {
    const auto common = ones_common(source, targets[a - 1]);
    if (shares_one(common, targets[a * blocks->m - 1]))
      return true;
  }
  return false;
}

inline HorizonVerdict witness_verdict(std::uint64_t n)
{
  return HorizonVerdict::proven("explicit-witness", Certificate{"witness", {n}});
}

inline HorizonVerdict no_witness_verdict(std::uint64_t horizon, bool not_mp)
{
  auto v = HorizonVerdict::refuted(Certificate{"empty-scan", {horizon}}, horizon);
  if (not_mp)
    v.structural = "not-mp";
  return v;
}

} // namespace detail

/// Smallest n in [lo, horizon] at which every coordinate of the product query hits.
inline std::optional<std::uint64_t> product_first_hit(const ProductQuery& q, std::uint64_t lo,
                                                      const ScanOptions& options = {})
{
  q.validate();
  return first_hit(lo, q.horizon, [&](std::uint64_t n) { return product_hit_at(q, n).has_value(); }, options);
}

inline WitnessReport product_witness(const ProductQuery& q, const ScanOptions& options = {},
                                     std::string mode = "product")
{
  WitnessReport report{std::move(mode), q, std::nullopt, {}, {}};
  report.witness = product_first_hit(q, 1, options);
  if (report.witness) {
    report.merged = *product_hit_at(q, *report.witness);
    report.verdict = detail::witness_verdict(*report.witness);
  } else {
    report.verdict = detail::no_witness_verdict(q.horizon, detail::product_excluded_by_not_mp(q));
  }
  return report;
}

/// Smallest n with σ^(in)[u_i] ∩ [v_i] ≠ ∅ for i = 1..m (the map σ × σ^2 × ... × σ^m).
inline WitnessReport multi_transitivity_witness(const SpacingSet& set, const std::vector<PartialPattern>& sources,
                                                const std::vector<PartialPattern>& targets, std::uint64_t horizon,
                                                const ScanOptions& options = {})
{
  return product_witness(staircase_query(set, sources, targets, horizon), options, "multi");
}

/// Single combined pattern U ∪ σ^(-n)V_1 ∪ ... ∪ σ^(-mn)V_m at time n, if nonempty.
inline std::optional<PartialPattern> delta_pattern_at(const SpacingSet& set, const PartialPattern& source,
                                                      const std::vector<PartialPattern>& targets, std::uint64_t n)
{
  PartialPattern combined = source;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto merged = merge_patterns(combined, shift(targets[i], BigInt(n) * (i + 1)));
    auto* p = std::get_if<PartialPattern>(&merged);
    if (p == nullptr)
      return std::nullopt;
    combined = std::move(*p);
  }
  if (!pattern_nonempty(combined, set))
    return std::nullopt;
  return combined;
}

/// Smallest n with U ∩ σ^(-n)V_1 ∩ ... ∩ σ^(-mn)V_m ≠ ∅ (one point for all i).
inline WitnessReport delta_transitivity_witness(const SpacingSet& set, const PartialPattern& source,
                                                const std::vector<PartialPattern>& targets, std::uint64_t horizon,
                                                const ScanOptions& options = {})
{
  if (targets.empty())
    throw std::invalid_argument("delta witness needs at least one target pattern");
  WitnessReport report{"delta", staircase_query(set, std::vector<PartialPattern>(targets.size(), source), targets, horizon),
                       std::nullopt, {}, {}};
  report.query.validate();
  report.witness = first_hit(
      1, horizon, [&](std::uint64_t n) { return delta_pattern_at(set, source, targets, n).has_value(); }, options);
  if (report.witness) {
    report.merged = {*delta_pattern_at(set, source, targets, *report.witness)};
    report.verdict = detail::witness_verdict(*report.witness);
  } else {
    report.verdict = detail::no_witness_verdict(horizon, detail::delta_excluded_by_not_mp(set, source, targets));
  }
  return report;
}

/// Re-runs whichever search produced `report` on its own query.
inline WitnessReport rerun_witness(const WitnessReport& report, const ScanOptions& options = {})
{
  const auto& q = report.query;
  if (report.mode == "delta")
    return delta_transitivity_witness(q.set, q.sources.front(), q.targets, q.horizon, options);
  if (report.mode == "multi")
    return multi_transitivity_witness(q.set, q.sources, q.targets, q.horizon, options);
  if (report.mode == "product" || report.mode == "hitting")
    return product_witness(q, options, report.mode);
  throw std::invalid_argument("unknown witness mode '" + report.mode + "'");
}

/// σ_P weakly mixing ⇔ P thick; a structural thickness argument upgrades the verdict to Proven.
inline HorizonVerdict weak_mixing_verdict(const SpacingSet& set, std::uint64_t horizon, std::uint64_t run_target)
{
  auto v = thickness_verdict(set, horizon, run_target);
  if (v.structural && v.status != Status::Refuted)
    v.status = Status::Proven;
  else if (v.structural)
    v = HorizonVerdict::proven(*v.structural, v.certificate);
  return v;
}

/// Certificate that σ_P × σ_P^m is not transitive on P(m), witnessed by U = V = [1] × [1].
struct RefutationReport {
  std::uint64_t m = 2;
  ProductQuery query;
  std::vector<std::uint64_t> hits;
  HorizonVerdict not_mp;
  HorizonVerdict verdict;

  friend bool operator==(const RefutationReport&, const RefutationReport&) = default;
};

inline RefutationReport refute_product_transitivity(const SpacingSet& set, std::uint64_t horizon,
                                                    const ScanOptions& options = {})
{
  const auto* blocks = set.as_blocks();
  if (blocks == nullptr)
    throw std::invalid_argument("product refutation applies to block families only");
  const auto one = PartialPattern::cylinder("1");
  RefutationReport r;
  r.m = blocks->m;
  r.query = ProductQuery{set, {1, blocks->m}, {one, one}, {one, one}, horizon};
  r.hits = product_hitting(r.query, options);
  r.not_mp = verify_not_mp(blocks->m, horizon, options);
  if (r.hits.empty())
    r.verdict = detail::no_witness_verdict(horizon, r.not_mp.holds() && detail::product_excluded_by_not_mp(r.query));
  else
    r.verdict = detail::witness_verdict(r.hits.front());
  return r;
}

/// Transcript of the nested refinement: times k_0..k_d and patterns V_i^(0..d).
struct NestedRefinement {
  std::vector<PartialPattern> targets;           ///< V_1..V_m
  std::vector<std::uint64_t> times;              ///< k_0, k_1, ...
  std::vector<std::vector<PartialPattern>> refined; ///< refined[n][i-1] = V_i^(n)
  std::optional<std::uint64_t> failed_step;
  HorizonVerdict verdict;
};

/// Builds k_n > n and V_i^(n) ⊆ V_i^(n-1) with σ^(i k_j - j)(V_i^(n)) ⊆ V_i for all j ≤ n.
///
/// Step n searches k in [n+1, horizon] for the product query with sources σ^(-n)V_i^(n-1),
/// targets V_i and exponents i; then V_i^(n) = V_i^(n-1) ∩ σ^(-(i k_n - n))V_i.
inline NestedRefinement nested_refinement(const SpacingSet& set, const std::vector<PartialPattern>& targets,
                                          std::uint64_t depth, std::uint64_t horizon, const ScanOptions& options = {})
{
  if (targets.empty())
    throw std::invalid_argument("nested refinement needs at least one target pattern");
  for (const auto& v : targets)
    if (!pattern_nonempty(v, set))
      throw std::invalid_argument("nested refinement targets must be nonempty cylinders");

  NestedRefinement out;
  out.targets = targets;
  std::vector<PartialPattern> current = targets;
  for (std::uint64_t n = 0; n <= depth; ++n) {
    std::vector<PartialPattern> sources;
    for (const auto& v : current)
      sources.push_back(shift(v, BigInt(n)));
    const auto q = staircase_query(set, sources, targets, horizon);
    const auto k = n + 1 <= horizon ? product_first_hit(q, n + 1, options) : std::nullopt;
    if (!k) {
      out.failed_step = n;
      out.verdict = HorizonVerdict::refuted(Certificate{"no-time-at-step", {n}}, horizon);
      return out;
    }
    std::vector<PartialPattern> next;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const BigInt lag = BigInt(*k) * (i + 1) - n;
      next.push_back(std::get<PartialPattern>(merge_patterns(current[i], shift(targets[i], lag))));
    }
    out.times.push_back(*k);
    out.refined.push_back(next);
    current = std::move(next);
  }
  std::vector<BigInt> ks(out.times.begin(), out.times.end());
  out.verdict = HorizonVerdict::verified(horizon, Certificate{"times", std::move(ks)});
  return out;
}

/// Checks a refinement transcript from its raw patterns alone; returns the first failing claim.
inline std::optional<std::string> check_refinement(const NestedRefinement& r, const SpacingSet& set)
{
  for (std::size_t n = 0; n < r.refined.size(); ++n) {
    if (n >= r.times.size() || r.times[n] <= n)
      return "time k_" + std::to_string(n) + " does not exceed " + std::to_string(n);
    if (r.refined[n].size() != r.targets.size())
      return "wrong number of refined patterns at step " + std::to_string(n);
    for (std::size_t i = 0; i < r.targets.size(); ++i) {
      const auto& p = r.refined[n][i];
      if (!pattern_nonempty(p, set))
        return "V_" + std::to_string(i + 1) + "^(" + std::to_string(n) + ") is empty";
      if (!p.refines(r.targets[i]) || (n > 0 && !p.refines(r.refined[n - 1][i])))
        return "V_" + std::to_string(i + 1) + "^(" + std::to_string(n) + ") is not nested";
      for (std::size_t j = 0; j <= n; ++j) {
        const BigInt lag = BigInt(r.times[j]) * (i + 1) - j;
        if (!p.refines(shift(r.targets[i], lag)))
          return "V_" + std::to_string(i + 1) + "^(" + std::to_string(n) + ") not mapped into V_" +
                 std::to_string(i + 1) + " at j = " + std::to_string(j);
      }
    }
  }
  return std::nullopt;
}

} // namespace spacing
