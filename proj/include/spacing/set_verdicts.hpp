#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spacing/spacing_set.hpp"
#include "spacing/verdict.hpp"

namespace spacing {

struct Run {
  std::uint64_t start = 0;
  std::uint64_t length = 0;

  friend bool operator==(const Run&, const Run&) = default;
};

namespace detail {

// Maximal runs of consecutive integers in an ascending list.
inline std::vector<Run> runs_of(std::span<const std::uint64_t> sorted)
{
  std::vector<Run> runs;
  for (auto v : sorted) {
    if (!runs.empty() && runs.back().start + runs.back().length == v)
      ++runs.back().length;
    else
      runs.push_back({v, 1});
  }
  return runs;
}

inline std::vector<std::uint64_t> complement_up_to(std::span<const std::uint64_t> members, std::uint64_t horizon)
{
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  for (std::uint64_t n = 1; n <= horizon; ++n) {
    if (i < members.size() && members[i] == n)
      ++i;
    else
      out.push_back(n);
  }
  return out;
}

inline void check_run_arguments(std::uint64_t horizon, std::uint64_t run_target)
{
  if (run_target == 0 || horizon == 0)
    throw std::invalid_argument("horizon and run target must be positive");
  if (horizon < run_target)
    throw std::invalid_argument("horizon must be at least the run target");
}

inline HorizonVerdict scan_for_run(std::span<const std::uint64_t> sorted, std::uint64_t horizon, std::uint64_t run_target)
{
  Run longest;
  for (const auto& r : runs_of(sorted)) {
    if (r.length >= run_target)
      return HorizonVerdict::verified(horizon, Certificate{"run", {r.start, r.start + run_target - 1}});
    if (r.length > longest.length)
      longest = r;
  }
  return HorizonVerdict::refuted(Certificate{"longest-run", {longest.start, longest.length}}, horizon);
}

} // namespace detail

/// Thickness of P: a run of `run_target` consecutive members inside [1, horizon].
///
/// Block families additionally carry the structural tag "block-lengths-unbounded"
/// (block k has m^(2k) - m^(2k-1) members). Explicit sets are refuted outright:
/// "finite" when every member lies below the horizon, otherwise "dispersed" when
/// no two members are adjacent.
inline HorizonVerdict thickness_verdict(const SpacingSet& set, std::uint64_t horizon, std::uint64_t run_target)
{
  detail::check_run_arguments(horizon, run_target);
  if (const auto* e = set.as_explicit()) {
    if (e->empty())
      return HorizonVerdict::refuted(Certificate{"finite", {}});
    if (e->max() < horizon)
      return HorizonVerdict::refuted(Certificate{"finite", {e->max()}});
    const auto& xs = e->elements();
    bool adjacent = false;
    for (std::size_t i = 1; i < xs.size() && !adjacent; ++i)
      adjacent = xs[i] - xs[i - 1] == 1;
    if (!adjacent)
      return HorizonVerdict::refuted(Certificate{"dispersed", {}});
  }
  const auto members = members_up_to(set, horizon);
  auto verdict = detail::scan_for_run(members, horizon, run_target);
  if (set.as_blocks() != nullptr)
    verdict.structural = "block-lengths-unbounded";
  return verdict;
}

/// Thickness of N \ P, by horizon scan only.
inline HorizonVerdict complement_thickness_verdict(const SpacingSet& set, std::uint64_t horizon, std::uint64_t run_target)
{
  detail::check_run_arguments(horizon, run_target);
  const auto members = members_up_to(set, horizon);
  const auto gaps = detail::complement_up_to(members, horizon);
  return detail::scan_for_run(gaps, horizon, run_target);
}

struct SyndeticityReport {
  std::uint64_t max_gap = 0;
  std::uint64_t gap_start = 0; ///< left end of the first maximal gap
  std::optional<HorizonVerdict> verdict;
};

/// Largest distance between consecutive points of {0} ∪ (S ∩ [1,horizon]) ∪ {horizon+1}.
/// With a bound L, the verdict is Refuted when that distance exceeds L.
inline SyndeticityReport syndeticity_verdict(std::span<const std::uint64_t> sorted, std::uint64_t horizon,
                                             std::optional<std::uint64_t> bound = std::nullopt)
{
  SyndeticityReport report;
  std::uint64_t previous = 0;
  auto visit = [&](std::uint64_t point) {
    if (point - previous > report.max_gap) {
      report.max_gap = point - previous;
      report.gap_start = previous;
    }
    previous = point;
  };
  for (auto v : sorted) {
    if (v == 0 || v <= previous)
      throw std::invalid_argument("syndeticity input must be strictly increasing positive integers");
    if (v > horizon)
      break;
    visit(v);
  }
  visit(horizon + 1);
  if (bound) {
    if (report.max_gap > *bound)
      report.verdict = HorizonVerdict::refuted(
          Certificate{"gap", {report.gap_start, report.gap_start + report.max_gap}}, horizon);
    else
      report.verdict = HorizonVerdict::verified(horizon, Certificate{"max-gap", {report.max_gap}});
  }
  return report;
}

inline SyndeticityReport syndeticity_verdict(const SpacingSet& set, std::uint64_t horizon,
                                             std::optional<std::uint64_t> bound = std::nullopt)
{
  const auto members = members_up_to(set, horizon);
  return syndeticity_verdict(std::span<const std::uint64_t>(members), horizon, bound);
}

} // namespace spacing
