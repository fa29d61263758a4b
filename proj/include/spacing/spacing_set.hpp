#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "spacing/bigint.hpp"

namespace spacing {

/// Finite set of positive spacings, kept sorted and duplicate-free.
class ExplicitSet {
public:
  ExplicitSet() = default;

  /// Sorts and deduplicates; throws if any element is not positive.
  static ExplicitSet from_unsorted(std::vector<BigInt> values)
  {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return ExplicitSet(std::move(values));
  }

  /// Takes an already canonical list; throws unless strictly increasing and positive.
  static ExplicitSet from_sorted(std::vector<BigInt> values)
  {
    for (std::size_t i = 1; i < values.size(); ++i)
      if (!(values[i - 1] < values[i]))
        throw std::invalid_argument("explicit spacing set must be strictly increasing");
    return ExplicitSet(std::move(values));
  }

  /// {lo, lo+1, ..., hi}.
  static ExplicitSet interval(std::uint64_t lo, std::uint64_t hi)
  {
    std::vector<BigInt> values;
    for (std::uint64_t v = lo; v <= hi && lo <= hi; ++v)
      values.emplace_back(v);
    return ExplicitSet(std::move(values));
  }

  bool contains(const BigInt& n) const { return std::binary_search(elements_.begin(), elements_.end(), n); }

  const std::vector<BigInt>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const BigInt& max() const { return elements_.back(); }
  const BigInt& min() const { return elements_.front(); }

  bool includes(const ExplicitSet& other) const
  {
    return std::includes(elements_.begin(), elements_.end(), other.elements_.begin(), other.elements_.end());
  }

  friend bool operator==(const ExplicitSet&, const ExplicitSet&) = default;

private:
  explicit ExplicitSet(std::vector<BigInt> values)
      : elements_(std::move(values))
  {
    if (!elements_.empty() && elements_.front() < 1)
      throw std::invalid_argument("spacing set elements must be positive");
  }

  std::vector<BigInt> elements_;
};

/// P(m): the union of the blocks [m^(2k-1), m^(2k) - 1] for k >= 1.
struct BlockFamily {
  std::uint64_t m = 2;

  friend bool operator==(const BlockFamily&, const BlockFamily&) = default;
};

/// Nested stages P_0 ⊆ P_1 ⊆ ...; only the materialized stages are known.
class StagedUnion {
public:
  explicit StagedUnion(std::vector<ExplicitSet> stages)
      : stages_(std::move(stages))
  {
    if (stages_.empty())
      throw std::invalid_argument("staged union needs at least one stage");
    for (std::size_t i = 1; i < stages_.size(); ++i)
      if (!stages_[i].includes(stages_[i - 1]))
        throw std::invalid_argument("staged union stages must be nested");
  }

  const std::vector<ExplicitSet>& stages() const noexcept { return stages_; }
  const ExplicitSet& last() const { return stages_.back(); }

  bool strictly_increasing() const
  {
    for (std::size_t i = 1; i < stages_.size(); ++i)
      if (stages_[i].size() == stages_[i - 1].size())
        return false;
    return true;
  }

  friend bool operator==(const StagedUnion&, const StagedUnion&) = default;

private:
  std::vector<ExplicitSet> stages_;
};

/// The set P of allowed distances between two 1s.
class SpacingSet {
public:
  using Variant = std::variant<ExplicitSet, BlockFamily, StagedUnion>;

  SpacingSet(ExplicitSet s)
      : value_(std::move(s))
  {
  }
  SpacingSet(BlockFamily b)
      : value_(b)
  {
    if (b.m < 2)
      throw std::invalid_argument("block family requires m >= 2");
  }
  SpacingSet(StagedUnion s)
      : value_(std::move(s))
  {
  }

  static SpacingSet explicit_set(std::vector<BigInt> values) { return ExplicitSet::from_unsorted(std::move(values)); }
  static SpacingSet blocks(std::uint64_t m) { return BlockFamily{m}; }

  const Variant& variant() const noexcept { return value_; }
  const ExplicitSet* as_explicit() const noexcept { return std::get_if<ExplicitSet>(&value_); }
  const BlockFamily* as_blocks() const noexcept { return std::get_if<BlockFamily>(&value_); }
  const StagedUnion* as_staged() const noexcept { return std::get_if<StagedUnion>(&value_); }

  /// Finite materialization, if the variant has one (explicit set or last stage).
  const ExplicitSet* finite_view() const noexcept
  {
    if (auto e = as_explicit())
      return e;
    if (auto s = as_staged())
      return &s->last();
    return nullptr;
  }

  bool contains(const BigInt& n) const
  {
    if (n < 1)
      return false;
    if (auto b = as_blocks())
      return floor_log(n, b->m) % 2 == 1;
    return finite_view()->contains(n);
  }

  bool contains(std::uint64_t n) const
  {
    if (n == 0)
      return false;
    if (auto b = as_blocks()) {
      std::uint64_t e = 0;
      while (n >= b->m) {
        n /= b->m;
        ++e;
      }
      return e % 2 == 1;
    }
    return finite_view()->contains(BigInt(n));
  }

  friend bool operator==(const SpacingSet&, const SpacingSet&) = default;

private:
  Variant value_;
};

inline bool contains(const SpacingSet& set, const BigInt& n) { return set.contains(n); }

/// Members of P in [1, horizon], ascending.
inline std::vector<std::uint64_t> members_up_to(const SpacingSet& set, std::uint64_t horizon)
{
  std::vector<std::uint64_t> out;
  if (auto b = set.as_blocks()) {
    // Block intervals directly; membership by the log rule is checked against this in tests.
    const BigInt m = b->m;
    BigInt lo = m;
    while (lo <= horizon) {
      BigInt hi = lo * m - 1;
      auto last = static_cast<std::uint64_t>(std::min<BigInt>(hi, BigInt(horizon)));
      for (auto v = static_cast<std::uint64_t>(lo); v <= last; ++v)
        out.push_back(v);
      lo = hi + 1;
      lo *= m;
    }
    return out;
  }
  for (const auto& e : set.finite_view()->elements()) {
    if (e > horizon)
      break;
    out.push_back(static_cast<std::uint64_t>(e));
  }
  return out;
}

/// Result of a q-dispersedness check; `failing` holds the lexicographically smallest bad pair.
struct DispersedResult {
  std::optional<std::pair<BigInt, BigInt>> failing;

  explicit operator bool() const noexcept { return !failing.has_value(); }
};

/// Every two distinct members of S ∪ {0} differ by at least q.
inline DispersedResult is_q_dispersed(const ExplicitSet& set, const BigInt& q)
{
  if (q < 2)
    throw std::invalid_argument("dispersedness requires q >= 2");
  // Consecutive members of the sorted S ∪ {0}: the first failing adjacent pair is the lex-smallest failing pair.
  BigInt previous = 0;
  for (const auto& e : set.elements()) {
    if (e - previous < q)
      return {std::make_pair(previous, e)};
    previous = e;
  }
  return {};
}

} // namespace spacing
