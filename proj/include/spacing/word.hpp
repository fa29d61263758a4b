#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spacing/bigint.hpp"
#include "spacing/spacing_set.hpp"

namespace spacing {

/// Finite binary word stored sparsely as (length, positions of 1s).
///
/// Gaps produced by the extension construction run to hundreds of digits, so
/// no dense symbol array is ever materialized.
class Word {
public:
  Word() = default;

  /// Throws unless support is strictly increasing and every position is < length.
  Word(BigInt length, std::vector<BigInt> support)
      : length_(std::move(length))
      , support_(std::move(support))
  {
    if (length_ < 0)
      throw std::invalid_argument("word length must be nonnegative");
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (support_[i] < 0 || support_[i] >= length_)
        throw std::invalid_argument("word support position out of range");
      if (i > 0 && !(support_[i - 1] < support_[i]))
        throw std::invalid_argument("word support must be strictly increasing");
    }
  }

  /// Parses a 0/1 string such as "1001".
  static Word from_string(std::string_view bits)
  {
    std::vector<BigInt> support;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1')
        support.emplace_back(i);
      else if (bits[i] != '0')
        throw std::invalid_argument("word text must consist of 0 and 1");
    }
    return Word(BigInt(bits.size()), std::move(support));
  }

  const BigInt& length() const noexcept { return length_; }
  const std::vector<BigInt>& support() const noexcept { return support_; }
  bool empty() const noexcept { return length_ == 0; }

  /// Dense 0/1 text; only sensible for short words.
  std::string to_string(std::size_t max_length = 4096) const
  {
    if (length_ > max_length)
      throw std::length_error("word too long for dense text form");
    std::string out(static_cast<std::size_t>(length_), '0');
    for (const auto& p : support_)
      out[static_cast<std::size_t>(p)] = '1';
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Lexicographic by support list, then by length.
  friend bool operator<(const Word& a, const Word& b)
  {
    if (a.support_ != b.support_)
      return a.support_ < b.support_;
    return a.length_ < b.length_;
  }

private:
  BigInt length_ = 0;
  std::vector<BigInt> support_;
};

/// Sp(w): all distances between two distinct 1s of w.
inline std::set<BigInt> spacing_set_of(const Word& w)
{
  std::set<BigInt> out;
  const auto& s = w.support();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      out.insert(s[j] - s[i]);
  return out;
}

/// Sp(w) ⊆ P.
inline bool is_admissible(const Word& w, const SpacingSet& set)
{
  const auto& s = w.support();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!set.contains(BigInt(s[j] - s[i])))
        return false;
  return true;
}

/// u · 0^gap · v.
inline Word concat_with_gap(const Word& u, const BigInt& gap, const Word& v)
{
  if (gap < 0)
    throw std::invalid_argument("gap must be nonnegative");
  std::vector<BigInt> support = u.support();
  const BigInt offset = u.length() + gap;
  support.reserve(support.size() + v.support().size());
  for (const auto& q : v.support())
    support.push_back(offset + q);
  return Word(offset + v.length(), std::move(support));
}

/// Sparse assignment of symbols to positions: the set of points agreeing with every constraint.
class PartialPattern {
public:
  using Constraints = std::map<BigInt, bool>;

  PartialPattern() = default;
  explicit PartialPattern(Constraints constraints)
      : constraints_(std::move(constraints))
  {
    for (const auto& [pos, sym] : constraints_)
      if (pos < 0)
        throw std::invalid_argument("pattern positions must be nonnegative");
  }

  /// The cylinder [w]: every position of w fixed. Refuses words longer than max_length.
  static PartialPattern cylinder(const Word& w, std::size_t max_length = 1U << 20)
  {
    if (w.length() > max_length)
      throw std::length_error("cylinder word too long to fix every position");
    Constraints c;
    const auto len = static_cast<std::size_t>(w.length());
    for (std::size_t i = 0; i < len; ++i)
      c.emplace(BigInt(i), false);
    for (const auto& p : w.support())
      c[p] = true;
    return PartialPattern(std::move(c));
  }

  static PartialPattern cylinder(std::string_view bits) { return cylinder(Word::from_string(bits)); }

  /// Text form where '*' (or '.') leaves a position unconstrained.
  static PartialPattern from_text(std::string_view text)
  {
    Constraints c;
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
      case '0': c.emplace(BigInt(i), false); break;
      case '1': c.emplace(BigInt(i), true); break;
      case '*':
      case '.': break;
      default: throw std::invalid_argument("pattern text must consist of 0, 1, * or .");
      }
    }
    return PartialPattern(std::move(c));
  }

  /// Pattern forcing a 1 at each listed position and nothing else.
  static PartialPattern ones_at(const std::vector<BigInt>& positions)
  {
    Constraints c;
    for (const auto& p : positions)
      c[p] = true;
    return PartialPattern(std::move(c));
  }

  const Constraints& constraints() const noexcept { return constraints_; }
  bool empty() const noexcept { return constraints_.empty(); }

  std::vector<BigInt> ones() const
  {
    std::vector<BigInt> out;
    for (const auto& [pos, sym] : constraints_)
      if (sym)
        out.push_back(pos);
    return out;
  }

  /// Preimage under n shift steps: every constrained position moves right by n.
  PartialPattern shifted(const BigInt& n) const
  {
    Constraints c;
    for (const auto& [pos, sym] : constraints_)
      c.emplace_hint(c.end(), pos + n, sym);
    return PartialPattern(std::move(c));
  }

  /// Every constraint of `other` is also a constraint here.
  bool refines(const PartialPattern& other) const
  {
    for (const auto& [pos, sym] : other.constraints_) {
      auto it = constraints_.find(pos);
      if (it == constraints_.end() || it->second != sym)
        return false;
    }
    return true;
  }

  friend bool operator==(const PartialPattern&, const PartialPattern&) = default;

private:
  Constraints constraints_;
};

inline PartialPattern shift(const PartialPattern& p, const BigInt& n) { return p.shifted(n); }

/// A position assigned both 0 and 1 by a merge.
struct Conflict {
  BigInt position;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

using MergeResult = std::variant<PartialPattern, Conflict>;

inline MergeResult merge_patterns(const PartialPattern& p, const PartialPattern& q)
{
  auto c = p.constraints();
  for (const auto& [pos, sym] : q.constraints()) {
    auto [it, inserted] = c.emplace(pos, sym);
    if (!inserted && it->second != sym)
      return Conflict{pos};
  }
  return PartialPattern(std::move(c));
}

/// Distances among positions forced to 1 all lie in P (free positions read as 0).
inline bool pattern_nonempty(const PartialPattern& p, const SpacingSet& set)
{
  const auto ones = p.ones();
  for (std::size_t i = 0; i < ones.size(); ++i)
    for (std::size_t j = i + 1; j < ones.size(); ++j)
      if (!set.contains(BigInt(ones[j] - ones[i])))
        return false;
  return true;
}

/// Merge then check nonemptiness; nullopt on conflict or inadmissible ones.
inline std::optional<PartialPattern> intersect(const PartialPattern& p, const PartialPattern& q, const SpacingSet& set)
{
  auto merged = merge_patterns(p, q);
  auto* pattern = std::get_if<PartialPattern>(&merged);
  if (pattern == nullptr || !pattern_nonempty(*pattern, set))
    return std::nullopt;
  return std::move(*pattern);
}

} // namespace spacing
