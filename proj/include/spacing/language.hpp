#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spacing/bigint.hpp"
#include "spacing/spacing_set.hpp"
#include "spacing/verdict.hpp"
#include "spacing/word.hpp"

namespace spacing {

/// Longest word length the language routines will enumerate. Worst case (P ⊇ [1,n]) is 2^n words.
inline constexpr std::uint64_t default_language_guard = 24;

namespace detail {

inline void check_guard(std::uint64_t n, std::uint64_t guard)
{
  if (n > guard)
    throw InfeasibleError("n", n,
                          "language length exceeds the enumeration guard " + std::to_string(guard) +
                              "; up to 2^n words would be visited");
}

// Depth-first over support lists: each new position must sit at an allowed distance from every chosen one.
template <typename Visit>
void walk_supports(const SpacingSet& set, std::uint64_t n, std::vector<std::uint64_t>& chosen, std::uint64_t from,
                   Visit& visit)
{
  visit(chosen);
  for (std::uint64_t p = from; p < n; ++p) {
    bool ok = true;
    for (auto c : chosen)
      if (!set.contains(p - c)) {
        ok = false;
        break;
      }
    if (!ok)
      continue;
    chosen.push_back(p);
    walk_supports(set, n, chosen, p + 1, visit);
    chosen.pop_back();
  }
}

} // namespace detail

/// L_n(Σ_P): every length-n P-admissible word, in lexicographic order of support lists.
inline std::vector<Word> enumerate_language(const SpacingSet& set, std::uint64_t n,
                                            std::uint64_t guard = default_language_guard)
{
  detail::check_guard(n, guard);
  std::vector<Word> out;
  std::vector<std::uint64_t> chosen;
  auto visit = [&](const std::vector<std::uint64_t>& support) {
    out.emplace_back(BigInt(n), std::vector<BigInt>(support.begin(), support.end()));
  };
  detail::walk_supports(set, n, chosen, 0, visit);
  return out;
}

/// |L_n(Σ_P)| without materializing the words.
inline BigInt count_language(const SpacingSet& set, std::uint64_t n, std::uint64_t guard = default_language_guard)
{
  detail::check_guard(n, guard);
  std::uint64_t count = 0;
  std::vector<std::uint64_t> chosen;
  auto visit = [&](const std::vector<std::uint64_t>&) { ++count; };
  detail::walk_supports(set, n, chosen, 0, visit);
  return count;
}

/// nullopt when L_n agrees for both sets, else the first word (in support order) lying in exactly one of them.
inline std::optional<Word> language_equal_up_to(const SpacingSet& a, const SpacingSet& b, std::uint64_t n,
                                                std::uint64_t guard = default_language_guard)
{
  const auto la = enumerate_language(a, n, guard);
  const auto lb = enumerate_language(b, n, guard);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < la.size() && j < lb.size()) {
    if (la[i] == lb[j]) {
      ++i;
      ++j;
    } else {
      return la[i] < lb[j] ? la[i] : lb[j];
    }
  }
  if (i < la.size())
    return la[i];
  if (j < lb.size())
    return lb[j];
  return std::nullopt;
}

} // namespace spacing
