#pragma once

// Test-only oracles. They work on dense bitmask words and plain integer sets so
// they share no code path with the sparse library routines they check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "spacing/spacing.hpp"

namespace spacing::testing {

using Rng = std::mt19937_64;

/// Dense word: bit i of `bits` is position i.
struct DenseWord {
  std::uint64_t bits = 0;
  unsigned length = 0;
};

inline std::set<std::uint64_t> dense_spacings(const DenseWord& w)
{
  std::set<std::uint64_t> out;
  for (unsigned i = 0; i < w.length; ++i)
    for (unsigned j = i + 1; j < w.length; ++j)
      if ((w.bits >> i & 1U) && (w.bits >> j & 1U))
        out.insert(j - i);
  return out;
}

inline bool dense_admissible(const DenseWord& w, const std::set<std::uint64_t>& allowed)
{
  for (auto d : dense_spacings(w))
    if (!allowed.contains(d))
      return false;
  return true;
}

/// Every admissible word of the given length, by filtering all 2^length masks.
inline std::vector<DenseWord> brute_language(const std::set<std::uint64_t>& allowed, unsigned length)
{
  std::vector<DenseWord> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length); ++mask)
    if (dense_admissible({mask, length}, allowed))
      out.push_back({mask, length});
  return out;
}

inline Word to_word(const DenseWord& w)
{
  std::vector<BigInt> support;
  for (unsigned i = 0; i < w.length; ++i)
    if (w.bits >> i & 1U)
      support.emplace_back(i);
  return Word(w.length, std::move(support));
}

inline DenseWord random_dense(Rng& rng, unsigned length, double density = 0.4)
{
  std::bernoulli_distribution coin(density);
  DenseWord w{0, length};
  for (unsigned i = 0; i < length; ++i)
    if (coin(rng))
      w.bits |= std::uint64_t{1} << i;
  return w;
}

inline std::set<std::uint64_t> random_subset(Rng& rng, std::uint64_t lo, std::uint64_t hi, double density = 0.5)
{
  std::bernoulli_distribution coin(density);
  std::set<std::uint64_t> out;
  for (auto v = lo; v <= hi; ++v)
    if (coin(rng))
      out.insert(v);
  return out;
}

inline SpacingSet to_set(const std::set<std::uint64_t>& values)
{
  std::vector<BigInt> big(values.begin(), values.end());
  return ExplicitSet::from_sorted(std::move(big));
}

/// P(m) membership from the block intervals [m^(2k-1), m^(2k) - 1].
inline bool block_oracle(std::uint64_t m, std::uint64_t p)
{
  for (std::uint64_t lo = m; lo <= p; lo *= m * m) {
    const std::uint64_t hi = lo * m - 1;
    if (p <= hi)
      return true;
  }
  return false;
}

/// Random P-admissible word of the given length, built by rejection.
inline DenseWord random_admissible(Rng& rng, const std::set<std::uint64_t>& allowed, unsigned length)
{
  for (;;) {
    auto w = random_dense(rng, length, 0.3);
    if (dense_admissible(w, allowed))
      return w;
  }
}

} // namespace spacing::testing
