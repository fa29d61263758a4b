#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spacing/bigint.hpp"
#include "spacing/language.hpp"
#include "spacing/parallel_scan.hpp"
#include "spacing/spacing_set.hpp"
#include "spacing/verdict.hpp"
#include "spacing/word.hpp"

namespace spacing {

/// Bounds past which lemma_extend refuses instead of running.
struct LemmaLimits {
  std::uint64_t max_scenarios = 1'000'000;
  std::uint64_t language_guard = default_language_guard;
  /// Upper bound on the bit length of the last gap length l_m.
  std::uint64_t max_gap_bits = 1U << 16;
};

/// One scenario W^(j): N pairs (u_i, v_i), its gap length l_j and witness words w_i = u_i 0^(i l_j - k) v_i.
struct Scenario {
  std::vector<std::pair<Word, Word>> pairs;
  BigInt l;
  std::vector<Word> witnesses;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Full transcript of one run of the dispersed extension construction.
struct LemmaOutput {
  ExplicitSet A;
  std::uint64_t M = 3;
  std::uint64_t N = 0;
  BigInt k;
  bool degenerate = false;
  BigInt scenario_count;
  std::vector<Scenario> scenarios;
  ExplicitSet B;

  friend bool operator==(const LemmaOutput&, const LemmaOutput&) = default;
};

/// The window [i*l - k + 1, i*l + k - 1] that holds every new spacing of w_i.
inline std::pair<BigInt, BigInt> spacing_window(std::uint64_t i, const BigInt& l, const BigInt& k)
{
  const BigInt centre = l * i;
  return {centre - k + 1, centre + k - 1};
}

/// Minimal gap lengths: l_1 = 2k + M - 1 and l_{j+1} = (N+1)^j l_j.
inline std::vector<BigInt> minimal_gap_lengths(const BigInt& k, std::uint64_t M, std::uint64_t N, std::uint64_t count)
{
  std::vector<BigInt> l;
  l.reserve(count);
  if (count == 0)
    return l;
  l.push_back(2 * k + M - 1);
  BigInt factor = 1; // (N+1)^j
  for (std::uint64_t j = 1; j < count; ++j) {
    factor *= N + 1;
    l.push_back(factor * l.back());
  }
  return l;
}

/// Scenario index (0-based) to its tuple (u_1, v_1, ..., u_N, v_N) over `words`, most significant first.
inline std::vector<std::pair<Word, Word>> scenario_tuple(std::uint64_t index, std::uint64_t N, const std::vector<Word>& words)
{
  const std::uint64_t base = words.size();
  std::vector<std::size_t> digits(2 * N);
  for (std::size_t d = digits.size(); d-- > 0;) {
    digits[d] = static_cast<std::size_t>(index % base);
    index /= base;
  }
  std::vector<std::pair<Word, Word>> pairs;
  pairs.reserve(N);
  for (std::uint64_t i = 0; i < N; ++i)
    pairs.emplace_back(words[digits[2 * i]], words[digits[2 * i + 1]]);
  return pairs;
}

/// Builds an M-dispersed B ⊇ A such that for every choice of N word pairs from L_k(Σ_A)
/// (k = max A + 1) there is one n with σ^(in)[u_i] ∩ [v_i] ≠ ∅ for all i.
///
/// Throws std::invalid_argument for bad input, InfeasibleError past `limits`, and
/// std::logic_error if the constructed windows overlap or B is not M-dispersed.
inline LemmaOutput lemma_extend(const ExplicitSet& A, std::uint64_t N, std::uint64_t M, const LemmaLimits& limits = {})
{
  if (M < 3)
    throw std::invalid_argument("lemma_extend requires M >= 3");
  if (A.empty())
    throw std::invalid_argument("lemma_extend requires a nonempty set A");
  if (auto d = is_q_dispersed(A, M); !d)
    throw std::invalid_argument("A is not " + std::to_string(M) + "-dispersed: failing pair (" +
                                to_decimal(d.failing->first) + ", " + to_decimal(d.failing->second) + ")");

  LemmaOutput out;
  out.A = A;
  out.M = M;
  out.N = N;
  out.k = A.max() + 1;

  if (N == 0) {
    out.degenerate = true;
    out.scenario_count = 0;
    out.B = A;
    return out;
  }

  if (out.k > limits.language_guard)
    throw InfeasibleError("k", out.k, "cannot enumerate L_k for k = max A + 1 above the language guard");
  const auto k = static_cast<std::uint64_t>(out.k);
  const auto words = enumerate_language(SpacingSet(A), k, limits.language_guard);

  out.scenario_count = pow(BigInt(words.size()), 2 * N);
  if (out.scenario_count > limits.max_scenarios)
    throw InfeasibleError("scenario count", out.scenario_count, "|L_k(A)|^(2N) exceeds the scenario bound");
  const auto m = static_cast<std::uint64_t>(out.scenario_count);

  // bits(l_m) <= bits(l_1) + (m(m-1)/2) * log2(N+1), and log2(N+1) <= bits(N)
  const BigInt gap_bits = BigInt(m) * (m - 1) / 2 * bit_length(BigInt(N)) + bit_length(2 * out.k + M);
  if (gap_bits > limits.max_gap_bits)
    throw InfeasibleError("gap bits", gap_bits, "last gap length l_m would exceed the bit-length bound");

  const auto l = minimal_gap_lengths(out.k, M, N, m);
  std::vector<BigInt> spacings = A.elements();
  out.scenarios.reserve(m);
  for (std::uint64_t j = 0; j < m; ++j) {
    Scenario s;
    s.pairs = scenario_tuple(j, N, words);
    s.l = l[j];
    for (std::uint64_t i = 1; i <= N; ++i) {
      const auto& [u, v] = s.pairs[i - 1];
      s.witnesses.push_back(concat_with_gap(u, s.l * i - out.k, v));
      for (const auto& d : spacing_set_of(s.witnesses.back()))
        spacings.push_back(d);
    }
    out.scenarios.push_back(std::move(s));
  }
  out.B = ExplicitSet::from_unsorted(std::move(spacings));

  std::vector<std::pair<BigInt, BigInt>> windows;
  windows.reserve(m * N);
  for (const auto& s : out.scenarios)
    for (std::uint64_t i = 1; i <= N; ++i)
      windows.push_back(spacing_window(i, s.l, out.k));
  std::sort(windows.begin(), windows.end());
  for (std::size_t w = 1; w < windows.size(); ++w)
    if (windows[w].first <= windows[w - 1].second)
      throw std::logic_error("spacing windows overlap at " + to_decimal(windows[w].first));
  if (auto d = is_q_dispersed(out.B, M); !d)
    throw std::logic_error("constructed B is not M-dispersed at (" + to_decimal(d.failing->first) + ", " +
                           to_decimal(d.failing->second) + ")");
  return out;
}

/// How the number of word pairs N is chosen when building stage n+1 from stage n.
enum class StageConvention {
  AtLeastOne, ///< N = max(n, 1): every stage strictly grows
  Literal,    ///< N = n: stage 1 repeats stage 0
};

inline std::uint64_t pairs_for_stage(std::uint64_t n, StageConvention c)
{
  return c == StageConvention::Literal ? n : std::max<std::uint64_t>(n, 1);
}

inline const char* to_string(StageConvention c) { return c == StageConvention::Literal ? "literal" : "at-least-one"; }

struct StagedConstruction {
  std::uint64_t M = 3;
  StageConvention convention = StageConvention::AtLeastOne;
  std::vector<ExplicitSet> stages;       ///< P_0, P_1, ...
  std::vector<LemmaOutput> transcripts;  ///< transcripts[n] builds stages[n+1]

  SpacingSet spacing_set() const { return StagedUnion(stages); }

  friend bool operator==(const StagedConstruction&, const StagedConstruction&) = default;
};

/// P_0 = {M}; P_{n+1} = lemma_extend(P_n, N(n), M).B for n < stages.
inline StagedConstruction staged_p(std::uint64_t M, std::uint64_t stages,
                                   StageConvention convention = StageConvention::AtLeastOne,
                                   const LemmaLimits& limits = {})
{
  if (M < 3)
    throw std::invalid_argument("staged construction requires M >= 3");
  StagedConstruction out;
  out.M = M;
  out.convention = convention;
  out.stages.push_back(ExplicitSet::from_sorted({BigInt(M)}));
  for (std::uint64_t n = 0; n < stages; ++n) {
    try {
      out.transcripts.push_back(lemma_extend(out.stages.back(), pairs_for_stage(n, convention), M, limits));
    } catch (const InfeasibleError& e) {
      throw e.within("stage " + std::to_string(n + 1) + " refused");
    }
    out.stages.push_back(out.transcripts.back().B);
  }
  if (convention == StageConvention::AtLeastOne && !StagedUnion(out.stages).strictly_increasing())
    throw std::logic_error("staged construction failed to grow strictly");
  return out;
}

inline SpacingSet block_family(std::uint64_t m) { return BlockFamily{m}; }

/// Endpoints of B(m, k) = {m^(2k-1), ..., m^(2k) - 1}.
inline std::pair<BigInt, BigInt> block_bounds(std::uint64_t m, std::uint64_t k)
{
  if (k == 0)
    throw std::invalid_argument("block index starts at 1");
  return {pow(BigInt(m), 2 * k - 1), pow(BigInt(m), 2 * k) - 1};
}

/// Exhaustive check of p ∈ P(m) ⇒ m·p ∉ P(m) for p ≤ horizon.
///
/// The property holds for all p because ⌊log_m(m·p)⌋ = ⌊log_m p⌋ + 1 flips parity;
/// that argument is attached as the structural tag "floor-log-parity".
inline HorizonVerdict verify_not_mp(std::uint64_t m, std::uint64_t horizon, const ScanOptions& options = {})
{
  const SpacingSet set = block_family(m);
  auto violation = first_hit(
      1, horizon,
      [&](std::uint64_t p) {
        if (!set.contains(p))
          return false;
        if (p > std::numeric_limits<std::uint64_t>::max() / m)
          return set.contains(BigInt(p) * m);
        return set.contains(p * m);
      },
      options);
  if (violation)
    return HorizonVerdict::refuted(Certificate{"violation", {*violation}}, horizon);
  auto verdict = HorizonVerdict::verified(horizon);
  verdict.structural = "floor-log-parity";
  return verdict;
}

} // namespace spacing
