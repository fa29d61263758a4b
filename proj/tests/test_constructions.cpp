#include <gtest/gtest.h>

#include "spacing/certificate.hpp"
#include "spacing/constructions.hpp"
#include "test_support.hpp"

namespace spacing {
namespace {

// Independent admissibility oracle for a word given as u at 0 and v at offset: every pairwise distance in B.
bool placed_pair_admissible(const Word& u, const BigInt& offset, const Word& v, const ExplicitSet& B)
{
  std::vector<BigInt> positions = u.support();
  for (const auto& q : v.support())
    positions.push_back(offset + q);
  for (std::size_t i = 0; i < positions.size(); ++i)
    for (std::size_t j = i + 1; j < positions.size(); ++j)
      if (!B.contains(positions[j] - positions[i]))
        return false;
  return true;
}

const LemmaOutput& small_lemma()
{
  static const LemmaOutput out = lemma_extend(ExplicitSet::from_unsorted({3}), 1, 3);
  return out;
}

TEST(LemmaExtend, HeadlineNumbers)
{
  const auto& out = small_lemma();
  EXPECT_EQ(out.k, 4);
  EXPECT_EQ(out.scenario_count, 36);
  ASSERT_EQ(out.scenarios.size(), 36U);
  EXPECT_EQ(out.scenarios.front().l, 10);
  EXPECT_FALSE(out.degenerate);
  // l_{j+1} = 2^j l_j with N = 1, so l_36 = 10 * 2^(35*36/2).
  EXPECT_EQ(out.scenarios.back().l, 10 * pow(BigInt(2), 630));
}

TEST(LemmaExtend, ScenarioOfTwoCopiesOfTheSingleSpacingWord)
{
  const auto& out = small_lemma();
  const auto target = Word::from_string("1001");
  auto it = std::find_if(out.scenarios.begin(), out.scenarios.end(),
                         [&](const Scenario& s) { return s.pairs[0] == std::pair{target, target}; });
  ASSERT_NE(it, out.scenarios.end());
  ASSERT_EQ(it - out.scenarios.begin(), 14); // words in support order: {}, {0}, {0,3}, {1}, {2}, {3}
  // Spacings of u 0^(l-k) v: 3 from each copy and l + {-3, 0, 3}.
  const auto sp = spacing_set_of(it->witnesses[0]);
  EXPECT_EQ(sp, (std::set<BigInt>{3, it->l - 3, it->l, it->l + 3}));
  for (const auto& d : sp)
    EXPECT_TRUE(out.B.contains(d));
  // The headline example with l = 10.
  EXPECT_EQ(spacing_set_of(concat_with_gap(target, 6, target)), (std::set<BigInt>{3, 7, 10, 13}));
}

TEST(LemmaExtend, ScenarioOrderIsMixedRadix)
{
  const auto words = enumerate_language(SpacingSet::explicit_set({3}), 4);
  const auto& out = small_lemma();
  for (std::uint64_t j = 0; j < 36; ++j) {
    EXPECT_EQ(out.scenarios[j].pairs[0].first, words[j / 6]);
    EXPECT_EQ(out.scenarios[j].pairs[0].second, words[j % 6]);
  }
}

TEST(LemmaExtend, Invariants)
{
  const auto& out = small_lemma();
  EXPECT_TRUE(out.B.includes(out.A));
  EXPECT_TRUE(is_q_dispersed(out.B, 3));
  EXPECT_EQ(language_equal_up_to(SpacingSet(out.A), SpacingSet(out.B), 4), std::nullopt);
  EXPECT_EQ(count_language(SpacingSet(out.B), 4), 6);
  // min(B \ A) >= l_1 - k + 1 = 7 = M + k.
  for (const auto& b : out.B.elements())
    if (!out.A.contains(b))
      EXPECT_GE(b, 7);
  // Every new spacing lies in the window of the scenario that produced it.
  for (const auto& s : out.scenarios) {
    const auto [lo, hi] = spacing_window(1, s.l, out.k);
    for (const auto& d : spacing_set_of(s.witnesses[0]))
      if (!out.A.contains(d)) {
        EXPECT_GE(d, lo);
        EXPECT_LE(d, hi);
      }
  }
  EXPECT_EQ(check_lemma_transcript(out), std::nullopt);
}

TEST(LemmaExtend, WitnessesHitAtTheGapLength)
{
  // n = l_j sends [u] into [v] in Σ_B: u at 0 and v at l_j together are B-admissible.
  const auto& out = small_lemma();
  for (const auto& s : out.scenarios) {
    const auto& [u, v] = s.pairs[0];
    EXPECT_TRUE(placed_pair_admissible(u, s.l, v, out.B));
    EXPECT_TRUE(is_admissible(s.witnesses[0], SpacingSet(out.B)));
  }
}

TEST(LemmaExtend, TwoPairScenariosUseIndependentWindows)
{
  // A = {5}: L_6 has 8 words, N = 1 keeps 64 scenarios; with N = 2 the gap bound refuses.
  const auto out = lemma_extend(ExplicitSet::from_unsorted({5}), 1, 5);
  EXPECT_EQ(out.k, 6);
  EXPECT_EQ(out.scenario_count, pow(count_language(SpacingSet::explicit_set({5}), 6), 2));
  EXPECT_EQ(out.scenarios.front().l, 2 * 6 + 5 - 1);
  EXPECT_TRUE(is_q_dispersed(out.B, 5));
  EXPECT_EQ(check_lemma_transcript(out), std::nullopt);
  EXPECT_THROW(lemma_extend(ExplicitSet::from_unsorted({5}), 2, 5), InfeasibleError);
}

TEST(LemmaExtend, DegenerateWhenNoPairs)
{
  const auto out = lemma_extend(ExplicitSet::from_unsorted({3}), 0, 3);
  EXPECT_TRUE(out.degenerate);
  EXPECT_TRUE(out.scenarios.empty());
  EXPECT_EQ(out.B, out.A);
}

TEST(LemmaExtend, RejectsBadInput)
{
  EXPECT_THROW(lemma_extend(ExplicitSet::from_unsorted({3}), 1, 2), std::invalid_argument);
  EXPECT_THROW(lemma_extend(ExplicitSet::from_unsorted({}), 1, 3), std::invalid_argument);
  EXPECT_THROW(lemma_extend(ExplicitSet::from_unsorted({3, 4}), 1, 3), std::invalid_argument);
  EXPECT_THROW(lemma_extend(ExplicitSet::from_unsorted({2}), 1, 3), std::invalid_argument);
}

TEST(LemmaExtend, RefusalsNameTheBlockingQuantity)
{
  auto quantity = [](auto&& f) -> std::string {
    try {
      f();
    } catch (const InfeasibleError& e) {
      return e.quantity();
    }
    return "";
  };
  EXPECT_EQ(quantity([] { lemma_extend(ExplicitSet::from_unsorted({3}), 4, 3); }), "scenario count");
  EXPECT_EQ(quantity([] { lemma_extend(ExplicitSet::from_unsorted({3}), 2, 3); }), "gap bits");
  EXPECT_EQ(quantity([] { lemma_extend(ExplicitSet::from_unsorted({30}), 1, 3); }), "k");
}

TEST(MinimalGapLengths, Recurrence)
{
  EXPECT_EQ(minimal_gap_lengths(4, 3, 1, 4), (std::vector<BigInt>{10, 20, 80, 640}));
  EXPECT_EQ(minimal_gap_lengths(4, 3, 2, 3), (std::vector<BigInt>{10, 30, 270}));
  EXPECT_TRUE(minimal_gap_lengths(4, 3, 1, 0).empty());
}

TEST(StagedP, StageZero)
{
  const auto s = staged_p(3, 0);
  ASSERT_EQ(s.stages.size(), 1U);
  EXPECT_EQ(s.stages[0], ExplicitSet::from_unsorted({3}));
  EXPECT_TRUE(s.transcripts.empty());
}

TEST(StagedP, FirstStageMatchesTheLemma)
{
  const auto s = staged_p(3, 1);
  ASSERT_EQ(s.stages.size(), 2U);
  EXPECT_EQ(s.stages[1], small_lemma().B);
  EXPECT_EQ(check_staged(s), std::nullopt);
}

TEST(StagedP, DefaultConventionRefusesStageTwo)
{
  try {
    staged_p(3, 2);
    FAIL() << "expected refusal";
  } catch (const InfeasibleError& e) {
    EXPECT_EQ(e.quantity(), "k");
    EXPECT_NE(std::string(e.what()).find("stage 2"), std::string::npos);
  }
}

TEST(StagedP, LiteralConventionReachesStageTwo)
{
  const auto s = staged_p(3, 2, StageConvention::Literal);
  ASSERT_EQ(s.stages.size(), 3U);
  EXPECT_EQ(s.stages[1], s.stages[0]);
  EXPECT_TRUE(s.transcripts[0].degenerate);
  EXPECT_EQ(s.stages[2], small_lemma().B);
  for (const auto& stage : s.stages)
    EXPECT_TRUE(is_q_dispersed(stage, 3));
  EXPECT_EQ(check_staged(s), std::nullopt);
  EXPECT_THROW(staged_p(3, 3, StageConvention::Literal), InfeasibleError);
}

TEST(StagedP, RejectsSmallM) { EXPECT_THROW(staged_p(2, 1), std::invalid_argument); }

} // namespace
} // namespace spacing
