#include <gtest/gtest.h>

#include "spacing/constructions.hpp"
#include "spacing/transitivity.hpp"
#include "test_support.hpp"

namespace spacing {
namespace {

using testing::DenseWord;
using testing::Rng;

const PartialPattern one = PartialPattern::cylinder("1");
const PartialPattern zero = PartialPattern::cylinder("0");

SpacingSet full_set(std::uint64_t h)
{
  std::vector<BigInt> all;
  for (std::uint64_t v = 1; v <= h; ++v)
    all.emplace_back(v);
  return SpacingSet::explicit_set(all);
}

std::vector<std::uint64_t> up_to(std::uint64_t h)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 1; v <= h; ++v)
    out.push_back(v);
  return out;
}

TEST(HittingTimes, SingleOneGivesP)
{
  EXPECT_EQ(hitting_times(one, one, SpacingSet::explicit_set({3, 7, 20}), 10), (std::vector<std::uint64_t>{3, 7}));
  EXPECT_EQ(hitting_times(one, one, SpacingSet::blocks(2), 1000), members_up_to(SpacingSet::blocks(2), 1000));
}

TEST(HittingTimes, ZeroCylinderHitsAlways)
{
  EXPECT_EQ(hitting_times(zero, zero, SpacingSet::blocks(3), 50), up_to(50));
  EXPECT_EQ(hitting_times(zero, zero, SpacingSet::explicit_set({}), 50), up_to(50));
}

TEST(HittingTimes, DoubleOnes)
{
  const auto u = PartialPattern::cylinder("11");
  const auto hits = hitting_times(u, u, SpacingSet::explicit_set({1, 2}), 5);
  EXPECT_EQ(hits, (std::vector<std::uint64_t>{1}));
  const auto merged = intersect(u, shift(u, 1), SpacingSet::explicit_set({1, 2}));
  ASSERT_TRUE(merged);
  EXPECT_EQ(merged->ones(), (std::vector<BigInt>{0, 1, 2}));
}

// Hitting oracle: some admissible dense word carries u at 0 and v at n, searched over the whole language.
bool dense_hits(const std::vector<DenseWord>& language, const DenseWord& u, const DenseWord& v, unsigned n)
{
  auto agrees = [](const DenseWord& w, const DenseWord& pattern, unsigned at) {
    for (unsigned i = 0; i < pattern.length; ++i)
      if ((w.bits >> (at + i) & 1U) != (pattern.bits >> i & 1U))
        return false;
    return true;
  };
  for (const auto& w : language)
    if (agrees(w, u, 0) && agrees(w, v, n))
      return true;
  return false;
}

TEST(HittingTimes, MatchesLanguageBruteForce)
{
  Rng rng(101);
  constexpr unsigned horizon = 9;
  for (int trial = 0; trial < 60; ++trial) {
    const auto allowed = testing::random_subset(rng, 1, 13, 0.5);
    const auto language = testing::brute_language(allowed, horizon + 4);
    const auto set = testing::to_set(allowed);
    const auto u = testing::random_dense(rng, 1 + trial % 4);
    const auto v = testing::random_dense(rng, 1 + (trial / 4) % 4);
    std::vector<std::uint64_t> expected;
    for (unsigned n = 1; n <= horizon; ++n)
      if (dense_hits(language, u, v, n))
        expected.push_back(n);
    const auto pu = PartialPattern::cylinder(testing::to_word(u));
    const auto pv = PartialPattern::cylinder(testing::to_word(v));
    EXPECT_EQ(hitting_times(pu, pv, set, horizon), expected) << "trial " << trial;
  }
}

TEST(HittingTimes, ShiftCovariance)
{
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto set = testing::to_set(testing::random_subset(rng, 1, 30, 0.4));
    const auto u = PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 4)));
    const auto v = PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 4)));
    const std::uint64_t s = 1 + trial % 5;
    auto base = hitting_times(u, v, set, 40);
    std::vector<std::uint64_t> shifted;
    for (auto n : base)
      shifted.push_back(n + s);
    auto moved = hitting_times(shift(u, s), v, set, 40 + s);
    std::erase_if(moved, [&](std::uint64_t n) { return n <= s; });
    EXPECT_EQ(moved, shifted);
  }
}

TEST(ProductHitting, Examples)
{
  const ProductQuery single{SpacingSet::blocks(2), {1}, {one}, {one}, 5000};
  EXPECT_EQ(product_hitting(single), members_up_to(SpacingSet::blocks(2), 5000));

  const ProductQuery pair{SpacingSet::blocks(2), {1, 2}, {one, one}, {one, one}, 100'000};
  EXPECT_TRUE(product_hitting(pair).empty());

  const auto w = PartialPattern::cylinder(Word(9, {0, 8}));
  const ProductQuery p3{SpacingSet::blocks(3), {1, 2}, {w, w}, {w, w}, 100};
  const auto hits = product_hitting(p3);
  EXPECT_TRUE(std::find(hits.begin(), hits.end(), 36U) != hits.end());
  // Cross-spacings at n = 36: {28, 36, 44} and {64, 72, 80}, all inside B(3,2) = [27, 80].
  EXPECT_EQ(product_hit_at(p3, 36)->at(0).ones(), (std::vector<BigInt>{0, 8, 36, 44}));
}

TEST(ProductHitting, TwoRoutesAgree)
{
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const auto set = testing::to_set(testing::random_subset(rng, 1, 60, 0.5));
    const std::vector<std::uint64_t> exponents{1 + trial % 2, 2 + trial % 3};
    std::vector<PartialPattern> us;
    std::vector<PartialPattern> vs;
    for (int i = 0; i < 2; ++i) {
      us.push_back(PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3))));
      vs.push_back(PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3))));
    }
    const ProductQuery q{set, exponents, us, vs, 25};
    EXPECT_EQ(product_hitting(q), product_hitting_by_coordinates(q));
  }
  for (std::uint64_t m : {2, 3}) {
    const ProductQuery q{SpacingSet::blocks(m), {1, m}, {one, one}, {one, one}, 3000};
    EXPECT_EQ(product_hitting(q), product_hitting_by_coordinates(q));
  }
}

TEST(ProductHitting, DeterministicAcrossWorkerCounts)
{
  const auto w = PartialPattern::cylinder(Word(9, {0, 8}));
  const ProductQuery q{SpacingSet::blocks(3), {1, 2}, {w, w}, {w, w}, 20'000};
  const auto serial = product_hitting(q, ScanOptions{1});
  EXPECT_EQ(product_hitting(q, ScanOptions{4, 64}), serial);
  EXPECT_EQ(product_hitting(q, ScanOptions{0, 7}), serial);
  EXPECT_EQ(product_witness(q, ScanOptions{1}), product_witness(q, ScanOptions{3, 5}));
}

TEST(ProductHitting, RejectsMalformedQueries)
{
  EXPECT_THROW(product_hitting(ProductQuery{SpacingSet::blocks(2), {}, {}, {}, 10}), std::invalid_argument);
  EXPECT_THROW(product_hitting(ProductQuery{SpacingSet::blocks(2), {0}, {one}, {one}, 10}), std::invalid_argument);
  EXPECT_THROW(product_hitting(ProductQuery{SpacingSet::blocks(2), {1}, {one}, {one}, 0}), std::invalid_argument);
  EXPECT_THROW(product_hitting(ProductQuery{SpacingSet::blocks(2), {1, 2}, {one}, {one}, 5}), std::invalid_argument);
}

TEST(MultiTransitivity, Examples)
{
  const auto trivial = multi_transitivity_witness(SpacingSet::blocks(2), {one}, {one}, 100);
  EXPECT_EQ(trivial.witness, 2U);
  EXPECT_EQ(trivial.verdict.status, Status::Proven);

  const auto p2 = multi_transitivity_witness(SpacingSet::blocks(2), {one, one}, {one, one}, 100'000);
  EXPECT_FALSE(p2.witness);
  EXPECT_EQ(p2.verdict.status, Status::Refuted);
  EXPECT_EQ(p2.verdict.structural, "not-mp");

  const auto w = PartialPattern::cylinder(Word(9, {0, 8}));
  const auto p3 = multi_transitivity_witness(SpacingSet::blocks(3), {w, w}, {w, w}, 100);
  ASSERT_TRUE(p3.witness);
  EXPECT_LE(*p3.witness, 36U);
  EXPECT_EQ(p3.merged.size(), 2U);
}

TEST(MultiTransitivity, ExponentsOneThreeCarryNoStructuralClaim)
{
  const ProductQuery q{SpacingSet::blocks(2), {1, 3}, {one, one}, {one, one}, 100'000};
  const auto r = product_witness(q);
  EXPECT_EQ(r.witness, 3U); // 3 ∈ B(2,1), 9 ∈ B(2,2)
  EXPECT_EQ(r.verdict.structural, "explicit-witness");
  EXPECT_EQ(r.verdict.status, Status::Proven);
}

TEST(DeltaTransitivity, Examples)
{
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto set = testing::to_set(testing::random_subset(rng, 1, 30, 0.5));
    const auto u = PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3)));
    const auto v = PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3)));
    const auto hits = hitting_times(u, v, set, 30);
    const auto r = delta_transitivity_witness(set, u, {v}, 30);
    EXPECT_EQ(r.witness, hits.empty() ? std::nullopt : std::optional<std::uint64_t>(hits.front()));
  }

  const auto p2 = delta_transitivity_witness(SpacingSet::blocks(2), one, {one, one}, 100'000);
  EXPECT_FALSE(p2.witness);
  EXPECT_EQ(p2.verdict.structural, "not-mp");

  const auto full = delta_transitivity_witness(full_set(50), one, {one, one}, 50);
  EXPECT_EQ(full.witness, 1U);
  ASSERT_EQ(full.merged.size(), 1U);
  EXPECT_EQ(full.merged[0].ones(), (std::vector<BigInt>{0, 1, 2}));
}

// A single point in U ∩ σ^(-n)V_1 ∩ σ^(-2n)V_2 also witnesses the product (U × U) ∩ (f × f^2)^(-n)(V_1 × V_2).
TEST(DeltaTransitivity, HitsAreProductHits)
{
  Rng rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    const auto set = testing::to_set(testing::random_subset(rng, 1, 50, 0.5));
    const auto u = PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3)));
    const std::vector<PartialPattern> vs{PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3))),
                                         PartialPattern::cylinder(testing::to_word(testing::random_dense(rng, 3)))};
    const auto q = staircase_query(set, {u, u}, vs, 20);
    const auto product = product_hitting(q);
    for (std::uint64_t n = 1; n <= 20; ++n)
      if (delta_pattern_at(set, u, vs, n))
        EXPECT_TRUE(std::binary_search(product.begin(), product.end(), n)) << n;
  }
}

TEST(WeakMixing, Examples)
{
  const auto p2 = weak_mixing_verdict(SpacingSet::blocks(2), 100'000, 128);
  EXPECT_EQ(p2.status, Status::Proven);
  EXPECT_EQ(p2.structural, "block-lengths-unbounded");

  const auto staged = staged_p(3, 2, StageConvention::Literal);
  const auto dispersed = weak_mixing_verdict(SpacingSet(staged.stages.back()), 100, 2);
  EXPECT_EQ(dispersed.status, Status::Refuted);

  const auto finite = weak_mixing_verdict(SpacingSet::explicit_set({5, 6, 7}), 100, 3);
  EXPECT_EQ(finite.status, Status::Refuted);
  EXPECT_EQ(finite.certificate->tag, "finite");
}

TEST(RefuteProduct, BlockFamilies)
{
  for (std::uint64_t m : {2, 3}) {
    const auto r = refute_product_transitivity(SpacingSet::blocks(m), 100'000);
    EXPECT_TRUE(r.hits.empty());
    EXPECT_EQ(r.verdict.status, Status::Refuted);
    EXPECT_EQ(r.verdict.structural, "not-mp");
    EXPECT_TRUE(r.not_mp.holds());
    EXPECT_EQ(r.query.exponents, (std::vector<std::uint64_t>{1, m}));
  }
  EXPECT_THROW(refute_product_transitivity(SpacingSet::explicit_set({3}), 10), std::invalid_argument);
}

TEST(NestedRefinement, FullSetUsesSmallestTimes)
{
  const auto set = full_set(40);
  const auto r = nested_refinement(set, {one}, 2, 40);
  EXPECT_EQ(r.times, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(r.verdict.status, Status::VerifiedUpToHorizon);
  EXPECT_EQ(check_refinement(r, set), std::nullopt);
}

TEST(NestedRefinement, BlockFamilyTwoFailsImmediately)
{
  const auto r = nested_refinement(SpacingSet::blocks(2), {one, one}, 0, 10'000);
  EXPECT_EQ(r.failed_step, 0U);
  EXPECT_TRUE(r.times.empty());
  EXPECT_EQ(r.verdict.status, Status::Refuted);
}

TEST(NestedRefinement, BlockFamilyThreeFirstStep)
{
  const auto w = PartialPattern::cylinder(Word(9, {0, 8}));
  const auto set = SpacingSet::blocks(3);
  const auto r = nested_refinement(set, {w, w}, 1, 2000);
  ASSERT_FALSE(r.times.empty());
  EXPECT_LE(r.times[0], 36U);
  EXPECT_EQ(check_refinement(r, set), std::nullopt);
  // σ^(i k_0)(V_i^(0)) ⊆ V_i: the refined pattern carries V_i at offset i k_0.
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_TRUE(r.refined[0][i].refines(shift(w, BigInt(r.times[0]) * (i + 1))));
}

} // namespace
} // namespace spacing
