#include <gtest/gtest.h>

#include <set>

#include "deltaqm/rng.hpp"
#include "deltaqm/types.hpp"

using namespace deltaqm;

TEST(ElectricState, DerivedQuantities)
{
  ElectricState const s(4, 3);
  EXPECT_EQ(s.total(), 7);
  EXPECT_EQ(s.charge(), 1);
  EXPECT_EQ(s.energy_label(), "4/3");
  EXPECT_FALSE(s.infinite_energy());

  ElectricState const inf(5, 0);
  EXPECT_TRUE(inf.infinite_energy());
  EXPECT_EQ(inf.energy_label(), "inf");
  EXPECT_EQ(inf.charge(), 5);
  EXPECT_TRUE(ElectricState(0, 5).zero_energy());
}

TEST(ElectricState, RejectsEmptyOrNegative)
{
  EXPECT_THROW(ElectricState(0, 0), std::invalid_argument);
  EXPECT_THROW(ElectricState(-1, 3), std::invalid_argument);
  EXPECT_THROW(ElectricState(2, -1), std::invalid_argument);
}

TEST(KMeasurement, RangeIsOneToK)
{
  ElectricState const s(2, 3);
  EXPECT_NO_THROW(validate(s, KMeasurement{1}));
  EXPECT_NO_THROW(validate(s, KMeasurement{5}));
  EXPECT_THROW(validate(s, KMeasurement{0}), std::invalid_argument);
  EXPECT_THROW(validate(s, KMeasurement{6}), std::invalid_argument);
}

TEST(ExactProbability, LowestTermsAndRange)
{
  ExactProbability const p(BigInt(44), BigInt(70));
  EXPECT_EQ(p.numerator(), 22);
  EXPECT_EQ(p.denominator(), 35);
  EXPECT_EQ(p.to_string(), "22/35");
  EXPECT_EQ(p.complement().to_string(), "13/35");
  EXPECT_EQ(ExactProbability::one().to_string(), "1");
  EXPECT_EQ(ExactProbability::zero().to_string(), "0");

  EXPECT_THROW(ExactProbability(BigInt(3), BigInt(2)), std::invalid_argument);
  EXPECT_THROW(ExactProbability(BigInt(-1), BigInt(2)), std::invalid_argument);
  EXPECT_THROW(ExactProbability(BigInt(1), BigInt(0)), std::invalid_argument);
}

TEST(ExactProbability, ParseAndOrder)
{
  EXPECT_EQ(ExactProbability::parse("3/10"), ExactProbability(BigInt(3), BigInt(10)));
  EXPECT_EQ(ExactProbability::parse("1"), ExactProbability::one());
  EXPECT_THROW(ExactProbability::parse("abc"), std::invalid_argument);
  EXPECT_THROW(ExactProbability::parse("7/5"), std::invalid_argument);
  EXPECT_LT(ExactProbability::parse("1/3"), ExactProbability::half());
}

TEST(SplitMix64, ReferenceOutputs)
{
  // First outputs for seed 1234567, as produced by the reference C implementation.
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng(), 6457827717110365317ull);
  EXPECT_EQ(rng(), 3203168211198807973ull);
  EXPECT_EQ(rng(), 9817491932198370423ull);
}

TEST(SplitMix64, TrialSeedsAreTheMasterStream)
{
  SplitMix64 master(42);
  for (std::uint64_t i = 0; i < 100; ++i)
    EXPECT_EQ(trial_seed(42, i), master());
}

TEST(SplitMix64, BoundedDrawsCoverRange)
{
  SplitMix64 rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i)
  {
    auto const v = rng.below(6);
    ASSERT_LT(v, 6u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
  for (int i = 0; i < 1000; ++i)
  {
    double const u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}
