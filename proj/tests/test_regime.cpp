#include <gtest/gtest.h>

#include "deltaqm/regime.hpp"
#include "deltaqm/scattering.hpp"

using namespace deltaqm;
using namespace deltaqm::regime;

namespace {

ProbabilityTableRow row(std::initializer_list<char const *> entries)
{
  std::vector<ExactProbability> v;
  for (auto e : entries)
    v.push_back(ExactProbability::parse(e));
  return ProbabilityTableRow(std::move(v));
}

std::vector<Regime> pattern(int K)
{
  std::vector<Regime> out;
  for (auto const & [k, v] : classify_table(K))
    out.push_back(v.regime);
  return out;
}

constexpr auto Q = Regime::Quantum;
constexpr auto I = Regime::Intermediate;
constexpr auto C = Regime::Classical;
constexpr auto T = Regime::ClassicalWithTie;

} // namespace

TEST(ClassifyRow, IntermediateFiveThree)
{
  auto const v = classify_row(row({"0", "0", "3/10", "7/10", "1", "1"}));
  EXPECT_EQ(v.regime, Regime::Intermediate);
  EXPECT_FALSE(v.quantum_realizability_undecided);
  std::vector<Witness> const expected{
      {WitnessKind::NonQuantumZeroTransmission, ElectricState(1, 4)},
      {WitnessKind::NonClassicalIndeterminism, ElectricState(2, 3)},
      {WitnessKind::NonClassicalIndeterminism, ElectricState(3, 2)},
  };
  EXPECT_EQ(v.witnesses, expected);
}

TEST(ClassifyRow, Examples)
{
  EXPECT_EQ(classify_row(row({"0", "1/5", "2/5", "3/5", "4/5", "1"})).regime, Regime::Quantum);
  EXPECT_EQ(classify_row(row({"0", "0", "1", "1"})).regime, Regime::Classical);

  auto const tie = classify_row(row({"0", "0", "0", "1/2", "1", "1", "1"}));
  EXPECT_EQ(tie.regime, Regime::ClassicalWithTie);
  ASSERT_EQ(tie.witnesses.size(), 1u);
  EXPECT_EQ(tie.witnesses[0].state, ElectricState(3, 3));
}

TEST(ClassifyRow, UndecidedWithoutTransmissionZero)
{
  auto const v = classify_row(row({"0", "1/3", "1/2", "1"}));
  EXPECT_EQ(v.regime, Regime::Intermediate);
  EXPECT_TRUE(v.quantum_realizability_undecided);
  for (auto const & w : v.witnesses)
    EXPECT_EQ(w.kind, WitnessKind::NonClassicalIndeterminism);
}

TEST(ClassifyRow, HalfAtUnbalancedStateIsNotTie)
{
  EXPECT_EQ(classify_row(row({"0", "1/2", "1", "1", "1"})).regime, Regime::Intermediate);
  // Odd K has no balanced state.
  EXPECT_EQ(classify_row(row({"0", "1/2", "1", "1"})).regime, Regime::Intermediate);
}

TEST(ClassifyRow, RejectsMalformedRows)
{
  EXPECT_THROW(ProbabilityTableRow({ExactProbability::one()}), std::invalid_argument);
  EXPECT_THROW(ProbabilityTableRow({}), std::invalid_argument);
  EXPECT_THROW(row({"0", "3/2"}), std::invalid_argument);
}

TEST(ClassifyTable, Examples)
{
  EXPECT_EQ(pattern(7), (std::vector<Regime>{Q, Q, I, I, I, I, C}));
  EXPECT_EQ(pattern(5), (std::vector<Regime>{Q, Q, I, I, C}));
  EXPECT_EQ(pattern(3), (std::vector<Regime>{Q, Q, C}));
  EXPECT_EQ(pattern(1), (std::vector<Regime>{C}));
  EXPECT_EQ(pattern(2), (std::vector<Regime>{T, T}));
  EXPECT_EQ(pattern(6), (std::vector<Regime>{Q, Q, I, I, T, T}));
  EXPECT_THROW(classify_table(0), std::invalid_argument);
}

TEST(WronskianWitnesses, Examples)
{
  auto const t5 = probability_table(5);
  EXPECT_EQ(wronskian_witnesses(row_of(t5, 3)), std::vector<ElectricState>{ElectricState(1, 4)});
  EXPECT_TRUE(wronskian_witnesses(row_of(t5, 1)).empty());

  auto const t7 = probability_table(7);
  EXPECT_EQ(wronskian_witnesses(row_of(t7, 5)), (std::vector<ElectricState>{ElectricState(1, 6), ElectricState(2, 5)}));
}

TEST(WronskianWitnesses, ZeroAtInfiniteEnergyIsFlagged)
{
  auto const w = wronskian_witnesses(row({"0", "1/2", "0"}));
  EXPECT_EQ(w, std::vector<ElectricState>{ElectricState(2, 0)});
}

TEST(RegimeProperties, OddPattern)
{
  for (int K = 5; K <= 15; K += 2)
  {
    auto const p = pattern(K);
    for (int k = 1; k <= K; ++k)
    {
      Regime const expected = k <= 2 ? Q : (k == K ? C : I);
      EXPECT_EQ(p[k - 1], expected) << "K=" << K << " k=" << k;
    }
  }
}

TEST(RegimeProperties, EvenTopRowsAreIdenticalTies)
{
  for (int K = 2; K <= 14; K += 2)
  {
    auto const t = probability_table(K);
    auto const verdicts = classify_table(t);
    EXPECT_EQ(verdicts.at(K - 1).regime, T) << "K=" << K;
    EXPECT_EQ(verdicts.at(K).regime, T) << "K=" << K;
    EXPECT_EQ(t.row(K - 1), t.row(K));
  }
}

TEST(RegimeProperties, QuantumRowsAreExactlyTheBornCurve)
{
  // For K <= 2 deterministic verdicts take precedence over the Born match.
  for (int K = 3; K <= 12; ++K)
  {
    auto const t = probability_table(K);
    for (int k = 1; k <= K; ++k)
    {
      bool matches = true;
      for (int kp = 0; kp <= K; ++kp)
      {
        double const born = kp == K ? 1.0 : scattering::transmission_probability(static_cast<double>(kp) / (K - kp));
        matches = matches && std::abs(born - t.at(k, kp).to_double()) <= 1e-12;
      }
      EXPECT_EQ(matches, classify_row(row_of(t, k)).regime == Q) << "K=" << K << " k=" << k;
    }
  }
}

TEST(RegimeProperties, IntermediateWitnessesReverify)
{
  for (int K = 1; K <= 16; ++K)
    for (auto const & [k, v] : classify_table(K))
    {
      EXPECT_FALSE(v.witnesses.empty());
      EXPECT_TRUE(witnesses_hold(v, KMeasurement{k}));
      if (v.regime != I)
        continue;
      bool non_quantum = false, non_classical = false;
      for (auto const & w : v.witnesses)
      {
        non_quantum = non_quantum || w.kind == WitnessKind::NonQuantumZeroTransmission;
        non_classical = non_classical || w.kind == WitnessKind::NonClassicalIndeterminism;
      }
      EXPECT_TRUE(non_quantum && non_classical) << "K=" << K << " k=" << k;
    }
}

TEST(RegimeProperties, WitnessCheckDetectsForgery)
{
  RegimeVerdict forged{I, {{WitnessKind::NonQuantumZeroTransmission, ElectricState(3, 2)}}};
  EXPECT_FALSE(witnesses_hold(forged, KMeasurement{3}));
  RegimeVerdict forged2{I, {{WitnessKind::NonClassicalIndeterminism, ElectricState(4, 1)}}};
  EXPECT_FALSE(witnesses_hold(forged2, KMeasurement{3}));
}
