#ifndef DELTAQM_REGIME_HPP
#define DELTAQM_REGIME_HPP

/** @file deltaqm/regime.hpp
    @brief Classical / quantum / intermediate classification of transmission-probability rows.

    A row lists P_tr for every electric state K+ = 0..K of one measurement.
    - Classical: every outcome is certain.
    - ClassicalWithTie: certain except the balanced state (even K), which transmits with 1/2,
      the unstable-equilibrium case of a particle arriving exactly at the barrier top.
    - Quantum: every entry is the delta-potential Born value K+/K = E/(1+E).
    - Intermediate: none of the above.
    When several apply (only possible for K <= 2) the first in this list wins.

    Non-quantum evidence is a zero transmission at positive energy: the Wronskian of the
    left- and right-incoming solutions is proportional to T(E) and never vanishes for
    E > 0, so no 1-D Schroedinger scattering can produce such a zero.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltaqm/kmodel.hpp"
#include "deltaqm/types.hpp"

namespace deltaqm::regime {

enum class Regime { Classical, ClassicalWithTie, Quantum, Intermediate };

enum class WitnessKind
{
  AllDeterministic,
  DeterministicExceptBalancedHalf,
  MatchesBornRule,
  NonQuantumZeroTransmission,
  NonClassicalIndeterminism,
};

inline char const * to_string(Regime r)
{
  switch (r)
  {
  case Regime::Classical: return "Classical";
  case Regime::ClassicalWithTie: return "ClassicalWithTie";
  case Regime::Quantum: return "Quantum";
  case Regime::Intermediate: return "Intermediate";
  }
  return "?";
}

inline char const * to_string(WitnessKind w)
{
  switch (w)
  {
  case WitnessKind::AllDeterministic: return "AllDeterministic";
  case WitnessKind::DeterministicExceptBalancedHalf: return "DeterministicExceptBalancedHalf";
  case WitnessKind::MatchesBornRule: return "MatchesBornRule";
  case WitnessKind::NonQuantumZeroTransmission: return "NonQuantumZeroTransmission";
  case WitnessKind::NonClassicalIndeterminism: return "NonClassicalIndeterminism";
  }
  return "?";
}

inline Regime parse_regime(std::string const & s)
{
  for (auto r : {Regime::Classical, Regime::ClassicalWithTie, Regime::Quantum, Regime::Intermediate})
    if (s == to_string(r))
      return r;
  throw std::invalid_argument("unknown regime '" + s + "'");
}

inline WitnessKind parse_witness_kind(std::string const & s)
{
  for (auto w : {WitnessKind::AllDeterministic, WitnessKind::DeterministicExceptBalancedHalf,
                 WitnessKind::MatchesBornRule, WitnessKind::NonQuantumZeroTransmission,
                 WitnessKind::NonClassicalIndeterminism})
    if (s == to_string(w))
      return w;
  throw std::invalid_argument("unknown witness '" + s + "'");
}

struct Witness
{
  WitnessKind kind;
  /// Set for the per-state witnesses (zero transmission, indeterminism).
  std::optional<ElectricState> state;

  friend bool operator==(Witness const &, Witness const &) = default;
};

struct RegimeVerdict
{
  Regime regime;
  std::vector<Witness> witnesses;
  /// Intermediate without a transmission zero: ruled out for the delta potential only,
  /// realizability by some other potential is not decided.
  bool quantum_realizability_undecided = false;

  friend bool operator==(RegimeVerdict const &, RegimeVerdict const &) = default;
};

/// P_tr for K+ = 0..K of a single measurement.
class ProbabilityTableRow
{
public:
  explicit ProbabilityTableRow(std::vector<ExactProbability> entries) : entries_(std::move(entries))
  {
    if (entries_.size() < 2)
      throw std::invalid_argument("ProbabilityTableRow: need K + 1 >= 2 entries");
  }

  int K() const noexcept { return static_cast<int>(entries_.size()) - 1; }
  ElectricState state(int k_plus) const { return ElectricState(k_plus, K() - k_plus); }
  ExactProbability const & at(int k_plus) const { return entries_.at(k_plus); }
  std::vector<ExactProbability> const & entries() const noexcept { return entries_; }

private:
  std::vector<ExactProbability> entries_;
};

inline ProbabilityTableRow row_of(ProbabilityTable const & table, int k)
{
  return ProbabilityTableRow(table.row(k));
}

/// Born value K+/K of the delta potential at E = K+/K-.
inline ExactProbability born_value(ElectricState const & state)
{
  return ExactProbability(BigInt(state.k_plus()), BigInt(state.total()));
}

inline bool is_classical(ProbabilityTableRow const & row)
{
  for (auto const & p : row.entries())
    if (!p.is_deterministic())
      return false;
  return true;
}

inline bool is_classical_with_tie(ProbabilityTableRow const & row)
{
  int const K = row.K();
  if (K % 2 != 0 || row.at(K / 2) != ExactProbability::half())
    return false;
  for (int kp = 0; kp <= K; ++kp)
    if (kp != K / 2 && !row.at(kp).is_deterministic())
      return false;
  return true;
}

inline bool is_quantum(ProbabilityTableRow const & row)
{
  for (int kp = 0; kp <= row.K(); ++kp)
    if (row.at(kp) != born_value(row.state(kp)))
      return false;
  return true;
}

/// States above zero energy (finite or infinite) whose transmission probability is zero.
inline std::vector<ElectricState> wronskian_witnesses(ProbabilityTableRow const & row)
{
  std::vector<ElectricState> out;
  for (int kp = 1; kp <= row.K(); ++kp)
    if (row.at(kp).is_zero())
      out.push_back(row.state(kp));
  return out;
}

inline std::vector<ElectricState> indeterminism_witnesses(ProbabilityTableRow const & row)
{
  std::vector<ElectricState> out;
  for (int kp = 0; kp <= row.K(); ++kp)
    if (!row.at(kp).is_deterministic())
      out.push_back(row.state(kp));
  return out;
}

inline RegimeVerdict classify_row(ProbabilityTableRow const & row)
{
  if (is_classical(row))
    return {Regime::Classical, {{WitnessKind::AllDeterministic, std::nullopt}}};
  if (is_classical_with_tie(row))
    return {Regime::ClassicalWithTie, {{WitnessKind::DeterministicExceptBalancedHalf, row.state(row.K() / 2)}}};
  if (is_quantum(row))
    return {Regime::Quantum, {{WitnessKind::MatchesBornRule, std::nullopt}}};

  RegimeVerdict verdict{Regime::Intermediate, {}};
  for (auto const & s : wronskian_witnesses(row))
    verdict.witnesses.push_back({WitnessKind::NonQuantumZeroTransmission, s});
  verdict.quantum_realizability_undecided = verdict.witnesses.empty();
  for (auto const & s : indeterminism_witnesses(row))
    verdict.witnesses.push_back({WitnessKind::NonClassicalIndeterminism, s});
  return verdict;
}

inline std::map<int, RegimeVerdict> classify_table(ProbabilityTable const & table)
{
  std::map<int, RegimeVerdict> out;
  for (int k = 1; k <= table.K(); ++k)
    out.emplace(k, classify_row(row_of(table, k)));
  return out;
}

inline std::map<int, RegimeVerdict> classify_table(int K, int ceiling = default_table_ceiling)
{
  return classify_table(probability_table(K, ceiling));
}

/** @brief Re-evaluates every state-bearing witness of a k-model verdict from the closed form.

    True when each zero-transmission witness has K+ >= 1 and P_tr = 0, and each
    indeterminism witness has P_tr strictly between 0 and 1.
 */
inline bool witnesses_hold(RegimeVerdict const & verdict, KMeasurement meas)
{
  for (auto const & w : verdict.witnesses)
  {
    if (!w.state)
      continue;
    auto const p = transmission_probability_exact(*w.state, meas);
    if (w.kind == WitnessKind::NonQuantumZeroTransmission && (w.state->k_plus() < 1 || !p.is_zero()))
      return false;
    if (w.kind == WitnessKind::NonClassicalIndeterminism && p.is_deterministic())
      return false;
  }
  return true;
}

} // namespace deltaqm::regime

#endif
