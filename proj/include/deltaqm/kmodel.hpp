#ifndef DELTAQM_KMODEL_HPP
#define DELTAQM_KMODEL_HPP

/** @file deltaqm/kmodel.hpp
    @brief Exact transmission/reflection probabilities of the k-measurements on S_K.

    A k-measurement releases the spheres in tranches of k. The first tranche alone
    decides the tilt of the lever: a strictly positive charge transmits, a strictly
    negative one reflects, and a neutral tranche (even k only) goes either way with
    probability 1/2. The transmission probability is therefore a hypergeometric
    tail sum over the composition of that first tranche.
 */

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltaqm/types.hpp"

namespace deltaqm {

inline constexpr int default_table_ceiling = 64;

/// C(n, r), zero whenever r < 0 or r > n.
inline BigInt binomial(int n, int r)
{
  if (n < 0 || r < 0 || r > n)
    return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (int i = 1; i <= r; ++i)
  {
    result *= n - r + i;
    result /= i;
  }
  return result;
}

inline ExactProbability transmission_probability_exact(ElectricState const & state, KMeasurement meas)
{
  validate(state, meas);
  int const k = meas.k;
  int const kp = state.k_plus();
  int const km = state.k_minus();

  // m counts the negative spheres in the first tranche; strict positive majority
  // means m < k - m.
  BigInt favourable = 0;
  for (int m = 0; 2 * m < k; ++m)
    favourable += binomial(kp, k - m) * binomial(km, m);

  BigInt const total = binomial(state.total(), k);
  if (k % 2 == 0)
  {
    BigInt const balanced = binomial(kp, k / 2) * binomial(km, k / 2);
    return ExactProbability(2 * favourable + balanced, 2 * total);
  }
  return ExactProbability(favourable, total);
}

inline ExactProbability reflection_probability_exact(ElectricState const & state, KMeasurement meas)
{
  return transmission_probability_exact(state, meas).complement();
}

/** @brief Transmission probabilities of S_K for every k-measurement and every electric state.

    Rows are k = 1..K, columns K+ = 0..K, i.e. E = K+/K- in increasing order.
 */
class ProbabilityTable
{
public:
  ProbabilityTable(int K, std::vector<std::vector<ExactProbability>> rows) : K_(K), rows_(std::move(rows)) {}

  int K() const noexcept { return K_; }

  ExactProbability const & at(int k, int k_plus) const { return rows_.at(k - 1).at(k_plus); }
  std::vector<ExactProbability> const & row(int k) const { return rows_.at(k - 1); }

  friend bool operator==(ProbabilityTable const &, ProbabilityTable const &) = default;

private:
  int K_;
  std::vector<std::vector<ExactProbability>> rows_;
};

inline void validate_table_size(int K, int ceiling)
{
  if (K < 1)
    throw std::invalid_argument("probability table: K must be at least 1");
  if (K > ceiling)
    throw std::invalid_argument("probability table: K = " + std::to_string(K) + " exceeds ceiling " +
                                std::to_string(ceiling));
}

inline ProbabilityTable probability_table(int K, int ceiling = default_table_ceiling)
{
  validate_table_size(K, ceiling);
  std::vector<std::vector<ExactProbability>> rows(K);
  for (int k = 1; k <= K; ++k)
  {
    rows[k - 1].reserve(K + 1);
    for (int kp = 0; kp <= K; ++kp)
      rows[k - 1].push_back(transmission_probability_exact(ElectricState(kp, K - kp), KMeasurement{k}));
  }
  return ProbabilityTable(K, std::move(rows));
}

/// Smallest k from which the outcome is certain: 2 min(K+, K-) + 1. May exceed K.
inline int determinism_threshold(ElectricState const & state) noexcept
{
  return 2 * std::min(state.k_plus(), state.k_minus()) + 1;
}

} // namespace deltaqm

#endif
