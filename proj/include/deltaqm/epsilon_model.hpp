#ifndef DELTAQM_EPSILON_MODEL_HPP
#define DELTAQM_EPSILON_MODEL_HPP

/** @file deltaqm/epsilon_model.hpp
    @brief Spin quantum machine with epsilon-elastics.

    The particle sits at coordinate c = cos(theta) on an elastic stretched over
    [-1, 1] between -u and +u. The elastic breaks uniformly on its central segment
    [-eps, eps] and never outside it. A break below the particle leaves it on the
    upper fragment, which pulls it to +u.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "deltaqm/ensemble.hpp"
#include "deltaqm/rng.hpp"

namespace deltaqm::epsilon {

struct OutcomePair
{
  double p_plus;
  double p_minus;
};

class ElasticExperiment
{
public:
  ElasticExperiment(double theta, double epsilon) : theta_(theta), epsilon_(epsilon)
  {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw std::invalid_argument("ElasticExperiment: theta must lie in [0, pi]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
      throw std::invalid_argument("ElasticExperiment: epsilon must lie in [0, 1]");
  }

  /// From the state direction v and the elastic direction u; both are normalized first.
  static ElasticExperiment from_vectors(std::array<double, 3> const & v, std::array<double, 3> const & u,
                                        double epsilon)
  {
    double const nv = std::hypot(v[0], v[1], v[2]);
    double const nu = std::hypot(u[0], u[1], u[2]);
    if (!(nv > 0.0) || !(nu > 0.0))
      throw std::invalid_argument("ElasticExperiment: direction vectors must be nonzero");
    double const c = (v[0] * u[0] + v[1] * u[1] + v[2] * u[2]) / (nv * nu);
    return ElasticExperiment(std::acos(std::clamp(c, -1.0, 1.0)), epsilon);
  }

  double theta() const noexcept { return theta_; }
  double epsilon() const noexcept { return epsilon_; }
  double projection() const { return std::cos(theta_); }

private:
  double theta_;
  double epsilon_;
};

inline OutcomePair quantum_spin_probabilities(double theta)
{
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::invalid_argument("quantum_spin_probabilities: theta must lie in [0, pi]");
  double const c = std::cos(theta / 2.0);
  double const s = std::sin(theta / 2.0);
  return {c * c, s * s};
}

/// Probabilities of landing at the particle's projection c for an elastic breakable on [-eps, eps].
inline OutcomePair epsilon_probabilities_at(double c, double eps)
{
  if (eps == 0.0)
  {
    if (c > 0.0)
      return {1.0, 0.0};
    if (c < 0.0)
      return {0.0, 1.0};
    return {0.5, 0.5};
  }
  if (c >= eps)
    return {1.0, 0.0};
  if (c <= -eps)
    return {0.0, 1.0};
  return {(eps + c) / (2.0 * eps), (eps - c) / (2.0 * eps)};
}

inline OutcomePair epsilon_probabilities(ElasticExperiment const & exp)
{
  return epsilon_probabilities_at(exp.projection(), exp.epsilon());
}

/// One breaking of the elastic; true for the +u outcome. A break exactly at the particle is a fair coin.
inline TrialTally elastic_trial(double c, double eps, std::uint64_t seed)
{
  SplitMix64 rng(seed);
  double const breaking_point = -eps + 2.0 * eps * rng.unit();
  if (breaking_point < c)
    return {true, false};
  if (breaking_point > c)
    return {false, false};
  return {rng.coin(), true};
}

/** @brief Empirical frequency of the +u outcome; trial i runs on trial_seed(seed, i). */
inline EnsembleResult simulate_elastic(ElasticExperiment const & exp, std::uint64_t n_trials, std::uint64_t seed,
                                       EnsembleOptions const & options = {})
{
  double const c = exp.projection();
  double const eps = exp.epsilon();
  auto trial = [c, eps](std::uint64_t trial_seed) { return elastic_trial(c, eps, trial_seed); };
  return run_seeded_ensemble(trial, n_trials, seed, options);
}

} // namespace deltaqm::epsilon

#endif
