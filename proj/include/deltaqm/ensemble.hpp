#ifndef DELTAQM_ENSEMBLE_HPP
#define DELTAQM_ENSEMBLE_HPP

/** @file deltaqm/ensemble.hpp
    @brief Aggregated Monte Carlo counts and the deterministic parallel driver behind them.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "deltaqm/rng.hpp"
#include "deltaqm/types.hpp"

namespace deltaqm {

inline constexpr double default_z = 3.0;

struct EnsembleOptions
{
  double z = default_z;
  /// 0 or 1 runs sequentially. Counts do not depend on this value.
  unsigned threads = 1;
};

/** @brief Outcome counts of n seeded trials. `successes` counts transmissions (or +u outcomes). */
struct EnsembleResult
{
  std::uint64_t n_trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t ties = 0;
  std::uint64_t seed = 0;
  double z = default_z;
  std::string generator = generator_name;

  ExactProbability frequency() const { return ExactProbability(BigInt(successes), BigInt(n_trials)); }

  double frequency_decimal() const { return static_cast<double>(successes) / static_cast<double>(n_trials); }

  /// z sqrt(f (1 - f) / n) with f the empirical frequency.
  double half_width() const
  {
    double const f = frequency_decimal();
    return z * std::sqrt(f * (1.0 - f) / static_cast<double>(n_trials));
  }

  friend bool operator==(EnsembleResult const &, EnsembleResult const &) = default;
};

/// Normal-approximation half-width z sqrt(p (1 - p) / n) around a known probability p.
inline double normal_half_width(double p, std::uint64_t n, double z)
{
  return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct TrialTally
{
  bool success;
  bool tie;
};

/** @brief Runs `trial(trial_seed(seed, i))` for i in [0, n) and sums the tallies.

    Trials are split in contiguous chunks across threads; integer sums make the
    aggregate independent of the split.
 */
template <class Trial>
EnsembleResult run_seeded_ensemble(Trial const & trial, std::uint64_t n_trials, std::uint64_t seed,
                                   EnsembleOptions const & options)
{
  if (n_trials == 0)
    throw std::invalid_argument("ensemble: n_trials must be at least 1");
  if (!(options.z > 0.0))
    throw std::invalid_argument("ensemble: z must be positive");

  struct Partial
  {
    std::uint64_t successes = 0;
    std::uint64_t ties = 0;
  };
  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Partial & out) {
    for (std::uint64_t i = begin; i < end; ++i)
    {
      TrialTally const t = trial(trial_seed(seed, i));
      out.successes += t.success ? 1 : 0;
      out.ties += t.tie ? 1 : 0;
    }
  };

  std::uint64_t const workers = std::clamp<std::uint64_t>(options.threads, 1, n_trials);
  std::vector<Partial> partials(workers);
  if (workers == 1)
  {
    run_range(0, n_trials, partials[0]);
  }
  else
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w)
    {
      std::uint64_t const begin = n_trials * w / workers;
      std::uint64_t const end = n_trials * (w + 1) / workers;
      pool.emplace_back([&, begin, end, w] { run_range(begin, end, partials[w]); });
    }
  }

  EnsembleResult result;
  result.n_trials = n_trials;
  result.seed = seed;
  result.z = options.z;
  for (auto const & p : partials)
  {
    result.successes += p.successes;
    result.ties += p.ties;
  }
  return result;
}

} // namespace deltaqm

#endif
