#ifndef DELTAQM_RNG_HPP
#define DELTAQM_RNG_HPP

/** @file deltaqm/rng.hpp
    @brief The single random generator used by every simulation, and its seed-splitting rule.

    Generator: SplitMix64 (Steele, Lea, Flood 2014). Splitting is counter based:
    trial i of an ensemble with master seed s runs on a fresh SplitMix64 stream whose
    seed is the (i+1)-th output of SplitMix64 started at s, i.e. mix(s + (i+1) * gamma).
    A trial's result therefore depends only on (s, i), never on the order in which
    trials are executed.

    Bounded integers use rejection sampling and reals take the top 53 bits, so
    streams are bit-identical across platforms and standard libraries (unlike the
    std:: distributions).
 */

#include <cstdint>
#include <limits>

namespace deltaqm {

inline constexpr char const * generator_name = "splitmix64-counter-v1";

class SplitMix64
{
public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ull;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept
  {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t operator()() noexcept
  {
    state_ += gamma;
    return mix(state_);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Uniform integer in [0, bound), bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept
  {
    std::uint64_t const threshold = (0 - bound) % bound;
    for (;;)
    {
      std::uint64_t const r = (*this)();
      if (r >= threshold)
        return r % bound;
    }
  }

  /// Uniform real in [0, 1) with 53 random bits.
  constexpr double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  constexpr bool coin() noexcept { return ((*this)() >> 63) != 0; }

private:
  std::uint64_t state_;
};

/// Seed of trial `index` in an ensemble driven by `master`.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) noexcept
{
  return SplitMix64::mix(master + (index + 1) * SplitMix64::gamma);
}

} // namespace deltaqm

#endif
