#ifndef DELTAQM_TYPES_HPP
#define DELTAQM_TYPES_HPP

/** @file deltaqm/types.hpp
    @brief Electric states, k-measurements and exact probabilities shared by all modules.
 */

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace deltaqm {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/** @brief Prepared electric state of the compound entity: K+ positive and K- negative spheres.

    The energy label E = K+/K- is kept as the integer pair; E = infinity is the
    state with no negative sphere.
 */
class ElectricState
{
public:
  ElectricState(int k_plus, int k_minus) : k_plus_(k_plus), k_minus_(k_minus)
  {
    if (k_plus < 0 || k_minus < 0)
      throw std::invalid_argument("ElectricState: sphere counts must be nonnegative");
    if (k_plus + k_minus < 1)
      throw std::invalid_argument("ElectricState: entity must contain at least one sphere");
  }

  int k_plus() const noexcept { return k_plus_; }
  int k_minus() const noexcept { return k_minus_; }
  int total() const noexcept { return k_plus_ + k_minus_; }

  /// Total charge in units of q.
  int charge() const noexcept { return k_plus_ - k_minus_; }

  bool infinite_energy() const noexcept { return k_minus_ == 0; }
  bool zero_energy() const noexcept { return k_plus_ == 0; }
  bool balanced() const noexcept { return k_plus_ == k_minus_; }

  /// "K+/K-" with the infinite label spelled "inf".
  std::string energy_label() const
  {
    if (infinite_energy())
      return "inf";
    return std::to_string(k_plus_) + "/" + std::to_string(k_minus_);
  }

  friend bool operator==(ElectricState const &, ElectricState const &) = default;

private:
  int k_plus_;
  int k_minus_;
};

/// Tranche size k of a k-measurement.
struct KMeasurement
{
  int k;

  friend bool operator==(KMeasurement const &, KMeasurement const &) = default;
};

inline void validate(ElectricState const & state, KMeasurement meas)
{
  if (meas.k < 1 || meas.k > state.total())
    throw std::invalid_argument("k-measurement: k = " + std::to_string(meas.k) +
                                " outside [1, " + std::to_string(state.total()) + "]");
}

/** @brief An exact rational probability in [0, 1], always in lowest terms. */
class ExactProbability
{
public:
  ExactProbability() = default;

  explicit ExactProbability(BigRational value) : value_(std::move(value))
  {
    if (value_ < 0 || value_ > 1)
      throw std::invalid_argument("ExactProbability: value " + to_string(value_) + " outside [0, 1]");
  }

  ExactProbability(BigInt numerator, BigInt denominator)
  {
    if (denominator == 0)
      throw std::invalid_argument("ExactProbability: zero denominator");
    *this = ExactProbability(BigRational(std::move(numerator), std::move(denominator)));
  }

  static ExactProbability zero() { return ExactProbability{}; }
  static ExactProbability one() { return ExactProbability(BigRational(1)); }
  static ExactProbability half() { return ExactProbability(BigRational(1, 2)); }

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const { return boost::multiprecision::denominator(value_); }
  BigRational const & value() const noexcept { return value_; }

  ExactProbability complement() const { return ExactProbability(BigRational(1) - value_); }

  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_deterministic() const { return is_zero() || is_one(); }

  double to_double() const { return value_.convert_to<double>(); }

  /// "num/den", or just "num" when the denominator is 1.
  std::string to_string() const { return to_string(value_); }

  friend bool operator==(ExactProbability const & a, ExactProbability const & b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(ExactProbability const & a, ExactProbability const & b)
  {
    if (a.value_ < b.value_)
      return std::strong_ordering::less;
    if (a.value_ > b.value_)
      return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Parses "n/d" or "n".
  static ExactProbability parse(std::string_view text)
  {
    auto const slash = text.find('/');
    try
    {
      if (slash == std::string_view::npos)
        return ExactProbability(BigInt(std::string(text)), BigInt(1));
      return ExactProbability(BigInt(std::string(text.substr(0, slash))),
                              BigInt(std::string(text.substr(slash + 1))));
    }
    catch (std::runtime_error const &)
    {
      throw std::invalid_argument("ExactProbability: cannot parse '" + std::string(text) + "'");
    }
  }

private:
  static std::string to_string(BigRational const & r)
  {
    auto const den = boost::multiprecision::denominator(r);
    if (den == 1)
      return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + den.str();
  }

  BigRational value_{0};
};

} // namespace deltaqm

#endif
