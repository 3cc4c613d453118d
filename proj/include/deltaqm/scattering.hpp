#ifndef DELTAQM_SCATTERING_HPP
#define DELTAQM_SCATTERING_HPP

/** @file deltaqm/scattering.hpp
    @brief Stationary scattering of a particle by the repulsive potential V(x) = lambda delta(x).

    Units: hbar = m = 1. The coupling is given as a multiple of sqrt(2 hbar^2 / m), so the
    default multiplier 1 gives kappa = sqrt(E) and P_tr(E) = E / (1 + E).
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltaqm::scattering {

inline constexpr double hbar = 1.0;
inline constexpr double mass = 1.0;

struct ScatteringConfig
{
  /// lambda / sqrt(2 hbar^2 / m).
  double coupling = 1.0;

  double lambda() const { return coupling * std::sqrt(2.0 * hbar * hbar / mass); }
};

inline void validate(ScatteringConfig const & cfg)
{
  if (!(cfg.coupling > 0.0) || !std::isfinite(cfg.coupling))
    throw std::invalid_argument("scattering: coupling must be positive and finite");
}

inline void validate_energy(double E)
{
  if (!(E >= 0.0) || !std::isfinite(E))
    throw std::invalid_argument("scattering: energy must be finite and nonnegative, got " + std::to_string(E));
}

struct ScatteringAmplitudes
{
  std::complex<double> transmission;
  std::complex<double> reflection;
  double energy;
};

/// kappa^2 = 2 hbar^2 E / (m lambda^2); exactly E at the default coupling.
inline double kappa_squared(double E, ScatteringConfig const & cfg)
{
  validate_energy(E);
  validate(cfg);
  return E / (cfg.coupling * cfg.coupling);
}

inline ScatteringAmplitudes amplitudes(double E, ScatteringConfig const & cfg = {})
{
  double const kappa = std::sqrt(kappa_squared(E, cfg));
  std::complex<double> const denom(-1.0, kappa);
  return {std::complex<double>(0.0, kappa) / denom, 1.0 / denom, E};
}

inline double transmission_probability(double E, ScatteringConfig const & cfg = {})
{
  double const k2 = kappa_squared(E, cfg);
  return k2 / (1.0 + k2);
}

inline double reflection_probability(double E, ScatteringConfig const & cfg = {})
{
  return 1.0 / (1.0 + kappa_squared(E, cfg));
}

/** @brief |ik(R - 1) - (2 m lambda / hbar^2 - ik) T| for the computed amplitudes.

    The derivative of psi jumps by (2 m lambda / hbar^2) psi(0) across the delta;
    the residual is zero up to rounding when the amplitudes satisfy that condition.
 */
inline double jump_condition_residual(double E, ScatteringConfig const & cfg = {})
{
  auto const amp = amplitudes(E, cfg);
  double const wave_number = std::sqrt(2.0 * mass * E) / hbar;
  std::complex<double> const ik(0.0, wave_number);
  double const strength = 2.0 * mass * cfg.lambda() / (hbar * hbar);
  return std::abs(ik * (amp.reflection - 1.0) - (strength - ik) * amp.transmission);
}

/// Composite trapezoidal rule over sampled values on a nonuniform grid.
inline double trapezoid(std::span<double const> x, std::span<double const> y)
{
  if (x.size() != y.size())
    throw std::invalid_argument("trapezoid: grid and values differ in length");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

/** @brief Energy distribution |phi(E)|^2 of an incoming wave packet sampled on a grid.

    A single-node grid is a point mass: its weight is the probability itself and must be 1.
 */
class WavePacket
{
public:
  WavePacket(std::vector<double> energies, std::vector<double> weights)
    : energies_(std::move(energies)), weights_(std::move(weights))
  {
    if (energies_.empty() || energies_.size() != weights_.size())
      throw std::invalid_argument("WavePacket: need matching, nonempty energy and weight arrays");
    for (std::size_t i = 0; i < energies_.size(); ++i)
    {
      validate_energy(energies_[i]);
      if (i > 0 && !(energies_[i] > energies_[i - 1]))
        throw std::invalid_argument("WavePacket: energy grid must be strictly increasing");
      if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i]))
        throw std::invalid_argument("WavePacket: weights must be finite and nonnegative");
    }
  }

  std::vector<double> const & energies() const noexcept { return energies_; }
  std::vector<double> const & weights() const noexcept { return weights_; }

  bool point_mass() const noexcept { return energies_.size() == 1; }

  double integrate(std::span<double const> values) const
  {
    if (point_mass())
      return values[0] * weights_[0];
    return trapezoid(energies_, values);
  }

  double norm() const { return integrate(weights_); }

private:
  std::vector<double> energies_;
  std::vector<double> weights_;
};

inline constexpr double packet_normalization_tolerance = 1e-6;

/// Integral of |T(E)|^2 |phi(E)|^2 over the packet grid.
inline double wavepacket_transmission(WavePacket const & packet, ScatteringConfig const & cfg = {})
{
  validate(cfg);
  double const norm = packet.norm();
  if (std::abs(norm - 1.0) > packet_normalization_tolerance)
    throw std::invalid_argument("wavepacket_transmission: packet integrates to " + std::to_string(norm) +
                                ", expected 1");

  auto const & E = packet.energies();
  auto const & w = packet.weights();
  std::vector<double> integrand(E.size());
  for (std::size_t i = 0; i < E.size(); ++i)
    integrand[i] = transmission_probability(E[i], cfg) * w[i];
  double const p = packet.integrate(integrand);
  return std::clamp(p, 0.0, 1.0);
}

/// Uniform grid of n points on [lo, hi].
inline std::vector<double> linear_grid(double lo, double hi, std::size_t n)
{
  if (n < 2 || !(hi > lo))
    throw std::invalid_argument("linear_grid: need n >= 2 and hi > lo");
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return grid;
}

/// Gaussian packet |phi(E)|^2 on the given grid, renormalized under the trapezoidal rule.
inline WavePacket gaussian_packet(double center, double width, std::vector<double> grid)
{
  if (!(width > 0.0))
    throw std::invalid_argument("gaussian_packet: width must be positive");
  std::vector<double> weights(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    double const z = (grid[i] - center) / width;
    weights[i] = std::exp(-0.5 * z * z);
  }
  double const norm = grid.size() == 1 ? weights[0] : trapezoid(grid, weights);
  if (!(norm > 0.0))
    throw std::invalid_argument("gaussian_packet: grid does not cover the packet");
  for (auto & w : weights)
    w /= norm;
  return WavePacket(std::move(grid), std::move(weights));
}

/// Gaussian packet on a grid of n points spanning center +- span_widths * width, clipped at E = 0.
inline WavePacket gaussian_packet(double center, double width, std::size_t n = 2001, double span_widths = 8.0)
{
  double const lo = std::max(0.0, center - span_widths * width);
  return gaussian_packet(center, width, linear_grid(lo, center + span_widths * width, n));
}

} // namespace deltaqm::scattering

#endif
