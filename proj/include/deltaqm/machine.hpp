#ifndef DELTAQM_MACHINE_HPP
#define DELTAQM_MACHINE_HPP

/** @file deltaqm/machine.hpp
    @brief Event-level simulation of the delta-quantum machine and its k-measurements.

    One trial: the entity breaks into its K spheres, which reach the shutter in a
    uniformly random order (the hidden measurement). The shutter releases them in
    tranches of k. The first tranche tilts the lever towards its majority charge,
    or by a fair coin when it is neutral; every later tranche lands on the
    already tilted lever and cannot turn it back. All spheres end up in the exit
    compartment on the tilted side.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "deltaqm/ensemble.hpp"
#include "deltaqm/kmodel.hpp"
#include "deltaqm/rng.hpp"
#include "deltaqm/types.hpp"

namespace deltaqm::machine {

struct Sphere
{
  int charge; // +1 or -1
  int id;

  friend bool operator==(Sphere const &, Sphere const &) = default;
};

enum class Side { Left, Right };

inline char const * to_string(Side s) { return s == Side::Right ? "Right" : "Left"; }

namespace phase {

struct Assembled
{
  ElectricState state;
  friend bool operator==(Assembled const &, Assembled const &) = default;
};

/// Spheres in the order the shutter will release them.
struct Disassembled
{
  std::vector<Sphere> shutter_queue;
  friend bool operator==(Disassembled const &, Disassembled const &) = default;
};

struct Deciding
{
  std::vector<Sphere> first_tranche;
  friend bool operator==(Deciding const &, Deciding const &) = default;
};

struct Settled
{
  Side tilt;
  int routed;
  bool tie_broken;
  friend bool operator==(Settled const &, Settled const &) = default;
};

struct Reassembled
{
  Side exit;
  friend bool operator==(Reassembled const &, Reassembled const &) = default;
};

} // namespace phase

using MachinePhase = std::variant<phase::Assembled, phase::Disassembled, phase::Deciding, phase::Settled,
                                  phase::Reassembled>;

enum class Result { Transmitted, Reflected };

inline char const * to_string(Result r) { return r == Result::Transmitted ? "Transmitted" : "Reflected"; }

struct TrialOutcome
{
  Result result;
  bool tie_broken;
  /// Empty unless the trace was requested; otherwise exactly one record per phase.
  std::vector<MachinePhase> trace;

  friend bool operator==(TrialOutcome const &, TrialOutcome const &) = default;
};

namespace detail {

/// The spheres of one disassembled entity, in shutter order.
class Shutter
{
public:
  explicit Shutter(ElectricState const & state) : spheres_(state.total())
  {
    for (int i = 0; i < state.total(); ++i)
      spheres_[i] = Sphere{i < state.k_plus() ? +1 : -1, i};
    initial_ = spheres_;
  }

  /// Fisher-Yates from the canonical ordering (positives first, by id).
  std::vector<Sphere> const & shuffle(SplitMix64 & rng)
  {
    spheres_ = initial_;
    for (std::size_t i = spheres_.size(); i > 1; --i)
    {
      auto const j = static_cast<std::size_t>(rng.below(i));
      std::swap(spheres_[i - 1], spheres_[j]);
    }
    return spheres_;
  }

private:
  std::vector<Sphere> spheres_;
  std::vector<Sphere> initial_;
};

inline int tranche_charge(std::vector<Sphere> const & order, int k)
{
  int charge = 0;
  for (int i = 0; i < k; ++i)
    charge += order[i].charge;
  return charge;
}

/// Lever decision from the first tranche's net charge; consumes a coin only on a neutral tranche.
inline Side decide(int first_charge, int k, SplitMix64 & rng, bool & tie_broken)
{
  tie_broken = false;
  if (first_charge > 0)
    return Side::Right;
  if (first_charge < 0)
    return Side::Left;
  if (k % 2 != 0)
    throw std::logic_error("machine: neutral tranche of odd size " + std::to_string(k));
  tie_broken = true;
  return rng.coin() ? Side::Right : Side::Left;
}

} // namespace detail

inline TrialOutcome run_trial(ElectricState const & state, KMeasurement meas, std::uint64_t seed,
                              bool record_trace = false)
{
  validate(state, meas);
  int const K = state.total();
  int const k = meas.k;

  SplitMix64 rng(seed);
  detail::Shutter shutter(state);
  TrialOutcome out{Result::Reflected, false, {}};
  if (record_trace)
  {
    out.trace.reserve(5);
    out.trace.emplace_back(phase::Assembled{state});
  }

  auto const & order = shutter.shuffle(rng);
  if (record_trace)
  {
    out.trace.emplace_back(phase::Disassembled{order});
    out.trace.emplace_back(phase::Deciding{std::vector<Sphere>(order.begin(), order.begin() + k)});
  }

  Side const tilt = detail::decide(detail::tranche_charge(order, k), k, rng, out.tie_broken);

  // Later tranches (k or fewer spheres) follow the lever; their torque cannot reverse it.
  int routed = k;
  while (routed < K)
    routed += std::min(k, K - routed);

  if (record_trace)
  {
    out.trace.emplace_back(phase::Settled{tilt, routed, out.tie_broken});
    out.trace.emplace_back(phase::Reassembled{tilt});
  }
  out.result = tilt == Side::Right ? Result::Transmitted : Result::Reflected;
  return out;
}

/** @brief Checks a recorded trace against the machine's rules and recomputes its outcome.

    Verifies phase order, that the queue is a permutation of the prepared spheres,
    that the deciding tranche is the first k of the queue, that the recorded tilt
    follows the tranche majority (any tilt is admissible only on a recorded tie),
    and that all K spheres were routed to the tilted side. Returns the outcome
    implied by the trace, or nullopt when any check fails.
 */
inline std::optional<Result> replay_trace(std::vector<MachinePhase> const & trace, KMeasurement meas)
{
  if (trace.size() != 5)
    return std::nullopt;
  auto const * assembled = std::get_if<phase::Assembled>(&trace[0]);
  auto const * disassembled = std::get_if<phase::Disassembled>(&trace[1]);
  auto const * deciding = std::get_if<phase::Deciding>(&trace[2]);
  auto const * settled = std::get_if<phase::Settled>(&trace[3]);
  auto const * reassembled = std::get_if<phase::Reassembled>(&trace[4]);
  if (!assembled || !disassembled || !deciding || !settled || !reassembled)
    return std::nullopt;

  auto const & state = assembled->state;
  int const K = state.total();
  auto const & queue = disassembled->shutter_queue;
  if (meas.k < 1 || meas.k > K || static_cast<int>(queue.size()) != K)
    return std::nullopt;

  std::vector<bool> seen(K, false);
  int positives = 0;
  for (auto const & s : queue)
  {
    if (s.id < 0 || s.id >= K || seen[s.id] || (s.charge != 1 && s.charge != -1))
      return std::nullopt;
    seen[s.id] = true;
    positives += s.charge > 0 ? 1 : 0;
  }
  if (positives != state.k_plus())
    return std::nullopt;

  auto const & tranche = deciding->first_tranche;
  if (static_cast<int>(tranche.size()) != meas.k || !std::equal(tranche.begin(), tranche.end(), queue.begin()))
    return std::nullopt;

  int const charge = detail::tranche_charge(tranche, meas.k);
  if (charge != 0)
  {
    Side const expected = charge > 0 ? Side::Right : Side::Left;
    if (settled->tie_broken || settled->tilt != expected)
      return std::nullopt;
  }
  else if (!settled->tie_broken)
  {
    return std::nullopt;
  }

  if (settled->routed != K || reassembled->exit != settled->tilt)
    return std::nullopt;
  return settled->tilt == Side::Right ? Result::Transmitted : Result::Reflected;
}

/** @brief n_trials independent trials; trial i runs on trial_seed(seed, i). */
inline EnsembleResult run_ensemble(ElectricState const & state, KMeasurement meas, std::uint64_t n_trials,
                                   std::uint64_t seed, EnsembleOptions const & options = {})
{
  validate(state, meas);
  auto trial = [&](std::uint64_t trial_seed) {
    auto const outcome = run_trial(state, meas, trial_seed);
    return TrialTally{outcome.result == Result::Transmitted, outcome.tie_broken};
  };
  return run_seeded_ensemble(trial, n_trials, seed, options);
}

/// Ensembles for every (k, K+) cell of the K-sphere table, all driven by the same master seed.
class EmpiricalTable
{
public:
  EmpiricalTable(int K, std::vector<std::vector<EnsembleResult>> rows) : K_(K), rows_(std::move(rows)) {}

  int K() const noexcept { return K_; }
  EnsembleResult const & at(int k, int k_plus) const { return rows_.at(k - 1).at(k_plus); }

  friend bool operator==(EmpiricalTable const &, EmpiricalTable const &) = default;

private:
  int K_;
  std::vector<std::vector<EnsembleResult>> rows_;
};

inline EmpiricalTable empirical_table(int K, std::uint64_t n_trials, std::uint64_t seed,
                                      EnsembleOptions const & options = {}, int ceiling = default_table_ceiling)
{
  validate_table_size(K, ceiling);
  std::vector<std::vector<EnsembleResult>> rows(K);
  for (int k = 1; k <= K; ++k)
    for (int kp = 0; kp <= K; ++kp)
      rows[k - 1].push_back(run_ensemble(ElectricState(kp, K - kp), KMeasurement{k}, n_trials, seed, options));
  return EmpiricalTable(K, std::move(rows));
}

} // namespace deltaqm::machine

#endif
