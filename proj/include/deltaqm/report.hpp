#ifndef DELTAQM_REPORT_HPP
#define DELTAQM_REPORT_HPP

/** @file deltaqm/report.hpp
    @brief JSON and CSV encodings of the result types, and their JSON decoders.

    Rationals are {"num", "den", "decimal"}; num and den are JSON integers when they
    fit in 64 bits and decimal strings otherwise. The decimal is informative only and
    ignored when decoding. See docs/json_schema.md.
 */

#include <charconv>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "deltaqm/ensemble.hpp"
#include "deltaqm/epsilon_model.hpp"
#include "deltaqm/kmodel.hpp"
#include "deltaqm/regime.hpp"
#include "deltaqm/scattering.hpp"
#include "deltaqm/types.hpp"

namespace deltaqm::report {

using json = nlohmann::json;

/// Shortest decimal that round-trips; the same digits appear in CSV and JSON.
inline std::string format_double(double x)
{
  char buf[64];
  auto const [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{})
    return "nan";
  return std::string(buf, end);
}

inline json big_to_json(BigInt const & v)
{
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline BigInt big_from_json(json const & j)
{
  if (j.is_string())
    return BigInt(j.get<std::string>());
  if (j.is_number_unsigned())
    return BigInt(j.get<std::uint64_t>());
  if (j.is_number_integer())
    return BigInt(j.get<std::int64_t>());
  throw std::invalid_argument("report: expected an integer, got " + j.dump());
}

inline json to_json(ExactProbability const & p)
{
  return {{"num", big_to_json(p.numerator())}, {"den", big_to_json(p.denominator())}, {"decimal", p.to_double()}};
}

inline ExactProbability probability_from_json(json const & j)
{
  return ExactProbability(big_from_json(j.at("num")), big_from_json(j.at("den")));
}

inline json to_json(ElectricState const & s)
{
  return {{"k_plus", s.k_plus()}, {"k_minus", s.k_minus()}, {"E", s.energy_label()}};
}

inline ElectricState state_from_json(json const & j)
{
  return ElectricState(j.at("k_plus").get<int>(), j.at("k_minus").get<int>());
}

// --- probability tables ------------------------------------------------------

inline json to_json(ProbabilityTable const & t)
{
  json rows = json::array();
  for (int k = 1; k <= t.K(); ++k)
  {
    json cells = json::array();
    for (int kp = 0; kp <= t.K(); ++kp)
    {
      json cell = to_json(ElectricState(kp, t.K() - kp));
      cell["p_tr"] = to_json(t.at(k, kp));
      cells.push_back(std::move(cell));
    }
    rows.push_back({{"k", k}, {"cells", std::move(cells)}});
  }
  return {{"K", t.K()}, {"rows", std::move(rows)}};
}

inline ProbabilityTable table_from_json(json const & j)
{
  int const K = j.at("K").get<int>();
  auto const & rows_json = j.at("rows");
  if (static_cast<int>(rows_json.size()) != K)
    throw std::invalid_argument("report: table must have K rows");
  std::vector<std::vector<ExactProbability>> rows;
  for (auto const & r : rows_json)
  {
    auto & row = rows.emplace_back();
    for (auto const & cell : r.at("cells"))
      row.push_back(probability_from_json(cell.at("p_tr")));
    if (static_cast<int>(row.size()) != K + 1)
      throw std::invalid_argument("report: table rows must have K + 1 cells");
  }
  return ProbabilityTable(K, std::move(rows));
}

inline constexpr char const * table_csv_header = "k,k_plus,k_minus,p_tr_num,p_tr_den,p_tr_decimal";

inline std::string to_csv(ProbabilityTable const & t)
{
  std::ostringstream os;
  os << table_csv_header << '\n';
  for (int k = 1; k <= t.K(); ++k)
    for (int kp = 0; kp <= t.K(); ++kp)
    {
      auto const & p = t.at(k, kp);
      os << k << ',' << kp << ',' << t.K() - kp << ',' << p.numerator() << ',' << p.denominator() << ','
         << format_double(p.to_double()) << '\n';
    }
  return os.str();
}

/// Rows k, columns E = K+/K- in increasing order, cells as reduced fractions.
inline std::string to_grid(ProbabilityTable const & t)
{
  std::ostringstream os;
  os << "k\\E";
  for (int kp = 0; kp <= t.K(); ++kp)
    os << ',' << (kp == 0 ? std::string("0") : ElectricState(kp, t.K() - kp).energy_label());
  os << '\n';
  for (int k = 1; k <= t.K(); ++k)
  {
    os << k;
    for (int kp = 0; kp <= t.K(); ++kp)
      os << ',' << t.at(k, kp).to_string();
    os << '\n';
  }
  return os.str();
}

// --- ensembles ---------------------------------------------------------------

inline json to_json(EnsembleResult const & r)
{
  return {{"n_trials", r.n_trials},         {"successes", r.successes},
          {"ties", r.ties},                 {"frequency", to_json(r.frequency())},
          {"half_width", r.half_width()},   {"z", r.z},
          {"seed", r.seed},                 {"generator", r.generator}};
}

inline EnsembleResult ensemble_from_json(json const & j)
{
  EnsembleResult r;
  r.n_trials = j.at("n_trials").get<std::uint64_t>();
  r.successes = j.at("successes").get<std::uint64_t>();
  r.ties = j.at("ties").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.z = j.at("z").get<double>();
  r.generator = j.at("generator").get<std::string>();
  if (r.n_trials == 0 || r.successes > r.n_trials || r.ties > r.n_trials)
    throw std::invalid_argument("report: inconsistent ensemble counts");
  if (probability_from_json(j.at("frequency")) != r.frequency())
    throw std::invalid_argument("report: ensemble frequency disagrees with its counts");
  return r;
}

inline constexpr char const * ensemble_csv_columns =
    "n_trials,successes,ties,frequency_num,frequency_den,frequency_decimal,half_width,z,seed,generator";

inline std::string ensemble_csv_fields(EnsembleResult const & r)
{
  auto const f = r.frequency();
  std::ostringstream os;
  os << r.n_trials << ',' << r.successes << ',' << r.ties << ',' << f.numerator() << ',' << f.denominator() << ','
     << format_double(f.to_double()) << ',' << format_double(r.half_width()) << ',' << format_double(r.z) << ','
     << r.seed << ',' << r.generator;
  return os.str();
}

// --- scattering --------------------------------------------------------------

inline json to_json(scattering::ScatteringAmplitudes const & a, scattering::ScatteringConfig const & cfg)
{
  return {{"E", a.energy},
          {"T", {{"re", a.transmission.real()}, {"im", a.transmission.imag()}}},
          {"R", {{"re", a.reflection.real()}, {"im", a.reflection.imag()}}},
          {"p_tr", scattering::transmission_probability(a.energy, cfg)},
          {"p_re", scattering::reflection_probability(a.energy, cfg)},
          {"jump_residual", scattering::jump_condition_residual(a.energy, cfg)}};
}

inline scattering::ScatteringAmplitudes amplitudes_from_json(json const & j)
{
  return {{j.at("T").at("re").get<double>(), j.at("T").at("im").get<double>()},
          {j.at("R").at("re").get<double>(), j.at("R").at("im").get<double>()},
          j.at("E").get<double>()};
}

inline constexpr char const * scatter_csv_header = "E,T_re,T_im,R_re,R_im,p_tr,p_re,jump_residual";

inline std::string scatter_csv_row(scattering::ScatteringAmplitudes const & a, scattering::ScatteringConfig const & cfg)
{
  std::ostringstream os;
  os << format_double(a.energy) << ',' << format_double(a.transmission.real()) << ','
     << format_double(a.transmission.imag()) << ',' << format_double(a.reflection.real()) << ','
     << format_double(a.reflection.imag()) << ',' << format_double(scattering::transmission_probability(a.energy, cfg))
     << ',' << format_double(scattering::reflection_probability(a.energy, cfg)) << ','
     << format_double(scattering::jump_condition_residual(a.energy, cfg));
  return os.str();
}

// --- epsilon model -----------------------------------------------------------

inline json to_json(epsilon::OutcomePair const & p) { return {{"p_plus", p.p_plus}, {"p_minus", p.p_minus}}; }

inline epsilon::OutcomePair outcome_pair_from_json(json const & j)
{
  return {j.at("p_plus").get<double>(), j.at("p_minus").get<double>()};
}

// --- regimes -----------------------------------------------------------------

inline json to_json(regime::Witness const & w)
{
  json j = {{"kind", regime::to_string(w.kind)}};
  if (w.state)
  {
    j["k_plus"] = w.state->k_plus();
    j["k_minus"] = w.state->k_minus();
    j["E"] = w.state->energy_label();
  }
  return j;
}

inline regime::Witness witness_from_json(json const & j)
{
  regime::Witness w{regime::parse_witness_kind(j.at("kind").get<std::string>()), std::nullopt};
  if (j.contains("k_plus"))
    w.state = state_from_json(j);
  return w;
}

inline json to_json(regime::RegimeVerdict const & v)
{
  json witnesses = json::array();
  for (auto const & w : v.witnesses)
    witnesses.push_back(to_json(w));
  return {{"regime", regime::to_string(v.regime)},
          {"witnesses", std::move(witnesses)},
          {"quantum_realizability_undecided", v.quantum_realizability_undecided}};
}

inline regime::RegimeVerdict verdict_from_json(json const & j)
{
  regime::RegimeVerdict v{regime::parse_regime(j.at("regime").get<std::string>()), {}};
  for (auto const & w : j.at("witnesses"))
    v.witnesses.push_back(witness_from_json(w));
  v.quantum_realizability_undecided = j.at("quantum_realizability_undecided").get<bool>();
  return v;
}

inline constexpr char const * verdict_csv_header = "k,regime,witness,k_plus,k_minus";

inline std::string verdict_csv_rows(int k, regime::RegimeVerdict const & v)
{
  std::ostringstream os;
  for (auto const & w : v.witnesses)
  {
    os << k << ',' << regime::to_string(v.regime) << ',' << regime::to_string(w.kind) << ',';
    if (w.state)
      os << w.state->k_plus() << ',' << w.state->k_minus();
    else
      os << ',';
    os << '\n';
  }
  return os.str();
}

} // namespace deltaqm::report

#endif
