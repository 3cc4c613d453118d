// deltaqm: command-line front end for the delta-quantum machine library.
//
// Exit codes: 0 success, 2 usage or validation error, 3 golden-table mismatch.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deltaqm/epsilon_model.hpp"
#include "deltaqm/golden.hpp"
#include "deltaqm/kmodel.hpp"
#include "deltaqm/machine.hpp"
#include "deltaqm/regime.hpp"
#include "deltaqm/report.hpp"
#include "deltaqm/scattering.hpp"

namespace {

using namespace deltaqm;
using report::json;

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_golden_mismatch = 3;

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct Common
{
  std::string format;
  std::string output;
  double z = default_z;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

void add_output_options(CLI::App & cmd, Common & common, std::string default_format,
                        std::vector<std::string> formats)
{
  common.format = std::move(default_format);
  cmd.add_option("--format", common.format, "Output format")->check(CLI::IsMember(formats));
  cmd.add_option("-o,--output", common.output, "Write the report to this file instead of stdout");
}

void add_random_options(CLI::App & cmd, Common & common)
{
  cmd.add_option("--seed", common.seed, "Master seed (random and reported when omitted)");
  cmd.add_option("--z", common.z, "Normal quantile for reported half-widths")->check(CLI::PositiveNumber);
  cmd.add_option("--threads", common.threads, "Worker threads; results do not depend on it");
}

std::uint64_t resolve_seed(Common const & common)
{
  if (common.seed)
    return *common.seed;
  std::random_device rd;
  std::uint64_t const seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << seed << '\n';
  return seed;
}

int table_ceiling()
{
  if (char const * env = std::getenv("DELTAQM_TABLE_CEILING"))
  {
    try
    {
      int const v = std::stoi(env);
      if (v >= 1)
        return v;
    }
    catch (std::exception const &)
    {
    }
    throw UsageError(std::string("DELTAQM_TABLE_CEILING must be a positive integer, got '") + env + "'");
  }
  return default_table_ceiling;
}

void emit(Common const & common, std::string const & body)
{
  std::string path = common.output;
  if (path.empty())
    if (char const * env = std::getenv("DELTAQM_OUTPUT"))
      path = env;
  if (path.empty())
  {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw UsageError("cannot open output file '" + path + "'");
  out << body;
}

std::string dump(json const & j) { return j.dump(2) + "\n"; }

// --- tables ------------------------------------------------------------------

struct TablesArgs
{
  int K = 0;
  bool golden = false;
  std::string golden_file;
  Common common;
};

int run_tables(TablesArgs const & a)
{
  if (a.golden && !golden::has_table(a.K))
    throw UsageError("--golden needs K in 2..7");
  auto const table = probability_table(a.K, table_ceiling());
  std::optional<ProbabilityTable> reference;
  if (!a.golden_file.empty())
  {
    std::ifstream in(a.golden_file);
    if (!in)
      throw UsageError("cannot read golden file '" + a.golden_file + "'");
    try
    {
      reference = report::table_from_json(json::parse(in));
    }
    catch (json::exception const & e)
    {
      throw UsageError("malformed golden file: " + std::string(e.what()));
    }
    if (reference->K() != a.K)
      throw UsageError("golden file holds K = " + std::to_string(reference->K()));
  }
  else if (a.golden)
  {
    reference = golden::table(a.K);
  }
  std::string body;
  if (a.common.format == "json")
  {
    json j = report::to_json(table);
    j["command"] = "tables";
    body = dump(j);
  }
  else if (a.common.format == "csv")
  {
    body = report::to_csv(table);
  }
  else
  {
    body = report::to_grid(table);
  }
  emit(a.common, body);

  if (!reference)
    return exit_ok;
  auto const mismatches = golden::compare(table, *reference);
  for (auto const & m : mismatches)
    std::cerr << "golden mismatch at k=" << m.k << " K+=" << m.k_plus << ": expected " << m.expected.to_string()
              << ", computed " << m.actual.to_string() << '\n';
  if (!mismatches.empty())
    return exit_golden_mismatch;
  std::cerr << "golden: K=" << a.K << " matches the reference table\n";
  return exit_ok;
}

// --- simulate / convergence --------------------------------------------------

struct SimulateArgs
{
  int k_plus = -1;
  int k_minus = -1;
  int k = 0;
  std::uint64_t n = 0;
  bool trace = false;
  std::vector<std::uint64_t> schedule{100, 1000, 10000, 100000};
  Common common;
};

json trace_to_json(std::vector<machine::MachinePhase> const & trace)
{
  auto spheres = [](std::vector<machine::Sphere> const & v) {
    json a = json::array();
    for (auto const & s : v)
      a.push_back({{"id", s.id}, {"charge", s.charge}});
    return a;
  };
  json out = json::array();
  for (auto const & p : trace)
  {
    std::visit(
        [&](auto const & ph) {
          using T = std::decay_t<decltype(ph)>;
          if constexpr (std::is_same_v<T, machine::phase::Assembled>)
            out.push_back({{"phase", "Assembled"}, {"state", report::to_json(ph.state)}});
          else if constexpr (std::is_same_v<T, machine::phase::Disassembled>)
            out.push_back({{"phase", "Disassembled"}, {"shutter_queue", spheres(ph.shutter_queue)}});
          else if constexpr (std::is_same_v<T, machine::phase::Deciding>)
            out.push_back({{"phase", "Deciding"}, {"first_tranche", spheres(ph.first_tranche)}});
          else if constexpr (std::is_same_v<T, machine::phase::Settled>)
            out.push_back({{"phase", "Settled"},
                           {"tilt", machine::to_string(ph.tilt)},
                           {"routed", ph.routed},
                           {"tie_broken", ph.tie_broken}});
          else
            out.push_back({{"phase", "Reassembled"}, {"exit", machine::to_string(ph.exit)}});
        },
        p);
  }
  return out;
}

int run_simulate(SimulateArgs const & a)
{
  ElectricState const state(a.k_plus, a.k_minus);
  KMeasurement const meas{a.k};
  validate(state, meas);
  std::uint64_t const seed = resolve_seed(a.common);
  auto const expected = transmission_probability_exact(state, meas);
  auto const result = machine::run_ensemble(state, meas, a.n, seed, {a.common.z, a.common.threads});

  if (a.common.format == "csv")
  {
    std::ostringstream os;
    os << "k_plus,k_minus,k,expected_num,expected_den,expected_decimal," << report::ensemble_csv_columns << '\n';
    os << a.k_plus << ',' << a.k_minus << ',' << a.k << ',' << expected.numerator() << ',' << expected.denominator()
       << ',' << report::format_double(expected.to_double()) << ',' << report::ensemble_csv_fields(result) << '\n';
    emit(a.common, os.str());
    return exit_ok;
  }

  json j = {{"command", "simulate"},
            {"seed", seed},
            {"generator", generator_name},
            {"state", report::to_json(state)},
            {"k", a.k},
            {"expected", report::to_json(expected)},
            {"result", report::to_json(result)}};
  if (a.trace)
  {
    std::uint64_t const first = trial_seed(seed, 0);
    auto const outcome = machine::run_trial(state, meas, first, true);
    j["first_trial"] = {{"trial_seed", first},
                        {"result", machine::to_string(outcome.result)},
                        {"tie_broken", outcome.tie_broken},
                        {"trace", trace_to_json(outcome.trace)}};
  }
  emit(a.common, dump(j));
  return exit_ok;
}

int run_convergence(SimulateArgs const & a)
{
  ElectricState const state(a.k_plus, a.k_minus);
  KMeasurement const meas{a.k};
  validate(state, meas);
  if (a.schedule.empty())
    throw UsageError("--schedule must list at least one trial count");
  std::uint64_t const seed = resolve_seed(a.common);
  auto const expected = transmission_probability_exact(state, meas);

  // Per-trial seeds depend only on (seed, index), so each point extends the previous run.
  std::vector<EnsembleResult> series;
  for (auto n : a.schedule)
    series.push_back(machine::run_ensemble(state, meas, n, seed, {a.common.z, a.common.threads}));

  if (a.common.format == "csv")
  {
    std::ostringstream os;
    os << "k_plus,k_minus,k,expected_num,expected_den,expected_decimal," << report::ensemble_csv_columns << '\n';
    for (auto const & r : series)
      os << a.k_plus << ',' << a.k_minus << ',' << a.k << ',' << expected.numerator() << ','
         << expected.denominator() << ',' << report::format_double(expected.to_double()) << ','
         << report::ensemble_csv_fields(r) << '\n';
    emit(a.common, os.str());
    return exit_ok;
  }
  json points = json::array();
  for (auto const & r : series)
    points.push_back(report::to_json(r));
  emit(a.common, dump({{"command", "convergence"},
                       {"seed", seed},
                       {"generator", generator_name},
                       {"state", report::to_json(state)},
                       {"k", a.k},
                       {"expected", report::to_json(expected)},
                       {"series", std::move(points)}}));
  return exit_ok;
}

// --- scatter -----------------------------------------------------------------

struct ScatterArgs
{
  std::vector<double> energies;
  std::string grid;
  double coupling = 1.0;
  std::optional<double> packet_center;
  double packet_width = 0.01;
  std::size_t packet_points = 2001;
  Common common;
};

std::vector<double> parse_grid(std::string const & spec)
{
  std::istringstream is(spec);
  double lo = 0, hi = 0;
  std::size_t n = 0;
  char c1 = 0, c2 = 0;
  if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || !is.eof())
    throw UsageError("--grid expects lo:hi:n, got '" + spec + "'");
  return scattering::linear_grid(lo, hi, n);
}

int run_scatter(ScatterArgs const & a)
{
  scattering::ScatteringConfig const cfg{a.coupling};
  scattering::validate(cfg);
  std::vector<double> energies = a.energies;
  if (!a.grid.empty())
  {
    auto const g = parse_grid(a.grid);
    energies.insert(energies.end(), g.begin(), g.end());
  }
  if (energies.empty() && !a.packet_center)
    throw UsageError("scatter needs --E, --grid or --packet-center");

  std::vector<scattering::ScatteringAmplitudes> points;
  for (double E : energies)
    points.push_back(scattering::amplitudes(E, cfg));

  std::optional<double> packet_tr;
  if (a.packet_center)
    packet_tr = scattering::wavepacket_transmission(
        scattering::gaussian_packet(*a.packet_center, a.packet_width, a.packet_points), cfg);

  if (a.common.format == "csv")
  {
    std::ostringstream os;
    os << report::scatter_csv_header << '\n';
    for (auto const & p : points)
      os << report::scatter_csv_row(p, cfg) << '\n';
    if (packet_tr)
      os << "# packet center=" << report::format_double(*a.packet_center)
         << " width=" << report::format_double(a.packet_width) << " p_tr=" << report::format_double(*packet_tr)
         << '\n';
    emit(a.common, os.str());
    return exit_ok;
  }
  json pts = json::array();
  for (auto const & p : points)
    pts.push_back(report::to_json(p, cfg));
  json j = {{"command", "scatter"}, {"coupling", a.coupling}, {"points", std::move(pts)}};
  if (packet_tr)
    j["packet"] = {{"center", *a.packet_center},
                   {"width", a.packet_width},
                   {"grid_points", a.packet_points},
                   {"p_tr", *packet_tr}};
  emit(a.common, dump(j));
  return exit_ok;
}

// --- epsilon -----------------------------------------------------------------

struct EpsilonArgs
{
  double theta = 0.0;
  double eps = 1.0;
  std::uint64_t n = 0;
  Common common;
};

int run_epsilon(EpsilonArgs const & a)
{
  epsilon::ElasticExperiment const exp(a.theta, a.eps);
  auto const closed = epsilon::epsilon_probabilities(exp);
  auto const quantum = epsilon::quantum_spin_probabilities(a.theta);
  std::optional<EnsembleResult> sim;
  std::uint64_t seed = 0;
  if (a.n > 0)
  {
    seed = resolve_seed(a.common);
    sim = epsilon::simulate_elastic(exp, a.n, seed, {a.common.z, a.common.threads});
  }

  if (a.common.format == "csv")
  {
    std::ostringstream os;
    os << "theta,epsilon,projection,p_plus,p_minus,quantum_p_plus,quantum_p_minus";
    if (sim)
      os << ',' << report::ensemble_csv_columns;
    os << '\n'
       << report::format_double(a.theta) << ',' << report::format_double(a.eps) << ','
       << report::format_double(exp.projection()) << ',' << report::format_double(closed.p_plus) << ','
       << report::format_double(closed.p_minus) << ',' << report::format_double(quantum.p_plus) << ','
       << report::format_double(quantum.p_minus);
    if (sim)
      os << ',' << report::ensemble_csv_fields(*sim);
    os << '\n';
    emit(a.common, os.str());
    return exit_ok;
  }
  json j = {{"command", "epsilon"},
            {"theta", a.theta},
            {"epsilon", a.eps},
            {"projection", exp.projection()},
            {"closed_form", report::to_json(closed)},
            {"quantum", report::to_json(quantum)}};
  if (sim)
  {
    j["seed"] = seed;
    j["generator"] = generator_name;
    j["simulation"] = report::to_json(*sim);
  }
  emit(a.common, dump(j));
  return exit_ok;
}

// --- classify ----------------------------------------------------------------

struct ClassifyArgs
{
  int K = 0;
  std::string row;
  Common common;
};

regime::ProbabilityTableRow parse_row(std::string const & text)
{
  std::vector<ExactProbability> entries;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ','))
  {
    auto const b = item.find_first_not_of(" \t");
    auto const e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw UsageError("--row has an empty entry");
    entries.push_back(ExactProbability::parse(item.substr(b, e - b + 1)));
  }
  return regime::ProbabilityTableRow(std::move(entries));
}

int run_classify(ClassifyArgs const & a)
{
  if ((a.K > 0) == !a.row.empty())
    throw UsageError("classify needs exactly one of --K or --row");

  if (!a.row.empty())
  {
    auto const row = parse_row(a.row);
    auto const verdict = regime::classify_row(row);
    if (a.common.format == "csv")
    {
      emit(a.common, std::string(report::verdict_csv_header) + "\n" + report::verdict_csv_rows(0, verdict));
      return exit_ok;
    }
    json entries = json::array();
    for (auto const & p : row.entries())
      entries.push_back(report::to_json(p));
    emit(a.common, dump({{"command", "classify"}, {"row", entries}, {"verdict", report::to_json(verdict)}}));
    return exit_ok;
  }

  auto const verdicts = regime::classify_table(a.K, table_ceiling());
  if (a.common.format == "csv")
  {
    std::string body = std::string(report::verdict_csv_header) + "\n";
    for (auto const & [k, v] : verdicts)
      body += report::verdict_csv_rows(k, v);
    emit(a.common, body);
    return exit_ok;
  }
  json summary = json::object();
  json details = json::object();
  for (auto const & [k, v] : verdicts)
  {
    summary[std::to_string(k)] = regime::to_string(v.regime);
    details[std::to_string(k)] = report::to_json(v);
  }
  emit(a.common, dump({{"command", "classify"}, {"K", a.K}, {"verdicts", summary}, {"details", details}}));
  return exit_ok;
}

} // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Exact and simulated transmission probabilities of the delta-quantum machine"};
  app.require_subcommand(1);

  TablesArgs tables;
  auto * tables_cmd = app.add_subcommand("tables", "Exact transmission table P_tr^k(E) of S_K");
  tables_cmd->add_option("--K", tables.K, "Number of spheres")->required();
  tables_cmd->add_flag("--golden", tables.golden, "Check against the published table (K = 2..7)");
  tables_cmd->add_option("--golden-file", tables.golden_file, "Check against a table saved with --format json")
      ->excludes("--golden");
  add_output_options(*tables_cmd, tables.common, "grid", {"grid", "csv", "json"});

  SimulateArgs sim;
  auto * sim_cmd = app.add_subcommand("simulate", "Monte Carlo ensemble of k-measurements");
  sim_cmd->add_option("--kp", sim.k_plus, "Positive spheres K+")->required();
  sim_cmd->add_option("--km", sim.k_minus, "Negative spheres K-")->required();
  sim_cmd->add_option("--k", sim.k, "Tranche size")->required();
  sim_cmd->add_option("--n", sim.n, "Number of trials")->required()->check(CLI::PositiveNumber);
  sim_cmd->add_flag("--trace", sim.trace, "Include the phase trace of the first trial");
  add_random_options(*sim_cmd, sim.common);
  add_output_options(*sim_cmd, sim.common, "json", {"csv", "json"});

  SimulateArgs conv;
  auto * conv_cmd = app.add_subcommand("convergence", "Empirical frequency against number of trials");
  conv_cmd->add_option("--kp", conv.k_plus, "Positive spheres K+")->required();
  conv_cmd->add_option("--km", conv.k_minus, "Negative spheres K-")->required();
  conv_cmd->add_option("--k", conv.k, "Tranche size")->required();
  conv_cmd->add_option("--schedule", conv.schedule, "Trial counts")->delimiter(',')->check(CLI::PositiveNumber);
  add_random_options(*conv_cmd, conv.common);
  add_output_options(*conv_cmd, conv.common, "json", {"csv", "json"});

  ScatterArgs scatter;
  auto * scatter_cmd = app.add_subcommand("scatter", "Delta-potential amplitudes and probabilities");
  scatter_cmd->add_option("--E", scatter.energies, "Energies")->delimiter(',');
  scatter_cmd->add_option("--grid", scatter.grid, "Uniform energy grid lo:hi:n");
  scatter_cmd->add_option("--lambda", scatter.coupling, "Coupling in units of sqrt(2 hbar^2/m)");
  scatter_cmd->add_option("--packet-center", scatter.packet_center, "Center of a Gaussian energy packet");
  scatter_cmd->add_option("--packet-width", scatter.packet_width, "Width of the Gaussian packet");
  scatter_cmd->add_option("--packet-points", scatter.packet_points, "Quadrature nodes of the packet grid");
  add_output_options(*scatter_cmd, scatter.common, "json", {"csv", "json"});

  EpsilonArgs eps;
  auto * eps_cmd = app.add_subcommand("epsilon", "Epsilon-elastic spin machine");
  eps_cmd->add_option("--theta", eps.theta, "Angle between state and elastic, in [0, pi]")->required();
  eps_cmd->add_option("--eps", eps.eps, "Breakable fraction in [0, 1]")->required();
  eps_cmd->add_option("--n", eps.n, "Simulated trials (0 for closed form only)");
  add_random_options(*eps_cmd, eps.common);
  add_output_options(*eps_cmd, eps.common, "json", {"csv", "json"});

  ClassifyArgs classify;
  auto * classify_cmd = app.add_subcommand("classify", "Regime of every k-measurement, or of one row");
  classify_cmd->add_option("--K", classify.K, "Number of spheres");
  classify_cmd->add_option("--row", classify.row, "Comma-separated P_tr for K+ = 0..K, e.g. 0,0,3/10,7/10,1,1");
  add_output_options(*classify_cmd, classify.common, "json", {"csv", "json"});

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const & e)
  {
    return app.exit(e);
  }
  catch (CLI::CallForAllHelp const & e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const & e)
  {
    app.exit(e);
    return exit_usage;
  }

  try
  {
    if (*tables_cmd)
      return run_tables(tables);
    if (*sim_cmd)
      return run_simulate(sim);
    if (*conv_cmd)
      return run_convergence(conv);
    if (*scatter_cmd)
      return run_scatter(scatter);
    if (*eps_cmd)
      return run_epsilon(eps);
    if (*classify_cmd)
      return run_classify(classify);
  }
  catch (UsageError const & e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  catch (std::invalid_argument const & e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
