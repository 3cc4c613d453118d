// Walks S_K for a few K: exact table row, regime, witnesses and a short simulation per k.
//
//   ./regime_tour [K]

#include <cstdlib>
#include <iostream>

#include "deltaqm/kmodel.hpp"
#include "deltaqm/machine.hpp"
#include "deltaqm/regime.hpp"

int main(int argc, char ** argv)
{
  using namespace deltaqm;
  int const K = argc > 1 ? std::atoi(argv[1]) : 7;
  auto const table = probability_table(K);
  auto const verdicts = regime::classify_table(table);

  for (int k = 1; k <= K; ++k)
  {
    auto const & v = verdicts.at(k);
    std::cout << "k=" << k << "  " << regime::to_string(v.regime) << "\n  P_tr:";
    for (int kp = 0; kp <= K; ++kp)
      std::cout << ' ' << table.at(k, kp).to_string();
    std::cout << "\n  witnesses:";
    for (auto const & w : v.witnesses)
    {
      std::cout << ' ' << regime::to_string(w.kind);
      if (w.state)
        std::cout << "(E=" << w.state->energy_label() << ')';
    }

    // Simulate the state closest to E = 1.
    ElectricState const mid((K + 1) / 2, K / 2);
    auto const sim = machine::run_ensemble(mid, KMeasurement{k}, 20000, 2024);
    std::cout << "\n  simulated E=" << mid.energy_label() << ": " << sim.frequency_decimal() << " +- "
              << sim.half_width() << " (exact " << table.at(k, mid.k_plus()).to_double() << ")\n";
  }
}
