#ifndef DELTAQM_GOLDEN_HPP
#define DELTAQM_GOLDEN_HPP

/** @file deltaqm/golden.hpp
    @brief Published transmission tables for S_2 .. S_7, as printed.

    Entries keep their printed notation, where a numerator may carry a decimal
    point ("4.4/7" = 22/35). Rows are k = 1..K, columns K+ = 0..K.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "deltaqm/kmodel.hpp"
#include "deltaqm/types.hpp"

namespace deltaqm::golden {

using PrintedTable = std::vector<std::vector<std::string_view>>;

// clang-format off
inline std::map<int, PrintedTable> const & printed_tables()
{
  static std::map<int, PrintedTable> const tables{
    {2, {{"0", "1/2", "1"},
         {"0", "1/2", "1"}}},
    {3, {{"0", "1/3", "2/3", "1"},
         {"0", "1/3", "2/3", "1"},
         {"0", "0",   "1",   "1"}}},
    {4, {{"0", "1/4", "2/4", "3/4", "1"},
         {"0", "1/4", "2/4", "3/4", "1"},
         {"0", "0",   "1/2", "1",   "1"},
         {"0", "0",   "1/2", "1",   "1"}}},
    {5, {{"0", "1/5", "2/5",   "3/5",   "4/5", "1"},
         {"0", "1/5", "2/5",   "3/5",   "4/5", "1"},
         {"0", "0",   "1.5/5", "3.5/5", "1",   "1"},
         {"0", "0",   "1.5/5", "3.5/5", "1",   "1"},
         {"0", "0",   "0",     "1",     "1",   "1"}}},
    {6, {{"0", "1/6", "2/6",   "3/6", "4/6",   "5/6", "1"},
         {"0", "1/6", "2/6",   "3/6", "4/6",   "5/6", "1"},
         {"0", "0",   "1.2/6", "3/6", "4.8/6", "1",   "1"},
         {"0", "0",   "1.2/6", "3/6", "4.8/6", "1",   "1"},
         {"0", "0",   "0",     "1/2", "1",     "1",   "1"},
         {"0", "0",   "0",     "1/2", "1",     "1",   "1"}}},
    {7, {{"0", "1/7", "2/7", "3/7",   "4/7",   "5/7", "6/7", "1"},
         {"0", "1/7", "2/7", "3/7",   "4/7",   "5/7", "6/7", "1"},
         {"0", "0",   "1/7", "2.6/7", "4.4/7", "6/7", "1",   "1"},
         {"0", "0",   "1/7", "2.6/7", "4.4/7", "6/7", "1",   "1"},
         {"0", "0",   "0",   "2/7",   "5/7",   "1",   "1",   "1"},
         {"0", "0",   "0",   "2/7",   "5/7",   "1",   "1",   "1"},
         {"0", "0",   "0",   "0",     "1",     "1",   "1",   "1"}}},
  };
  return tables;
}
// clang-format on

/// "a/b" or "a" where a may be a decimal such as "2.6".
inline ExactProbability parse_printed(std::string_view text)
{
  auto const slash = text.find('/');
  std::string_view const num = text.substr(0, slash);
  BigInt den = slash == std::string_view::npos ? BigInt(1) : BigInt(std::string(text.substr(slash + 1)));

  auto const dot = num.find('.');
  std::string digits(num.substr(0, dot));
  if (dot != std::string_view::npos)
  {
    std::string_view const frac = num.substr(dot + 1);
    digits += frac;
    for (std::size_t i = 0; i < frac.size(); ++i)
      den *= 10;
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("golden: malformed entry '" + std::string(text) + "'");
  return ExactProbability(BigInt(digits), den);
}

inline bool has_table(int K) { return printed_tables().contains(K); }

inline ProbabilityTable table(int K)
{
  auto const it = printed_tables().find(K);
  if (it == printed_tables().end())
    throw std::invalid_argument("golden: no published table for K = " + std::to_string(K));
  std::vector<std::vector<ExactProbability>> rows;
  for (auto const & printed_row : it->second)
  {
    auto & row = rows.emplace_back();
    for (auto entry : printed_row)
      row.push_back(parse_printed(entry));
  }
  return ProbabilityTable(K, std::move(rows));
}

struct Mismatch
{
  int k;
  int k_plus;
  ExactProbability expected;
  ExactProbability actual;
};

/// Cells where `computed` differs from `reference`; a size mismatch is reported as a throw.
inline std::vector<Mismatch> compare(ProbabilityTable const & computed, ProbabilityTable const & reference)
{
  if (computed.K() != reference.K())
    throw std::invalid_argument("golden: reference table has K = " + std::to_string(reference.K()) +
                                ", computed K = " + std::to_string(computed.K()));
  std::vector<Mismatch> out;
  for (int k = 1; k <= computed.K(); ++k)
    for (int kp = 0; kp <= computed.K(); ++kp)
      if (computed.at(k, kp) != reference.at(k, kp))
        out.push_back({k, kp, reference.at(k, kp), computed.at(k, kp)});
  return out;
}

/// Cells where `computed` differs from the published table.
inline std::vector<Mismatch> compare(ProbabilityTable const & computed) { return compare(computed, table(computed.K())); }

} // namespace deltaqm::golden

#endif
