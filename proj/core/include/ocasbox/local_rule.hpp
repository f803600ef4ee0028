#pragma once

// Cellular automaton local rules: Wolfram numbering and the bipermutive
// decomposition f(x_1..x_d) = x_1 ^ g(x_2..x_{d-1}) ^ x_d.

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ocasbox/truth_table.hpp"

namespace ocasbox {

/// Wolfram rule numbers reach 2^(2^d) - 1, beyond 64 bits from d = 7.
using WolframNumber = boost::multiprecision::cpp_int;

/// Truth table whose bit i is bit i of `number`.
/// Throws std::invalid_argument for d outside [1, 16] and std::out_of_range
/// when number is negative or not below 2^(2^d).
TruthTable truth_table_from_wolfram(const WolframNumber& number, int d);

WolframNumber wolfram_from_truth_table(const TruthTable& t);

/// Parses a non-negative decimal integer of arbitrary length.
WolframNumber parse_wolfram(std::string_view decimal);

/// Generating function g of d-2 variables when f has the bipermutive form,
/// std::nullopt otherwise. Requires n_vars >= 2.
std::optional<TruthTable> bipermutive_decompose(const TruthTable& t);

class LocalRule {
 public:
  /// Wraps a table of d >= 2 variables and caches its decomposition.
  explicit LocalRule(TruthTable table);

  static LocalRule from_wolfram(const WolframNumber& number, int d) {
    return LocalRule(truth_table_from_wolfram(number, d));
  }

  int diameter() const { return table_.n_vars(); }
  const TruthTable& table() const { return table_; }
  const std::optional<TruthTable>& generating() const { return generating_; }
  bool is_bipermutive() const { return generating_.has_value(); }
  const WolframNumber& wolfram() const { return wolfram_; }

  bool operator()(std::size_t x) const { return table_.get(x); }

  /// "rule 150" style label for d <= 6, hex table otherwise.
  std::string label() const;

  friend bool operator==(const LocalRule& a, const LocalRule& b) { return a.table_ == b.table_; }

 private:
  TruthTable table_;
  std::optional<TruthTable> generating_;
  WolframNumber wolfram_;
};

/// The unique bipermutive rule of diameter d with generating function g.
/// Throws std::invalid_argument unless g.n_vars() == d - 2.
LocalRule bipermutive_from_generating(const TruthTable& g, int d);

/// Packed truth table (d <= 6) of the bipermutive rule whose generating
/// function has table bits `generating_bits`. Hot-path form used by search.
std::uint64_t bipermutive_word(std::uint32_t generating_bits, int d);

}  // namespace ocasbox
