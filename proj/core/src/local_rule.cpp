#include "ocasbox/local_rule.hpp"

#include <iterator>
#include <stdexcept>
#include <vector>

namespace ocasbox {

TruthTable truth_table_from_wolfram(const WolframNumber& number, int d) {
  if (d < 1 || d > kMaxVars) {
    throw std::invalid_argument("wolfram: diameter must be in [1, 16], got " + std::to_string(d));
  }
  if (number < 0) throw std::out_of_range("wolfram: rule number is negative");
  const std::size_t bits = std::size_t{1} << d;
  if (number != 0 && boost::multiprecision::msb(number) >= bits) {
    throw std::out_of_range("wolfram: rule number does not fit 2^" + std::to_string(bits));
  }
  std::vector<std::uint64_t> words;
  boost::multiprecision::export_bits(number, std::back_inserter(words), 64, false);
  TruthTable t(d);
  auto dst = t.mutable_words();
  for (std::size_t i = 0; i < words.size() && i < dst.size(); ++i) dst[i] = words[i];
  return t;
}

WolframNumber wolfram_from_truth_table(const TruthTable& t) {
  WolframNumber n;
  const auto words = t.words();
  boost::multiprecision::import_bits(n, words.begin(), words.end(), 64, false);
  return n;
}

WolframNumber parse_wolfram(std::string_view decimal) {
  if (decimal.empty()) throw std::invalid_argument("wolfram: empty rule number");
  for (char c : decimal) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("wolfram: not a decimal number: " + std::string(decimal));
    }
  }
  return WolframNumber(std::string(decimal));
}

std::optional<TruthTable> bipermutive_decompose(const TruthTable& t) {
  const int d = t.n_vars();
  if (d < 2) throw std::invalid_argument("bipermutive: diameter must be at least 2");
  TruthTable g(d - 2);
  const std::size_t center_mask = g.size() - 1;
  for (std::size_t x = 0; x < t.size(); ++x) {
    const bool left = (x >> (d - 1)) & 1u;
    const bool right = x & 1u;
    const std::size_t center = (x >> 1) & center_mask;
    if (!left && !right) {
      g.set(center, t.get(x));
    }
  }
  for (std::size_t x = 0; x < t.size(); ++x) {
    const bool left = (x >> (d - 1)) & 1u;
    const bool right = x & 1u;
    const std::size_t center = (x >> 1) & center_mask;
    if (t.get(x) != (left ^ right ^ g.get(center))) return std::nullopt;
  }
  return g;
}

LocalRule::LocalRule(TruthTable table)
    : table_(std::move(table)),
      generating_(bipermutive_decompose(table_)),
      wolfram_(wolfram_from_truth_table(table_)) {}

std::string LocalRule::label() const {
  if (diameter() <= 6) return "rule " + wolfram_.str() + " (d=" + std::to_string(diameter()) + ")";
  return "rule 0x" + table_.to_hex() + " (d=" + std::to_string(diameter()) + ")";
}

LocalRule bipermutive_from_generating(const TruthTable& g, int d) {
  if (d < 2 || d > kMaxVars || g.n_vars() != d - 2) {
    throw std::invalid_argument("bipermutive: generating function must have d - 2 variables");
  }
  const std::size_t center_mask = g.size() - 1;
  auto table = TruthTable::from_predicate(d, [&](std::uint32_t x) {
    const bool left = (x >> (d - 1)) & 1u;
    const bool right = x & 1u;
    return left ^ right ^ g.get((x >> 1) & center_mask);
  });
  return LocalRule(std::move(table));
}

std::uint64_t bipermutive_word(std::uint32_t generating_bits, int d) {
  const std::uint32_t center_mask = (1u << (d - 2)) - 1;
  std::uint64_t word = 0;
  for (std::uint32_t x = 0; x < (1u << d); ++x) {
    const std::uint32_t value =
        ((x >> (d - 1)) ^ x ^ (generating_bits >> ((x >> 1) & center_mask))) & 1u;
    word |= std::uint64_t{value} << x;
  }
  return word;
}

}  // namespace ocasbox
