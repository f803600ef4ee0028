#pragma once

// Boolean functions of up to 16 variables and their standard transforms.
//
// Index convention: the input x = (x_1, ..., x_n) maps to the integer whose
// big-endian binary expansion is x, so x_1 is the most significant bit.
// f(0,...,0) sits at index 0 and f(1,...,1) at index 2^n - 1. The same
// convention is used for ANF monomials u and Walsh points a.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ocasbox {

inline constexpr int kMaxVars = 16;

/// Truth table stored as packed 64-bit words, bit i of the table at
/// word i / 64, position i % 64. Tables with fewer than 64 entries occupy
/// the low bits of a single word and keep the unused high bits clear.
class TruthTable {
 public:
  /// Constant-zero function of zero variables.
  TruthTable() : TruthTable(0) {}

  /// Constant-zero function of n_vars variables, 0 <= n_vars <= kMaxVars.
  explicit TruthTable(int n_vars);

  /// Table of n_vars <= 6 variables whose bits are the low 2^n_vars bits of
  /// `bits`.
  static TruthTable from_word(int n_vars, std::uint64_t bits);

  /// Table of n_vars variables from packed words (same layout as words()).
  static TruthTable from_words(int n_vars, std::span<const std::uint64_t> words);

  template <class Predicate>
  static TruthTable from_predicate(int n_vars, Predicate&& f) {
    TruthTable t(n_vars);
    for (std::size_t x = 0; x < t.size(); ++x) {
      if (f(static_cast<std::uint32_t>(x))) t.set(x, true);
    }
    return t;
  }

  /// Parses the hex serialization produced by to_hex(). A "0x" prefix and
  /// omitted leading zeros are accepted.
  static TruthTable from_hex(int n_vars, std::string_view hex);

  int n_vars() const { return n_vars_; }
  std::size_t size() const { return std::size_t{1} << n_vars_; }

  bool get(std::size_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void set(std::size_t x, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (x & 63);
    if (value) {
      words_[x >> 6] |= mask;
    } else {
      words_[x >> 6] &= ~mask;
    }
  }
  bool operator()(std::size_t x) const { return get(x); }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  /// Single-word view for n_vars <= 6.
  std::uint64_t to_word() const;

  /// Hamming weight of the table.
  std::size_t weight() const;

  /// Lowercase hex, most significant digit first, where the most significant
  /// bit is the entry at index 2^n - 1. Rule 150 of 3 variables is "96".
  std::string to_hex() const;

  TruthTable& operator^=(const TruthTable& other);

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_vars_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Coefficients a_u of the algebraic normal form, indexed like a truth table.
struct AnfCoefficients {
  TruthTable coeffs;

  int n_vars() const { return coeffs.n_vars(); }
  bool operator[](std::size_t u) const { return coeffs.get(u); }
  friend bool operator==(const AnfCoefficients&, const AnfCoefficients&) = default;
};

struct WalshSpectrum {
  int n_vars = 0;
  std::vector<std::int32_t> coeffs;

  std::int32_t operator[](std::size_t a) const { return coeffs[a]; }
  std::int32_t max_abs() const;
  friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;
};

/// In-place binary Moebius transform over a packed table of n_vars variables.
/// Shared by the scalar transform and the vectorial code paths.
void mobius_in_place(std::span<std::uint64_t> words, int n_vars);

/// a_u = XOR of f(x) over all x whose support is contained in that of u.
AnfCoefficients mobius_transform(const TruthTable& t);

/// Inverse of mobius_transform (the transform is an involution).
TruthTable truth_table_from_anf(const AnfCoefficients& anf);

/// Largest monomial size in the ANF; 0 for constant functions.
int algebraic_degree(const TruthTable& t);
int algebraic_degree(const AnfCoefficients& anf);

/// Fast Walsh-Hadamard transform of (-1)^f, O(n 2^n).
WalshSpectrum walsh_transform(const TruthTable& t);

/// 2^(n-1) - max|W_f(a)| / 2.
int nonlinearity(const TruthTable& t);
int nonlinearity(const WalshSpectrum& w);

bool is_balanced(const TruthTable& t);

/// Human-readable ANF such as "x1 + x2*x3 + 1"; "0" for the zero function.
std::string anf_to_string(const AnfCoefficients& anf);

}  // namespace ocasbox
