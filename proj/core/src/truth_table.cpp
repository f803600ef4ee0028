#include "ocasbox/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>

namespace ocasbox {

namespace {

std::size_t word_count(int n_vars) {
  return n_vars <= 6 ? 1 : (std::size_t{1} << (n_vars - 6));
}

std::uint64_t low_mask(int n_vars) {
  return n_vars >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << n_vars)) - 1);
}

// Positions whose index bit k is clear, for in-word butterfly steps k < 6.
constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
    0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull,
};

void check_vars(int n_vars) {
  if (n_vars < 0 || n_vars > kMaxVars) {
    throw std::invalid_argument("truth table: n_vars must be in [0, 16], got " +
                                std::to_string(n_vars));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

TruthTable::TruthTable(int n_vars) : n_vars_(n_vars) {
  check_vars(n_vars);
  words_.assign(word_count(n_vars), 0);
}

TruthTable TruthTable::from_word(int n_vars, std::uint64_t bits) {
  if (n_vars > 6) throw std::invalid_argument("truth table: from_word needs n_vars <= 6");
  TruthTable t(n_vars);
  if ((bits & ~low_mask(n_vars)) != 0) {
    throw std::out_of_range("truth table: bits beyond 2^n_vars entries are set");
  }
  t.words_[0] = bits;
  return t;
}

TruthTable TruthTable::from_words(int n_vars, std::span<const std::uint64_t> words) {
  TruthTable t(n_vars);
  if (words.size() != t.words_.size()) {
    throw std::invalid_argument("truth table: word count does not match n_vars");
  }
  if ((words.back() & ~low_mask(n_vars)) != 0) {
    throw std::out_of_range("truth table: bits beyond 2^n_vars entries are set");
  }
  std::copy(words.begin(), words.end(), t.words_.begin());
  return t;
}

TruthTable TruthTable::from_hex(int n_vars, std::string_view hex) {
  TruthTable t(n_vars);
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("truth table: empty hex string");
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const int v = hex_value(*it);
    if (v < 0) {
      throw std::invalid_argument("truth table: invalid hex digit '" + std::string(1, *it) + "'");
    }
    for (int k = 0; k < 4; ++k) {
      if (((v >> k) & 1) == 0) continue;
      if (bit + k >= t.size()) {
        throw std::out_of_range("truth table: hex value exceeds 2^" + std::to_string(n_vars) +
                                " entries");
      }
      t.set(bit + k, true);
    }
  }
  return t;
}

std::uint64_t TruthTable::to_word() const {
  if (n_vars_ > 6) throw std::logic_error("truth table: to_word needs n_vars <= 6");
  return words_[0];
}

std::size_t TruthTable::weight() const {
  std::size_t w = 0;
  for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::string TruthTable::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, size() / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned v = 0;
    for (unsigned k = 0; k < 4; ++k) {
      const std::size_t x = 4 * d + k;
      if (x < size() && get(x)) v |= 1u << k;
    }
    out[digits - 1 - d] = kDigits[v];
  }
  return out;
}

TruthTable& TruthTable::operator^=(const TruthTable& other) {
  if (other.n_vars_ != n_vars_) throw std::invalid_argument("truth table: arity mismatch in xor");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::int32_t WalshSpectrum::max_abs() const {
  std::int32_t m = 0;
  for (auto c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

void mobius_in_place(std::span<std::uint64_t> words, int n_vars) {
  const int in_word = std::min(n_vars, 6);
  for (int k = 0; k < in_word; ++k) {
    const unsigned shift = 1u << k;
    for (auto& w : words) w ^= (w & kLowHalf[k]) << shift;
  }
  for (int k = 6; k < n_vars; ++k) {
    const std::size_t stride = std::size_t{1} << (k - 6);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i & stride) words[i] ^= words[i ^ stride];
    }
  }
}

AnfCoefficients mobius_transform(const TruthTable& t) {
  AnfCoefficients anf{t};
  mobius_in_place(anf.coeffs.mutable_words(), t.n_vars());
  return anf;
}

TruthTable truth_table_from_anf(const AnfCoefficients& anf) {
  TruthTable t = anf.coeffs;
  mobius_in_place(t.mutable_words(), t.n_vars());
  return t;
}

int algebraic_degree(const AnfCoefficients& anf) {
  int degree = 0;
  const auto words = anf.coeffs.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint64_t w = words[i];
    while (w != 0) {
      const auto u = (i << 6) | static_cast<std::size_t>(std::countr_zero(w));
      degree = std::max(degree, std::popcount(u));
      w &= w - 1;
    }
  }
  return degree;
}

int algebraic_degree(const TruthTable& t) { return algebraic_degree(mobius_transform(t)); }

WalshSpectrum walsh_transform(const TruthTable& t) {
  WalshSpectrum w{t.n_vars(), std::vector<std::int32_t>(t.size())};
  auto& c = w.coeffs;
  for (std::size_t x = 0; x < c.size(); ++x) c[x] = t.get(x) ? -1 : 1;
  for (std::size_t len = 1; len < c.size(); len <<= 1) {
    for (std::size_t i = 0; i < c.size(); i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const auto a = c[j];
        const auto b = c[j + len];
        c[j] = a + b;
        c[j + len] = a - b;
      }
    }
  }
  return w;
}

int nonlinearity(const WalshSpectrum& w) {
  return static_cast<int>((std::size_t{1} << w.n_vars) / 2) - w.max_abs() / 2;
}

int nonlinearity(const TruthTable& t) { return nonlinearity(walsh_transform(t)); }

bool is_balanced(const TruthTable& t) {
  return t.n_vars() > 0 && t.weight() == t.size() / 2;
}

std::string anf_to_string(const AnfCoefficients& anf) {
  const int n = anf.n_vars();
  std::vector<std::size_t> monomials;
  for (std::size_t u = 0; u < anf.coeffs.size(); ++u) {
    if (anf[u]) monomials.push_back(u);
  }
  if (monomials.empty()) return "0";
  // Degree first, then by variable indices (x1 before x2).
  std::sort(monomials.begin(), monomials.end(), [](std::size_t a, std::size_t b) {
    const int da = std::popcount(a), db = std::popcount(b);
    if (da != db) return da < db;
    return a > b;
  });
  std::string out;
  for (auto u : monomials) {
    if (!out.empty()) out += " + ";
    if (u == 0) {
      out += "1";
      continue;
    }
    bool first = true;
    for (int j = 1; j <= n; ++j) {
      if ((u >> (n - j)) & 1u) {
        if (!first) out += "*";
        out += "x" + std::to_string(j);
        first = false;
      }
    }
  }
  return out;
}

}  // namespace ocasbox
