#pragma once

// Polynomials over GF(2), bit i holding the coefficient of X^i.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ocasbox {

class Gf2Poly {
 public:
  Gf2Poly() = default;  // zero polynomial

  static Gf2Poly from_mask(std::uint64_t mask);
  static Gf2Poly monomial(int exponent);
  /// X^n + 1
  static Gf2Poly x_pow_plus_one(int n);
  /// Inverse of to_string(); accepts "1 + X + X^3", "X^2", "0".
  static Gf2Poly parse(std::string_view text);

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return words_.empty(); }
  bool coeff(int i) const;
  void flip(int i);

  /// Coefficient mask; throws std::overflow_error when degree >= 64.
  std::uint64_t to_mask() const;

  /// Ascending-power sparse form, "1 + X^3".
  std::string to_string() const;
  /// Lowercase hex of the coefficient mask, "9" for 1 + X^3.
  std::string to_hex() const;

  Gf2Poly shifted(int k) const;

  Gf2Poly& operator+=(const Gf2Poly& other);
  friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) { return a += b; }
  friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b);

  friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;
  /// Orders as the integer whose bits are the coefficients.
  friend std::strong_ordering operator<=>(const Gf2Poly& a, const Gf2Poly& b);

 private:
  void trim();

  std::vector<std::uint64_t> words_;  // no trailing zero words
};

/// Remainder of a / m. Throws std::invalid_argument when m is zero.
Gf2Poly poly_mod(const Gf2Poly& a, const Gf2Poly& m);

inline bool divides(const Gf2Poly& g, const Gf2Poly& h) { return poly_mod(h, g).is_zero(); }

}  // namespace ocasbox
