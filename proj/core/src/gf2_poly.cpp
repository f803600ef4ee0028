#include "ocasbox/gf2_poly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace ocasbox {

void Gf2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Gf2Poly Gf2Poly::from_mask(std::uint64_t mask) {
  Gf2Poly p;
  if (mask != 0) p.words_.push_back(mask);
  return p;
}

Gf2Poly Gf2Poly::monomial(int exponent) {
  if (exponent < 0) throw std::invalid_argument("gf2 poly: negative exponent");
  Gf2Poly p;
  p.flip(exponent);
  return p;
}

Gf2Poly Gf2Poly::x_pow_plus_one(int n) {
  Gf2Poly p = monomial(n);
  p.flip(0);
  return p;
}

Gf2Poly Gf2Poly::parse(std::string_view text) {
  Gf2Poly p;
  std::string term;
  auto flush = [&] {
    if (term.empty()) throw std::invalid_argument("gf2 poly: empty term");
    int exponent = -1;
    if (term == "1") {
      exponent = 0;
    } else if (term == "X" || term == "x") {
      exponent = 1;
    } else if (term.size() > 2 && (term[0] == 'X' || term[0] == 'x') && term[1] == '^' &&
               std::all_of(term.begin() + 2, term.end(), [](unsigned char c) { return std::isdigit(c); })) {
      exponent = std::stoi(term.substr(2));
    } else if (term == "0") {
      term.clear();
      return;
    } else {
      throw std::invalid_argument("gf2 poly: cannot parse term '" + term + "'");
    }
    p.flip(exponent);
    term.clear();
  };
  for (char c : text) {
    if (c == ' ') continue;
    if (c == '+') {
      flush();
    } else {
      term += c;
    }
  }
  flush();
  return p;
}

int Gf2Poly::degree() const {
  if (words_.empty()) return -1;
  return static_cast<int>(64 * (words_.size() - 1)) + 63 - std::countl_zero(words_.back());
}

bool Gf2Poly::coeff(int i) const {
  const auto w = static_cast<std::size_t>(i) / 64;
  return i >= 0 && w < words_.size() && ((words_[w] >> (i % 64)) & 1u);
}

void Gf2Poly::flip(int i) {
  const auto w = static_cast<std::size_t>(i) / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] ^= std::uint64_t{1} << (i % 64);
  trim();
}

std::uint64_t Gf2Poly::to_mask() const {
  if (words_.size() > 1) throw std::overflow_error("gf2 poly: degree too large for a 64-bit mask");
  return words_.empty() ? 0 : words_[0];
}

std::string Gf2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= degree(); ++i) {
    if (!coeff(i)) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += "1";
    } else if (i == 1) {
      out += "X";
    } else {
      out += "X^" + std::to_string(i);
    }
  }
  return out;
}

std::string Gf2Poly::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (is_zero()) return "0";
  std::string out;
  for (int nibble = degree() / 4; nibble >= 0; --nibble) {
    unsigned v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<unsigned>(coeff(4 * nibble + k)) << k;
    out += kDigits[v];
  }
  return out;
}

Gf2Poly Gf2Poly::shifted(int k) const {
  Gf2Poly out;
  for (int i = 0; i <= degree(); ++i) {
    if (coeff(i)) out.flip(i + k);
  }
  return out;
}

Gf2Poly& Gf2Poly::operator+=(const Gf2Poly& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
  Gf2Poly out;
  for (int i = 0; i <= a.degree(); ++i) {
    if (a.coeff(i)) out += b.shifted(i);
  }
  return out;
}

std::strong_ordering operator<=>(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.words_.size() != b.words_.size()) return a.words_.size() <=> b.words_.size();
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
  }
  return std::strong_ordering::equal;
}

Gf2Poly poly_mod(const Gf2Poly& a, const Gf2Poly& m) {
  if (m.is_zero()) throw std::invalid_argument("gf2 poly: modulus is zero");
  Gf2Poly r = a;
  const int dm = m.degree();
  while (r.degree() >= dm) r += m.shifted(r.degree() - dm);
  return r;
}

}  // namespace ocasbox
