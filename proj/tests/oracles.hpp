#pragma once

// Slow, direct-from-definition reference implementations. Nothing here calls
// the fast paths of the library except for building inputs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/gf2_poly.hpp"
#include "ocasbox/truth_table.hpp"

namespace oracle {

using ocasbox::TruthTable;

inline int dot(std::uint32_t a, std::uint32_t x) { return std::popcount(a & x) & 1; }

// Sum over x of (-1)^(f(x) + a.x), O(4^n).
inline std::vector<std::int64_t> walsh(const TruthTable& t) {
  std::vector<std::int64_t> w(t.size());
  for (std::uint32_t a = 0; a < t.size(); ++a) {
    std::int64_t s = 0;
    for (std::uint32_t x = 0; x < t.size(); ++x) s += ((t.get(x) ? 1 : 0) ^ dot(a, x)) ? -1 : 1;
    w[a] = s;
  }
  return w;
}

// a_u = XOR of f(x) over supp(x) within supp(u).
inline TruthTable mobius(const TruthTable& t) {
  TruthTable out(t.n_vars());
  for (std::uint32_t u = 0; u < t.size(); ++u) {
    bool acc = false;
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      if ((x & ~u) == 0) acc ^= t.get(x);
    }
    out.set(u, acc);
  }
  return out;
}

// Minimum distance to the 2^(n+1) affine functions.
inline int nonlinearity(const TruthTable& t) {
  int best = static_cast<int>(t.size());
  for (std::uint32_t a = 0; a < t.size(); ++a) {
    for (int c = 0; c < 2; ++c) {
      int dist = 0;
      for (std::uint32_t x = 0; x < t.size(); ++x) dist += t.get(x) != static_cast<bool>(dot(a, x) ^ c);
      best = std::min(best, dist);
    }
  }
  return best;
}

inline bool is_affine(const TruthTable& t) { return oracle::nonlinearity(t) == 0; }

// Input bit i (0-based from the left) of an n-bit big-endian word.
inline int cell(std::uint64_t x, int n, int i) { return static_cast<int>((x >> (n - 1 - i)) & 1u); }

// F(x)_i = f(x_i .. x_{i+d-1}), output cell 1 most significant.
inline std::uint64_t ca(const TruthTable& rule, std::uint64_t x, int n) {
  const int d = rule.n_vars();
  std::uint64_t out = 0;
  for (int i = 0; i + d <= n; ++i) {
    std::uint32_t window = 0;
    for (int j = 0; j < d; ++j) window = (window << 1) | static_cast<std::uint32_t>(cell(x, n, i + j));
    out = (out << 1) | (rule.get(window) ? 1u : 0u);
  }
  return out;
}

// Superposed pairs all distinct, by set.
inline bool orthogonal(const ocasbox::LatinSquare& a, const ocasbox::LatinSquare& b) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t r = 0; r < a.order(); ++r) {
    for (std::uint32_t c = 0; c < a.order(); ++c) {
      if (!seen.insert({a.at(r, c), b.at(r, c)}).second) return false;
    }
  }
  return true;
}

// x.H(x) component, naive.
inline TruthTable component(const ocasbox::SBox& s, std::uint32_t v) {
  return TruthTable::from_predicate(s.n(), [&](std::uint32_t x) { return dot(v, s[x]) != 0; });
}

inline std::vector<std::uint32_t> linear_components(const ocasbox::SBox& s) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v < (1u << s.n()); ++v) {
    if (is_affine(component(s, v))) out.push_back(v);
  }
  return out;
}

inline ocasbox::Gf2Poly gcd(ocasbox::Gf2Poly a, ocasbox::Gf2Poly b) {
  while (!b.is_zero()) {
    auto r = ocasbox::poly_mod(a, b);
    a = b;
    b = r;
  }
  return a;
}

inline TruthTable random_table(int n, std::mt19937_64& rng) {
  TruthTable t(n);
  for (auto& w : t.mutable_words()) w = rng();
  if (n < 6) t.mutable_words()[0] &= (std::uint64_t{1} << (1u << n)) - 1;
  return t;
}

}  // namespace oracle
