#include "ocasbox/gf2_subspace.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ocasbox {

Gf2Subspace::Gf2Subspace(int n) : n_(n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gf2 subspace: n must be in [1, 64]");
}

std::uint64_t Gf2Subspace::reduce(std::uint64_t v) const {
  while (v != 0) {
    const int top = 63 - std::countl_zero(v);
    if (pivot_rows_[top] == 0) return v;
    v ^= pivot_rows_[top];
  }
  return 0;
}

bool Gf2Subspace::insert(std::uint64_t v) {
  if (n_ < 64 && (v >> n_) != 0) throw std::invalid_argument("gf2 subspace: vector wider than n");
  v = reduce(v);
  if (v == 0) return false;
  pivot_rows_[63 - std::countl_zero(v)] = v;
  ++dimension_;
  return true;
}

std::vector<std::uint64_t> Gf2Subspace::canonical_basis() const {
  std::vector<std::uint64_t> rows;
  std::uint64_t pivots = 0;
  for (int bit = 63; bit >= 0; --bit) {
    if (pivot_rows_[bit] != 0) {
      rows.push_back(pivot_rows_[bit]);
      pivots |= std::uint64_t{1} << bit;
    }
  }
  // Clear every other row's pivot columns.
  for (auto& row : rows) {
    const int own = 63 - std::countl_zero(row);
    std::uint64_t others = row & pivots & ~(std::uint64_t{1} << own);
    while (others != 0) {
      const int bit = 63 - std::countl_zero(others);
      const auto it = std::find_if(rows.begin(), rows.end(), [&](std::uint64_t r) {
        return 63 - std::countl_zero(r) == bit;
      });
      row ^= *it;
      others = row & pivots & ~(std::uint64_t{1} << own);
    }
  }
  return rows;
}

std::vector<std::uint64_t> Gf2Subspace::nonzero_elements() const {
  const auto basis = canonical_basis();
  std::vector<std::uint64_t> out;
  out.reserve((std::size_t{1} << basis.size()) - 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((mask >> i) & 1u) v ^= basis[i];
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ocasbox
