#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ocasbox {

/// Incrementally built subspace of F_2^n (n <= 64). Vectors are words whose
/// most significant of the n bits is coordinate 1, so "leftmost pivot" means
/// highest bit.
class Gf2Subspace {
 public:
  explicit Gf2Subspace(int n);

  int n() const { return n_; }
  int dimension() const { return dimension_; }

  /// Adds v to the spanning set; true if the dimension grew.
  bool insert(std::uint64_t v);
  bool contains(std::uint64_t v) const { return reduce(v) == 0; }

  /// Reduced row echelon basis, rows ordered by pivot from the leftmost
  /// coordinate. Unique for a given subspace.
  std::vector<std::uint64_t> canonical_basis() const;

  /// All nonzero vectors, ascending.
  std::vector<std::uint64_t> nonzero_elements() const;

 private:
  std::uint64_t reduce(std::uint64_t v) const;

  int n_;
  int dimension_ = 0;
  std::array<std::uint64_t, 64> pivot_rows_{};  // indexed by pivot bit; 0 = none
};

}  // namespace ocasbox
