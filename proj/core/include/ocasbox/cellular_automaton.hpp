#pragma once

// No-boundary cellular automata, the Latin squares of bipermutive rules, and
// the superposition S-box H(x) = F(x) || G(x) of an orthogonal pair.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ocasbox/local_rule.hpp"

namespace ocasbox {

/// One application of a local rule of diameter d over n >= d cells, without
/// boundary conditions: F: F_2^n -> F_2^(n-d+1).
class NoBoundaryCA {
 public:
  NoBoundaryCA(LocalRule rule, int input_len);

  const LocalRule& rule() const { return rule_; }
  int input_len() const { return input_len_; }
  int output_len() const { return input_len_ - rule_.diameter() + 1; }

 private:
  LocalRule rule_;
  int input_len_;
};

/// Output coordinate i (1-based) is the rule applied to cells i..i+d-1.
/// Throws std::invalid_argument on a length mismatch or non-binary cell.
std::vector<std::uint8_t> apply_no_boundary(const NoBoundaryCA& ca,
                                            std::span<const std::uint8_t> input);

/// Word form for n <= 64: cell x_1 is bit n-1 of `x`, output cell 1 is the
/// most significant of the n-d+1 output bits.
std::uint64_t apply_no_boundary_word(const TruthTable& rule, std::uint64_t x, int n);

/// N x N matrix over {0, ..., N-1}, stored row-major.
class LatinSquare {
 public:
  LatinSquare(std::uint32_t order, std::vector<std::uint32_t> entries);

  std::uint32_t order() const { return order_; }
  std::uint32_t at(std::uint32_t row, std::uint32_t col) const {
    return entries_[std::size_t{row} * order_ + col];
  }
  std::span<const std::uint32_t> entries() const { return entries_; }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  std::uint32_t order_;
  std::vector<std::uint32_t> entries_;
};

/// Square of order 2^b for a bipermutive rule of diameter b+1: entry (r, c)
/// is F(r || c) for the CA on 2b cells. Throws std::domain_error for
/// non-bipermutive rules and std::invalid_argument when 2b > 20.
LatinSquare latin_square_from_rule(const LocalRule& rule);

bool is_latin(const LatinSquare& sq);

/// Superposition hits every ordered pair exactly once.
/// Throws std::invalid_argument on an order mismatch.
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);

/// Lookup table of an (n, n)-function, entry x = H(x).
class SBox {
 public:
  SBox(int n, std::vector<std::uint32_t> table);

  static SBox identity(int n);

  int n() const { return n_; }
  std::size_t size() const { return table_.size(); }
  std::uint32_t operator[](std::size_t x) const { return table_[x]; }
  std::span<const std::uint32_t> table() const { return table_; }

  friend bool operator==(const SBox&, const SBox&) = default;

 private:
  int n_;
  std::vector<std::uint32_t> table_;
};

/// H(x) = F(x) || G(x) on n = 2b bits, F in the high b output bits.
/// Throws std::invalid_argument for non-bipermutive rules, mismatched
/// diameters, or n > 16.
SBox superposition_sbox(const LocalRule& f, const LocalRule& g);

/// (2,2)-multipermutation test: the N^2 tuples (x, y, F(x||y), G(x||y)) pairwise
/// differ in at least 3 of their 4 blocks. Same preconditions as
/// superposition_sbox.
bool multipermutation_check(const LocalRule& f, const LocalRule& g);

/// Whitespace-separated decimal entries.
std::string sbox_to_text(const SBox& s);
/// JSON array of integers, index order.
std::string sbox_to_json(const SBox& s);
/// JSON matrix, one array per row.
std::string latin_square_to_json(const LatinSquare& sq);

}  // namespace ocasbox
