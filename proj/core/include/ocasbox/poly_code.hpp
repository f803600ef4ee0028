#pragma once

// Linear codes viewed as polynomial codes: a (n, k) code generated by the k
// shifts g, Xg, ..., X^(k-1) g of a generator g of degree n - k.
//
// Orientation: a codeword (c_1, ..., c_n) is the polynomial
// c_1 + c_2 X + ... + c_n X^(n-1), i.e. the leftmost coordinate is the
// constant term. In the word form used here bit i holds c_(i+1). LCS
// selectors (see sbox.hpp) keep coordinate 1 in the top bit, so they are
// bit-reversed on the way in by codeword_from_selector().

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ocasbox/gf2_poly.hpp"
#include "ocasbox/sbox.hpp"

namespace ocasbox {

inline constexpr const char* kCodeOrientation =
    "leftmost codeword coordinate = constant term of the polynomial";

/// Bit i of v becomes the coefficient of X^i.
Gf2Poly vector_as_poly(std::uint64_t v);
/// Inverse of vector_as_poly for polynomials of degree < n.
std::uint64_t poly_as_vector(const Gf2Poly& p, int n);

/// Reverses the n low bits, mapping an S-box selector to codeword order.
std::uint64_t codeword_from_selector(std::uint64_t selector, int n);

// The rows X^i g, i < k, span the code. deg g may fall short of n - k, in
// which case the last n - k - deg g coordinates of every codeword are zero
// (a zero-padded code). cyclic requires the full length and g | X^n + 1.
struct PolynomialCode {
  int n = 0;
  int k = 0;
  Gf2Poly generator;
  bool cyclic = false;

  /// n - k - deg g; 0 for a full-length code.
  int padding() const { return n - k - generator.degree(); }

  /// Rows X^i g for i = 0..k-1, as codeword words.
  std::vector<std::uint64_t> generator_rows() const;
  friend bool operator==(const PolynomialCode&, const PolynomialCode&) = default;
};

/// Whether the k-dimensional length-n code generated by g is cyclic.
bool is_cyclic_code(const Gf2Poly& g, int n, int k);

struct NotPolynomialCode {
  Gf2Poly minimal_codeword;
  std::string reason;
};

using GeneratorExtraction = std::variant<PolynomialCode, NotPolynomialCode>;

/// The unique nonzero member of least polynomial degree. Throws
/// std::domain_error if two distinct members share the least degree, which
/// cannot happen for a subspace.
Gf2Poly minimal_degree_codeword(std::span<const std::uint64_t> members);

/// Recognises the code spanned by `members` (codeword words of length n,
/// zero vector optional) as a polynomial code. Throws std::invalid_argument
/// for an empty list and std::domain_error when members plus zero do not
/// form a subspace.
GeneratorExtraction extract_generator(std::span<const std::uint64_t> members, int n);

/// extract_generator on the members of an LCS, after the selector-to-codeword
/// bit reversal. Throws std::invalid_argument for dimension 0.
GeneratorExtraction classify_lcs(const LcsResult& lcs);

/// Key of a generator class. Orders by dimension descending, then generator
/// ascending as an integer.
struct GeneratorClass {
  int dimension = 0;
  Gf2Poly generator;

  friend bool operator==(const GeneratorClass&, const GeneratorClass&) = default;
  friend bool operator<(const GeneratorClass& a, const GeneratorClass& b) {
    if (a.dimension != b.dimension) return a.dimension > b.dimension;
    return a.generator < b.generator;
  }
};

struct Classification {
  std::map<GeneratorClass, std::uint64_t> classes;
  std::uint64_t non_polynomial = 0;
  std::vector<NotPolynomialCode> failures;  // first few, for reporting

  void add(const GeneratorExtraction& e, int dimension, std::uint64_t count = 1);
  void merge(const Classification& other);
};

Classification classify_generators(std::span<const LcsResult> results);

/// One class of a published classification.
struct ReferenceClass {
  int dimension;
  const char* generator;
  std::uint64_t count;
};

/// Published generator classes for diameters 4, 5 and 6; empty otherwise.
std::span<const ReferenceClass> reference_classes(int diameter);

struct ClassComparison {
  /// Per dimension, the multiset of class sizes agrees.
  bool cardinalities_match = true;
  std::vector<std::string> notes;  // every divergence, one line each
};

/// Compares class sizes per dimension and reports generator polynomials
/// that appear on only one side.
ClassComparison compare_with_reference(const std::map<GeneratorClass, std::uint64_t>& classes,
                                       std::span<const ReferenceClass> reference);

}  // namespace ocasbox
