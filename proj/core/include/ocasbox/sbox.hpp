#pragma once

// Vectorial metrics of (n, n)-functions: component functions, nonlinearity,
// degree, bijectivity and the linear components space (LCS).
//
// Output coordinate i (1-based) of an n-bit S-box word is bit n - i, the
// same big-endian order used for inputs. A component selector v uses the
// same layout: v.H = XOR of the coordinates i with bit n - i of v set.

#include <cstdint>
#include <string>
#include <vector>

#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/truth_table.hpp"

namespace ocasbox {

/// Nonzero n-bit selector v of the component function v.H.
class ComponentSelector {
 public:
  ComponentSelector(std::uint32_t v, int n);
  std::uint32_t value() const { return v_; }

 private:
  std::uint32_t v_;
};

/// Truth table of x -> parity(v & s[x]).
TruthTable component_function(const SBox& s, ComponentSelector v);

/// Coordinate tables, index 0 holding coordinate 1 (the output MSB).
std::vector<TruthTable> coordinate_functions(const SBox& s);

/// Minimum nonlinearity over all 2^n - 1 components. With early_exit the
/// scan visits the F_i ^ G_i selectors e_i | e_(i+n/2) first and stops at the
/// first affine component; the result is the same either way.
int sbox_nonlinearity(const SBox& s, bool early_exit = true);

/// Maximum algebraic degree over the coordinate functions.
int sbox_degree(const SBox& s);

bool is_bijective(const SBox& s);

struct LcsResult {
  int n = 0;
  std::vector<std::uint32_t> members;  // every v != 0 with nl(v.H) = 0, ascending
  int dimension = 0;
  std::vector<std::uint32_t> basis;    // reduced row echelon, leftmost pivot first

  friend bool operator==(const LcsResult&, const LcsResult&) = default;
};

enum class LcsMethod {
  /// Walsh spectrum of every component; v is linear iff some |W| = 2^n.
  walsh_scan,
  /// Kernel of v -> (degree >= 2 part of the ANF of v.H), using linearity of
  /// the Moebius transform. Same result, orders of magnitude faster.
  anf_kernel,
};

LcsResult linear_components_space(const SBox& s, LcsMethod method = LcsMethod::walsh_scan);

/// Serializes {n, dimension, basis (hex rows), generator_poly?}.
std::string lcs_to_json(const LcsResult& lcs, const std::string& generator_poly = {});

/// For the no-boundary CA of length n with local rule f, true iff every
/// nonzero component v.F has the algebraic degree of f. Requires
/// n >= diameter, n <= 16 and n - d + 1 <= 12.
bool coordinate_degree_check(const LocalRule& f, int n);

}  // namespace ocasbox
