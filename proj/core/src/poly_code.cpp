#include "ocasbox/poly_code.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ocasbox/gf2_subspace.hpp"

namespace ocasbox {

Gf2Poly vector_as_poly(std::uint64_t v) { return Gf2Poly::from_mask(v); }

std::uint64_t poly_as_vector(const Gf2Poly& p, int n) {
  if (p.degree() >= n) {
    throw std::invalid_argument("poly_as_vector: degree " + std::to_string(p.degree()) +
                                " does not fit length " + std::to_string(n));
  }
  return p.to_mask();
}

std::uint64_t codeword_from_selector(std::uint64_t selector, int n) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i) {
    if ((selector >> i) & 1u) out |= std::uint64_t{1} << (n - 1 - i);
  }
  return out;
}

std::vector<std::uint64_t> PolynomialCode::generator_rows() const {
  std::vector<std::uint64_t> rows;
  for (int i = 0; i < k; ++i) rows.push_back(poly_as_vector(generator.shifted(i), n));
  return rows;
}

Gf2Poly minimal_degree_codeword(std::span<const std::uint64_t> members) {
  int best_degree = 64;
  std::uint64_t best = 0;
  bool tie = false;
  for (auto v : members) {
    if (v == 0) continue;
    const int deg = vector_as_poly(v).degree();
    if (deg < best_degree) {
      best_degree = deg;
      best = v;
      tie = false;
    } else if (deg == best_degree && v != best) {
      tie = true;
    }
  }
  if (best == 0) throw std::invalid_argument("minimal_degree_codeword: no nonzero member");
  if (tie) {
    throw std::domain_error("two distinct codewords of least degree " +
                            std::to_string(best_degree) + "; their sum has lower degree");
  }
  return vector_as_poly(best);
}

GeneratorExtraction extract_generator(std::span<const std::uint64_t> members, int n) {
  if (members.empty()) throw std::invalid_argument("extract_generator: empty member list");
  Gf2Subspace space(n);
  std::set<std::uint64_t> distinct;
  for (auto v : members) {
    if (v == 0) continue;
    space.insert(v);
    distinct.insert(v);
  }
  if (distinct.empty()) throw std::invalid_argument("extract_generator: only the zero vector");
  const int k = space.dimension();
  if (distinct.size() != (std::size_t{1} << k) - 1) {
    throw std::domain_error("extract_generator: " + std::to_string(distinct.size()) +
                            " members do not form a subspace of dimension " + std::to_string(k));
  }
  const std::vector<std::uint64_t> sorted(distinct.begin(), distinct.end());
  const Gf2Poly g = minimal_degree_codeword(sorted);

  // Some codeword has degree <= n - k (eliminate from the top), so only the
  // shift condition can fail.
  for (int i = 0; i < k; ++i) {
    if (!space.contains(poly_as_vector(g.shifted(i), n))) {
      return NotPolynomialCode{g, "shift X^" + std::to_string(i) + " * (" + g.to_string() +
                                      ") leaves the code"};
    }
  }
  // k shifts of distinct degree are independent, so they span the k-dim code.
  return PolynomialCode{n, k, g, is_cyclic_code(g, n, k)};
}

bool is_cyclic_code(const Gf2Poly& g, int n, int k) {
  return !g.is_zero() && g.degree() == n - k && divides(g, Gf2Poly::x_pow_plus_one(n));
}

GeneratorExtraction classify_lcs(const LcsResult& lcs) {
  if (lcs.dimension < 1) throw std::invalid_argument("classify_lcs: LCS has dimension 0");
  std::vector<std::uint64_t> words;
  words.reserve(lcs.members.size());
  for (auto v : lcs.members) words.push_back(codeword_from_selector(v, lcs.n));
  return extract_generator(words, lcs.n);
}

void Classification::add(const GeneratorExtraction& e, int dimension, std::uint64_t count) {
  if (const auto* code = std::get_if<PolynomialCode>(&e)) {
    classes[GeneratorClass{dimension, code->generator}] += count;
  } else {
    non_polynomial += count;
    if (failures.size() < 16) failures.push_back(std::get<NotPolynomialCode>(e));
  }
}

void Classification::merge(const Classification& other) {
  for (const auto& [key, count] : other.classes) classes[key] += count;
  non_polynomial += other.non_polynomial;
  for (const auto& f : other.failures) {
    if (failures.size() < 16) failures.push_back(f);
  }
}

Classification classify_generators(std::span<const LcsResult> results) {
  Classification out;
  for (const auto& lcs : results) out.add(classify_lcs(lcs), lcs.dimension);
  return out;
}

namespace {

constexpr ReferenceClass kReferenceD4[] = {
    {3, "1 + X^3", 32},
};

constexpr ReferenceClass kReferenceD5[] = {
    {4, "1 + X^4", 1472},
    {3, "X + X^4 + X^5", 16},
    {3, "1 + X^4 + X^5", 16},
    {3, "1 + X + X^4", 16},
    {3, "1 + X + X^6", 16},
};

constexpr ReferenceClass kReferenceD6[] = {
    {5, "1 + X^5", 525920},
    {4, "X + X^5 + X^6", 496},
    {4, "1 + X + X^6", 496},
    {4, "1 + X^5 + X^6", 496},
    {4, "1 + X + X^5", 496},
    {3, "1 + X + X^2 + X^5 + X^7", 96},
    {3, "1 + X^2 + X^5 + X^6 + X^7", 96},
    {3, "X^2 + X^5 + X^7", 16},
    {3, "X^2 + X^5 + X^6 + X^7", 16},
    {3, "X + X^2 + X^5 + X^6 + X^7", 16},
    {3, "1 + X + X^2 + X^5 + X^6", 16},
    {3, "1 + X^5 + X^7", 16},
    {3, "1 + X^2 + X^5", 16},
    {3, "1 + X + X^2 + X^6 + X^7", 16},
    {3, "1 + X + X^5 + X^6 + X^7", 16},
    {3, "1 + X^5 + X^6 + X^7", 16},
    {3, "1 + X + X^2 + X^5", 16},
    {3, "1 + X + X^2 + X^7", 16},
    {3, "1 + X^2 + X^7", 16},
};

}  // namespace

std::span<const ReferenceClass> reference_classes(int diameter) {
  switch (diameter) {
    case 4: return kReferenceD4;
    case 5: return kReferenceD5;
    case 6: return kReferenceD6;
    default: return {};
  }
}

ClassComparison compare_with_reference(const std::map<GeneratorClass, std::uint64_t>& classes,
                                       std::span<const ReferenceClass> reference) {
  ClassComparison out;
  std::map<int, std::multiset<std::uint64_t>> ours_sizes, ref_sizes;
  std::map<int, std::set<Gf2Poly>> ours_polys, ref_polys;
  for (const auto& [key, count] : classes) {
    ours_sizes[key.dimension].insert(count);
    ours_polys[key.dimension].insert(key.generator);
  }
  for (const auto& r : reference) {
    ref_sizes[r.dimension].insert(r.count);
    ref_polys[r.dimension].insert(Gf2Poly::parse(r.generator));
  }

  std::set<int> dims;
  for (const auto& [d, _] : ours_sizes) dims.insert(d);
  for (const auto& [d, _] : ref_sizes) dims.insert(d);
  auto sizes_text = [](const std::multiset<std::uint64_t>& s) {
    std::string t;
    for (auto it = s.rbegin(); it != s.rend(); ++it) t += (t.empty() ? "" : ",") + std::to_string(*it);
    return "{" + t + "}";
  };
  for (int d : dims) {
    if (ours_sizes[d] != ref_sizes[d]) {
      out.cardinalities_match = false;
      out.notes.push_back("dim " + std::to_string(d) + ": class sizes " + sizes_text(ours_sizes[d]) +
                          " vs reference " + sizes_text(ref_sizes[d]));
    }
    for (const auto& p : ours_polys[d]) {
      if (!ref_polys[d].contains(p)) {
        out.notes.push_back("dim " + std::to_string(d) + ": generator " + p.to_string() +
                            " not in the reference list");
      }
    }
    for (const auto& p : ref_polys[d]) {
      if (!ours_polys[d].contains(p)) {
        out.notes.push_back("dim " + std::to_string(d) + ": reference generator " + p.to_string() +
                            " not found");
      }
    }
  }
  return out;
}

}  // namespace ocasbox
