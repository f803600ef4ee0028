#include "ocasbox/sbox.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "ocasbox/gf2_subspace.hpp"

namespace ocasbox {

namespace {

// XOR of the coordinates selected by v; bit (count - 1 - i) picks coords[i].
TruthTable combine(const std::vector<TruthTable>& coords, std::uint32_t v) {
  const std::size_t count = coords.size();
  TruthTable t(coords.front().n_vars());
  for (std::size_t i = 0; i < count; ++i) {
    if ((v >> (count - 1 - i)) & 1u) t ^= coords[i];
  }
  return t;
}

bool is_affine_spectrum(const WalshSpectrum& w) {
  return static_cast<std::size_t>(w.max_abs()) == w.coeffs.size();
}

LcsResult finish(int n, const Gf2Subspace& space) {
  LcsResult r;
  r.n = n;
  r.dimension = space.dimension();
  for (auto v : space.canonical_basis()) r.basis.push_back(static_cast<std::uint32_t>(v));
  for (auto v : space.nonzero_elements()) r.members.push_back(static_cast<std::uint32_t>(v));
  return r;
}

LcsResult lcs_walsh_scan(const SBox& s) {
  const int n = s.n();
  const auto coords = coordinate_functions(s);
  Gf2Subspace space(n);
  std::vector<std::uint32_t> members;
  for (std::uint32_t v = 1; v < (1u << n); ++v) {
    if (is_affine_spectrum(walsh_transform(combine(coords, v)))) members.push_back(v);
  }
  for (auto v : members) space.insert(v);
  LcsResult r = finish(n, space);
  // The scan is authoritative for membership; the span must agree with it.
  if (r.members != members) {
    throw std::logic_error("linear components are not closed under xor");
  }
  return r;
}

LcsResult lcs_anf_kernel(const SBox& s) {
  const int n = s.n();
  const auto coords = coordinate_functions(s);

  struct Row {
    std::vector<std::uint64_t> bits;
    std::uint32_t tag;
  };
  std::vector<Row> pivots;
  Gf2Subspace kernel(n);

  for (int i = 0; i < n; ++i) {
    Row row{std::vector<std::uint64_t>(coords[static_cast<std::size_t>(i)].words().begin(),
                                       coords[static_cast<std::size_t>(i)].words().end()),
            1u << (n - 1 - i)};
    mobius_in_place(row.bits, n);
    // Drop the affine monomials: the constant and the n single variables.
    row.bits[0] &= ~std::uint64_t{1};
    for (int k = 0; k < n; ++k) {
      const std::size_t u = std::size_t{1} << k;
      row.bits[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
    }
    for (const auto& p : pivots) {
      const auto lead = std::find_if(p.bits.begin(), p.bits.end(), [](auto w) { return w != 0; });
      const auto word = static_cast<std::size_t>(lead - p.bits.begin());
      const std::uint64_t bit = *lead & (~*lead + 1);
      if (row.bits[word] & bit) {
        for (std::size_t w = 0; w < row.bits.size(); ++w) row.bits[w] ^= p.bits[w];
        row.tag ^= p.tag;
      }
    }
    if (std::all_of(row.bits.begin(), row.bits.end(), [](auto w) { return w == 0; })) {
      kernel.insert(row.tag);
    } else {
      pivots.push_back(std::move(row));
    }
  }
  return finish(n, kernel);
}

}  // namespace

ComponentSelector::ComponentSelector(std::uint32_t v, int n) : v_(v) {
  if (v == 0) throw std::invalid_argument("component selector must be nonzero");
  if (n < 32 && (v >> n) != 0) throw std::invalid_argument("component selector wider than n bits");
}

TruthTable component_function(const SBox& s, ComponentSelector v) {
  const std::uint32_t sel = v.value();
  if ((sel >> s.n()) != 0) throw std::invalid_argument("component selector wider than n bits");
  return TruthTable::from_predicate(s.n(), [&](std::uint32_t x) {
    return (std::popcount(sel & s[x]) & 1) != 0;
  });
}

std::vector<TruthTable> coordinate_functions(const SBox& s) {
  const int n = s.n();
  std::vector<TruthTable> coords(static_cast<std::size_t>(n), TruthTable(n));
  for (std::size_t x = 0; x < s.size(); ++x) {
    const std::uint32_t y = s[x];
    for (int i = 0; i < n; ++i) {
      if ((y >> (n - 1 - i)) & 1u) coords[static_cast<std::size_t>(i)].set(x, true);
    }
  }
  return coords;
}

int sbox_nonlinearity(const SBox& s, bool early_exit) {
  const int n = s.n();
  const auto coords = coordinate_functions(s);
  const std::uint32_t count = 1u << n;

  std::vector<std::uint32_t> order;
  order.reserve(count - 1);
  if (n % 2 == 0) {
    const int b = n / 2;
    for (int i = 0; i < b; ++i) order.push_back((1u << (n - 1 - i)) | (1u << (b - 1 - i)));
  }
  const std::size_t paired = order.size();
  for (std::uint32_t v = 1; v < count; ++v) {
    if (std::find(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(paired), v) ==
        order.begin() + static_cast<std::ptrdiff_t>(paired)) {
      order.push_back(v);
    }
  }

  int best = static_cast<int>(count / 2);
  for (auto v : order) {
    best = std::min(best, nonlinearity(combine(coords, v)));
    if (early_exit && best == 0) return 0;
  }
  return best;
}

int sbox_degree(const SBox& s) {
  int degree = 0;
  for (const auto& c : coordinate_functions(s)) degree = std::max(degree, algebraic_degree(c));
  return degree;
}

bool is_bijective(const SBox& s) {
  std::vector<bool> seen(s.size(), false);
  for (auto y : s.table()) {
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

LcsResult linear_components_space(const SBox& s, LcsMethod method) {
  return method == LcsMethod::walsh_scan ? lcs_walsh_scan(s) : lcs_anf_kernel(s);
}

std::string lcs_to_json(const LcsResult& lcs, const std::string& generator_poly) {
  std::ostringstream os;
  os << "{\"n\":" << lcs.n << ",\"dimension\":" << lcs.dimension << ",\"basis\":[";
  const int digits = std::max(1, (lcs.n + 3) / 4);
  for (std::size_t i = 0; i < lcs.basis.size(); ++i) {
    os << (i ? "," : "") << '"' << std::hex;
    os.width(digits);
    os.fill('0');
    os << lcs.basis[i] << std::dec << '"';
  }
  os << "]";
  if (!generator_poly.empty()) os << ",\"generator_poly\":\"" << generator_poly << '"';
  os << "}";
  return os.str();
}

bool coordinate_degree_check(const LocalRule& f, int n) {
  const int d = f.diameter();
  const int m = n - d + 1;
  if (n < d || n > kMaxVars || m > 12) {
    throw std::invalid_argument("coordinate_degree_check: need d <= n <= 16 and n - d + 1 <= 12");
  }
  const int target = algebraic_degree(f.table());
  const std::size_t window = (std::size_t{1} << d) - 1;
  std::vector<TruthTable> coords;
  for (int i = 1; i <= m; ++i) {
    const int shift = m - i;
    coords.push_back(TruthTable::from_predicate(n, [&](std::uint32_t x) {
      return f((x >> shift) & window);
    }));
  }
  for (std::uint32_t v = 1; v < (1u << m); ++v) {
    if (algebraic_degree(combine(coords, v)) != target) return false;
  }
  return true;
}

}  // namespace ocasbox
