#include "ocasbox/cellular_automaton.hpp"

#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ocasbox {

namespace {

void require_bipermutive_pair(const LocalRule& f, const LocalRule& g) {
  if (f.diameter() != g.diameter()) {
    throw std::invalid_argument("superposition: rules have different diameters (" +
                                std::to_string(f.diameter()) + " vs " +
                                std::to_string(g.diameter()) + ")");
  }
  if (!f.is_bipermutive()) throw std::invalid_argument(f.label() + " is not bipermutive");
  if (!g.is_bipermutive()) throw std::invalid_argument(g.label() + " is not bipermutive");
  if (2 * (f.diameter() - 1) > 16) {
    throw std::invalid_argument("superposition: S-box width 2(d-1) exceeds 16 bits");
  }
}

// All 2^(2b) outputs of the CA of a diameter b+1 rule on 2b cells.
std::vector<std::uint32_t> ca_outputs(const LocalRule& rule) {
  const int n = 2 * (rule.diameter() - 1);
  std::vector<std::uint32_t> out(std::size_t{1} << n);
  for (std::size_t x = 0; x < out.size(); ++x) {
    out[x] = static_cast<std::uint32_t>(apply_no_boundary_word(rule.table(), x, n));
  }
  return out;
}

// True when the map i -> key(i) over `count` inputs is injective on [0, range).
template <class Key>
bool injective(std::size_t count, std::size_t range, Key&& key) {
  std::vector<bool> seen(range, false);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = key(i);
    if (seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

}  // namespace

NoBoundaryCA::NoBoundaryCA(LocalRule rule, int input_len)
    : rule_(std::move(rule)), input_len_(input_len) {
  if (input_len_ < rule_.diameter()) {
    throw std::invalid_argument("no-boundary CA: input length " + std::to_string(input_len_) +
                                " is shorter than the diameter");
  }
}

std::vector<std::uint8_t> apply_no_boundary(const NoBoundaryCA& ca,
                                            std::span<const std::uint8_t> input) {
  if (input.size() != static_cast<std::size_t>(ca.input_len())) {
    throw std::invalid_argument("no-boundary CA: expected " + std::to_string(ca.input_len()) +
                                " cells, got " + std::to_string(input.size()));
  }
  const int d = ca.rule().diameter();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(ca.output_len()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t window = 0;
    for (int k = 0; k < d; ++k) {
      const auto cell = input[i + static_cast<std::size_t>(k)];
      if (cell > 1) throw std::invalid_argument("no-boundary CA: cells must be 0 or 1");
      window = (window << 1) | cell;
    }
    out[i] = ca.rule()(window) ? 1 : 0;
  }
  return out;
}

std::uint64_t apply_no_boundary_word(const TruthTable& rule, std::uint64_t x, int n) {
  const int d = rule.n_vars();
  const int m = n - d + 1;
  const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
  std::uint64_t out = 0;
  for (int s = 0; s < m; ++s) {
    out |= std::uint64_t{rule.get((x >> s) & mask)} << s;
  }
  return out;
}

LatinSquare::LatinSquare(std::uint32_t order, std::vector<std::uint32_t> entries)
    : order_(order), entries_(std::move(entries)) {
  if (entries_.size() != std::size_t{order_} * order_) {
    throw std::invalid_argument("latin square: expected order^2 entries");
  }
  for (auto e : entries_) {
    if (e >= order_) throw std::invalid_argument("latin square: entry out of range");
  }
}

LatinSquare latin_square_from_rule(const LocalRule& rule) {
  if (!rule.is_bipermutive()) {
    throw std::domain_error(rule.label() + " is not bipermutive; its CA need not be a Latin square");
  }
  const int b = rule.diameter() - 1;
  if (2 * b > 20) throw std::invalid_argument("latin square: order 2^b too large");
  return LatinSquare(1u << b, ca_outputs(rule));
}

bool is_latin(const LatinSquare& sq) {
  const std::uint32_t n = sq.order();
  for (std::uint32_t r = 0; r < n; ++r) {
    if (!injective(n, n, [&](std::size_t c) { return sq.at(r, static_cast<std::uint32_t>(c)); })) {
      return false;
    }
  }
  for (std::uint32_t c = 0; c < n; ++c) {
    if (!injective(n, n, [&](std::size_t r) { return sq.at(static_cast<std::uint32_t>(r), c); })) {
      return false;
    }
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  if (a.order() != b.order()) throw std::invalid_argument("orthogonality: order mismatch");
  const std::size_t n = a.order();
  const auto ea = a.entries();
  const auto eb = b.entries();
  return injective(ea.size(), n * n, [&](std::size_t i) { return ea[i] * n + eb[i]; });
}

SBox::SBox(int n, std::vector<std::uint32_t> table) : n_(n), table_(std::move(table)) {
  if (n_ < 1 || n_ > kMaxVars) throw std::invalid_argument("sbox: width must be in [1, 16]");
  if (table_.size() != (std::size_t{1} << n_)) {
    throw std::invalid_argument("sbox: table must have 2^n entries");
  }
  for (auto y : table_) {
    if (y >> n_) throw std::invalid_argument("sbox: entry exceeds n bits");
  }
}

SBox SBox::identity(int n) {
  std::vector<std::uint32_t> t(std::size_t{1} << n);
  std::iota(t.begin(), t.end(), 0u);
  return SBox(n, std::move(t));
}

SBox superposition_sbox(const LocalRule& f, const LocalRule& g) {
  require_bipermutive_pair(f, g);
  const int b = f.diameter() - 1;
  auto high = ca_outputs(f);
  const auto low = ca_outputs(g);
  for (std::size_t x = 0; x < high.size(); ++x) high[x] = (high[x] << b) | low[x];
  return SBox(2 * b, std::move(high));
}

bool multipermutation_check(const LocalRule& f, const LocalRule& g) {
  require_bipermutive_pair(f, g);
  const int b = f.diameter() - 1;
  const std::size_t blocks = std::size_t{1} << b;
  const auto fo = ca_outputs(f);
  const auto go = ca_outputs(g);
  // Tuple i = (row, col, F, G). Two tuples agreeing on two blocks differ in at
  // most two, so the property holds iff every projection onto a pair of
  // blocks is injective.
  auto block = [&](std::size_t i, int which) -> std::size_t {
    switch (which) {
      case 0: return i >> b;
      case 1: return i & (blocks - 1);
      case 2: return fo[i];
      default: return go[i];
    }
  };
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      const bool ok = injective(fo.size(), blocks * blocks, [&](std::size_t i) {
        return block(i, p) * blocks + block(i, q);
      });
      if (!ok) return false;
    }
  }
  return true;
}

std::string sbox_to_text(const SBox& s) {
  std::ostringstream os;
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (x) os << (x % 16 == 0 ? '\n' : ' ');
    os << s[x];
  }
  return os.str();
}

std::string sbox_to_json(const SBox& s) {
  std::string out = "[";
  for (std::size_t x = 0; x < s.size(); ++x) {
    if (x) out += ",";
    out += std::to_string(s[x]);
  }
  return out + "]";
}

std::string latin_square_to_json(const LatinSquare& sq) {
  std::string out = "[";
  for (std::uint32_t r = 0; r < sq.order(); ++r) {
    out += r ? ",[" : "[";
    for (std::uint32_t c = 0; c < sq.order(); ++c) {
      if (c) out += ",";
      out += std::to_string(sq.at(r, c));
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace ocasbox
