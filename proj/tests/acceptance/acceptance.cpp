// Acceptance run: one PASS/FAIL line per criterion.
//
//   ocasbox_acceptance [--long-run] [--jobs N]
//
// Without --long-run the d=6 criteria check a fixed sub-partition and merge
// consistency only and say so on their line.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/poly_code.hpp"
#include "ocasbox/report_io.hpp"
#include "ocasbox/sbox.hpp"
#include "ocasbox/search.hpp"
#include "oracles.hpp"

using namespace ocasbox;

namespace {

using Counts = std::map<int, std::uint64_t>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  failures += !o.pass;
  std::ostringstream line;
  line << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << std::fixed;
  line.precision(1);
  line << s << "s]";
  if (!o.detail.empty()) line << " - " << o.detail;
  std::cout << line.str() << std::endl;
}

std::string show(const Counts& c) {
  std::ostringstream o;
  o << '{';
  for (auto it = c.begin(); it != c.end(); ++it) o << (it == c.begin() ? "" : ", ") << it->first << ": " << it->second;
  o << '}';
  return o.str();
}

SearchConfig config(int d, unsigned jobs = 1) {
  SearchConfig c;
  c.diameter = d;
  c.worker_count = jobs;
  return c;
}

std::string canon(const SearchReport& r) { return report_to_json(r, false); }

LocalRule rule_at(std::uint32_t index, int d) {
  return bipermutive_from_generating(TruthTable::from_word(d - 2, index), d);
}

Outcome table_row(const SearchReport& r, std::uint64_t pairs, const Counts& nl, const Counts& dim) {
  std::ostringstream o;
  o << r.oca_pairs << " pairs, nl " << show(r.by_nonlinearity) << ", dim " << show(r.by_dimension);
  const bool ok = r.oca_pairs == pairs && r.by_nonlinearity == nl && r.by_dimension == dim && !r.interrupted;
  return {ok, o.str()};
}

// Cardinality check of one diameter's classes against expected sizes per
// dimension; generator identities are only reported.
Outcome class_sizes(const std::map<GeneratorClass, std::uint64_t>& classes, std::uint64_t non_polynomial,
                    const std::map<int, std::multiset<std::uint64_t>>& expected, int d) {
  std::map<int, std::multiset<std::uint64_t>> got;
  for (const auto& [key, count] : classes) got[key.dimension].insert(count);
  std::ostringstream o;
  for (const auto& [dim, sizes] : got) {
    o << "dim " << dim << ": " << sizes.size() << " classes ";
    std::map<std::uint64_t, int> hist;
    for (auto s : sizes) ++hist[s];
    for (auto it = hist.begin(); it != hist.end(); ++it) o << (it == hist.begin() ? "" : "+") << it->second << "x" << it->first;
    o << "; ";
  }
  o << "non-polynomial " << non_polynomial;
  const auto cmp = compare_with_reference(classes, reference_classes(d));
  if (!cmp.notes.empty()) {
    o << "; vs published list:";
    for (const auto& n : cmp.notes) o << " [" << n << "]";
  }
  return {got == expected && non_polynomial == 0, o.str()};
}

// Every property of the suite, each a named check.
Outcome property_suite() {
  std::vector<std::string> failed;
  int count = 0;
  auto check = [&](const std::string& name, bool ok) {
    ++count;
    if (!ok) failed.push_back(name);
  };
  std::mt19937_64 rng(2024);

  {
    bool ok = true;
    for (int n = 0; n <= 12 && ok; ++n) {
      for (int i = 0; i < 20; ++i) {
        const auto t = oracle::random_table(n, rng);
        ok &= truth_table_from_anf(mobius_transform(t)) == t;
        ok &= mobius_transform(truth_table_from_anf(AnfCoefficients{t})).coeffs == t;
      }
    }
    check("moebius involution", ok);
  }
  {
    bool ok = true;
    for (int n = 1; n <= 12; ++n) {
      for (int i = 0; i < 20; ++i) {
        const auto w = walsh_transform(oracle::random_table(n, rng));
        std::int64_t sum = 0;
        for (auto c : w.coeffs) sum += std::int64_t{c} * c;
        ok &= sum == (std::int64_t{1} << (2 * n));
      }
    }
    check("parseval", ok);
  }
  {
    bool walsh_ok = true, nl_ok = true;
    for (int n = 1; n <= 4; ++n) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (1u << n)); ++bits) {
        const auto t = TruthTable::from_word(n, bits);
        const auto w = walsh_transform(t);
        const auto ref = oracle::walsh(t);
        for (std::size_t a = 0; a < ref.size(); ++a) walsh_ok &= w[a] == ref[a];
        nl_ok &= nonlinearity(t) == oracle::nonlinearity(t);
      }
    }
    check("fast walsh vs naive (n <= 4, all functions)", walsh_ok);
    check("nonlinearity vs affine brute force (n <= 4, all functions)", nl_ok);
  }
  {
    bool latin = true, bij = true;
    for (int d = 2; d <= 4; ++d) {
      const auto rules = bipermutive_rule_count(d);
      std::vector<LatinSquare> squares;
      std::vector<LocalRule> list;
      for (std::uint32_t i = 0; i < rules; ++i) {
        list.push_back(rule_at(i, d));
        squares.push_back(latin_square_from_rule(list.back()));
        latin &= is_latin(squares.back());
      }
      for (std::uint32_t i = 0; i < rules; ++i) {
        for (std::uint32_t j = 0; j < rules; ++j) {
          bij &= oracle::orthogonal(squares[i], squares[j]) == is_bijective(superposition_sbox(list[i], list[j]));
        }
      }
    }
    check("latin square of every bipermutive rule (d <= 4)", latin);
    check("orthogonal iff superposition bijective (d <= 4, all pairs)", bij);
  }
  {
    bool ok = true;
    for (std::uint32_t i = 0; i < 4; ++i) {
      for (std::uint32_t j = 0; j < 4; ++j) {
        const auto f = rule_at(i, 3), g = rule_at(j, 3);
        ok &= are_orthogonal(latin_square_from_rule(f), latin_square_from_rule(g)) == multipermutation_check(f, g);
      }
    }
    check("orthogonal iff multipermutation (d = 3, all pairs)", ok);
  }
  {
    bool ok = true;
    for (int d = 3; d <= 5; ++d) {
      int tested = 0;
      while (tested < 100) {
        const auto f = rule_at(static_cast<std::uint32_t>(rng() % bipermutive_rule_count(d)), d);
        const int n = d + 1 + static_cast<int>(rng() % 3);
        ok &= coordinate_degree_check(f, n);
        ++tested;
      }
    }
    check("CA components keep the local rule degree (d <= 5, 100 rules each)", ok);
  }
  {
    bool support = true, shift = true, code_ok = true, closure = true;
    int linear = 0;
    for (int d = 4; d <= 5; ++d) {
      auto c = config(d);
      c.record_pairs = true;
      const int b = d - 1, n = 2 * b;
      const std::uint32_t full = (1u << n) - 1, low = (1u << b) - 1;
      for (const auto& p : run_search(c).pairs) {
        const auto lcs = linear_components_space(superposition_sbox(rule_at(p.left, d), rule_at(p.right, d)));
        if (lcs.dimension == 0) continue;
        ++linear;
        const std::set<std::uint32_t> members(lcs.members.begin(), lcs.members.end());
        closure &= members.size() + 1 == (std::size_t{1} << lcs.dimension);
        for (auto u : lcs.members) {
          for (auto v : lcs.members) closure &= u == v || members.contains(u ^ v);
          support &= (u >> b) != 0 && (u & low) != 0;
          if (((u >> b) & 1u) == 0 && (u & 1u) == 0) shift &= members.contains(u >> 1);
          if (((u >> (n - 1)) & 1u) == 0 && ((u >> (b - 1)) & 1u) == 0) shift &= members.contains((u << 1) & full);
        }
        code_ok &= std::holds_alternative<PolynomialCode>(classify_lcs(lcs));
      }
    }
    check("linear components meet both halves (d = 4, 5)", support && linear > 0);
    check("shift closure of linear components (d = 4, 5)", shift);
    check("polynomial code extraction (d = 4, 5)", code_ok);
    check("LCS closed under addition", closure);
  }
  {
    bool ok = true;
    for (int i = 0; i < 3; ++i) {
      std::vector<std::uint32_t> t(1024);
      std::iota(t.begin(), t.end(), 0u);
      std::shuffle(t.begin(), t.end(), rng);
      ok &= sbox_nonlinearity(SBox(10, t)) <= 480;
    }
    check("sbox nonlinearity <= 480 at n = 10", ok);
  }

  std::ostringstream o;
  o << count - static_cast<int>(failed.size()) << '/' << count << " properties";
  for (const auto& f : failed) o << "; failed: " << f;
  return {failed.empty(), o.str()};
}

std::vector<OcaPair> pair_set(int d, bool filter) {
  auto c = config(d);
  c.use_pb_filter = filter;
  c.record_pairs = true;
  return run_search(c).pairs;
}

}  // namespace

int main(int argc, char** argv) {
  bool long_run = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--long-run") == 0) {
      long_run = true;
    } else if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      jobs = static_cast<unsigned>(std::stoul(argv[++i]));
    } else {
      std::cerr << "usage: " << argv[0] << " [--long-run] [--jobs N]\n";
      return 1;
    }
  }

  const auto d4 = run_search(config(4));
  const auto d5 = run_search(config(5));

  run(1, "search at d=4", [&] { return table_row(d4, 32, {{0, 32}}, {{3, 32}}); });
  run(2, "search at d=5", [&] { return table_row(d5, 1536, {{0, 1536}}, {{3, 64}, {4, 1472}}); });

  // The d=6 report feeds criteria 3 and 6.
  SearchReport d6;
  std::string d6_scope;
  if (long_run) {
    d6 = run_search(config(6, jobs));
    std::ostringstream t;
    t << "full run, search " << std::fixed;
    t.precision(0);
    t << d6.wall_time_seconds << "s on " << jobs << " worker(s)";
    d6_scope = t.str();
  } else {
    auto part = [&](std::uint64_t s, std::uint64_t e) {
      auto c = config(6, jobs);
      c.partition = PartitionRange{s, e};
      return run_search(c);
    };
    const auto whole = part(0, 96);
    const auto merged = merge_reports(merge_reports(part(64, 96), part(0, 32)), part(32, 64));
    d6 = whole;
    d6_scope = canon(whole) == canon(merged) ? "sub-partition [0, 96) only, merge consistent; use --long-run for the table"
                                             : "sub-partition merge MISMATCH";
  }

  run(3, "search at d=6", [&] {
    if (!long_run) return Outcome{d6_scope.find("MISMATCH") == std::string::npos, d6_scope};
    auto o = table_row(d6, 532800, {{128, 4448}, {64, 64}, {0, 528288}}, {{3, 384}, {4, 1984}, {5, 525920}});
    o.pass &= d6.oca_pairs % 8 == 0;
    o.detail += ", divisible by 8: " + std::string(d6.oca_pairs % 8 == 0 ? "yes" : "no") + "; " + d6_scope;
    return o;
  });

  run(4, "generator classes at d=4", [&] {
    const auto it = d4.by_generator.find(GeneratorClass{3, Gf2Poly::parse("1 + X^3")});
    const bool only = d4.by_generator.size() == 1 && it != d4.by_generator.end() && it->second == 32;
    const bool cyclic = is_cyclic_code(Gf2Poly::parse("1 + X^3"), 6, 3);
    return Outcome{only && cyclic && d4.non_polynomial == 0,
                   std::string("32 x 1 + X^3: ") + (only ? "yes" : "no") + ", cyclic: " + (cyclic ? "yes" : "no")};
  });

  run(5, "generator classes at d=5", [&] {
    auto o = class_sizes(d5.by_generator, d5.non_polynomial, {{4, {1472}}, {3, {16, 16, 16, 16}}}, 5);
    const auto top = GeneratorClass{4, Gf2Poly::parse("1 + X^4")};
    const bool dominant = d5.by_generator.contains(top) && d5.by_generator.at(top) == 1472 &&
                          is_cyclic_code(top.generator, 8, 4);
    o.pass &= dominant;
    o.detail = std::string("1 + X^4 cyclic x 1472: ") + (dominant ? "yes" : "no") + "; " + o.detail;
    return o;
  });

  run(6, "generator classes at d=6", [&] {
    if (!long_run) return Outcome{d6_scope.find("MISMATCH") == std::string::npos, d6_scope};
    std::multiset<std::uint64_t> dim3{96, 96};
    for (int i = 0; i < 12; ++i) dim3.insert(16);
    auto o = class_sizes(d6.by_generator, d6.non_polynomial, {{5, {525920}}, {4, {496, 496, 496, 496}}, {3, dim3}}, 6);
    const bool top = d6.by_generator.contains(GeneratorClass{5, Gf2Poly::parse("1 + X^5")});
    o.pass &= top;
    o.detail = std::string("dim 5 is 1 + X^5: ") + (top ? "yes" : "no") + "; " + o.detail;
    return o;
  });

  run(7, "property suite", property_suite);

  run(8, "balancedness filter soundness", [] {
    std::ostringstream o;
    bool ok = true;
    for (int d : {4, 5}) {
      const auto a = pair_set(d, true), b = pair_set(d, false);
      ok &= a == b;
      o << "d=" << d << ": " << a.size() << " vs " << b.size() << (a == b ? " identical" : " differ") << "; ";
    }
    return Outcome{ok, o.str()};
  });

  run(9, "determinism and merge at d=5", [&] {
    const auto base = canon(d5);
    std::ostringstream o;
    bool ok = true;
    for (unsigned w : {2u, 8u}) {
      const bool same = canon(run_search(config(5, w))) == base;
      ok &= same;
      o << w << " workers " << (same ? "identical" : "differ") << "; ";
    }
    auto half = [](std::uint64_t s, std::uint64_t e) {
      auto c = config(5);
      c.partition = PartitionRange{s, e};
      return run_search(c);
    };
    const bool merged = canon(merge_reports(half(128, 256), half(0, 128))) == base;
    ok &= merged;
    o << "merged halves " << (merged ? "identical" : "differ");
    return Outcome{ok, o.str()};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
