#include <algorithm>

#include "doctest.h"
#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/report_io.hpp"
#include "ocasbox/search.hpp"
#include "oracles.hpp"

using namespace ocasbox;

namespace {

LocalRule rule_at(std::uint32_t index, int d) {
  return bipermutive_from_generating(TruthTable::from_word(d - 2, index), d);
}

SearchConfig config(int d) {
  SearchConfig c;
  c.diameter = d;
  return c;
}

std::string canon(const SearchReport& r) { return report_to_json(r, false); }

}  // namespace

TEST_CASE("pairwise balancedness") {
  const auto r150 = LocalRule::from_wolfram(150, 3);
  const auto r90 = LocalRule::from_wolfram(90, 3);
  CHECK(pairwise_balanced(r150, r90));
  CHECK_FALSE(pairwise_balanced(r150, r150));
  CHECK_THROWS_AS(pairwise_balanced(r150, LocalRule::from_wolfram(0x6996, 4)), std::invalid_argument);

  // Word form against four explicit counts over all rule pairs at d = 4 and random d = 6.
  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      const auto f = rule_at(a, 4), g = rule_at(b, 4);
      CHECK(pairwise_balanced(f, g) == pairwise_balanced_words(f.table().to_word(), g.table().to_word(), 4));
    }
  }
  std::mt19937_64 rng(61);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t f = rng(), g = rng();
    std::array<int, 4> counts{};
    for (int x = 0; x < 64; ++x) ++counts[((f >> x) & 1) * 2 + ((g >> x) & 1)];
    const bool expect = std::all_of(counts.begin(), counts.end(), [](int c) { return c == 16; });
    REQUIRE(pairwise_balanced_words(f, g, 6) == expect);
  }
}

TEST_CASE("pair enumeration") {
  auto count = [](SearchConfig c) {
    std::uint64_t n = 0;
    enumerate_pairs(c, [&](const LocalRule&, const LocalRule&) { ++n; });
    return n;
  };
  auto plain = [](int d) {
    auto c = config(d);
    c.use_pb_filter = false;
    c.exclude_linear_rules = false;
    return c;
  };
  CHECK(count(plain(3)) == 16);
  CHECK(count(plain(4)) == 256);
  CHECK(count(plain(5)) == 65536);

  auto c = plain(4);
  c.partition = PartitionRange{2, 5};
  CHECK(count(c) == 3 * 16);
  c.exclude_linear_rules = true;
  std::uint64_t n = 0;
  enumerate_pairs(c, [&](const LocalRule& f, const LocalRule& g) {
    ++n;
    CHECK(algebraic_degree(f.table()) >= 2);
    CHECK(algebraic_degree(g.table()) >= 2);
  });
  CHECK(n > 0);

  CHECK(bipermutive_rule_count(6) == 65536);
  auto bad = config(7);
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = config(4);
  bad.partition = PartitionRange{0, 17};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad.partition = PartitionRange{5, 2};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = config(4);
  bad.worker_count = 0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("rule tables") {
  const auto d3 = precompute_bipermutive_tables(3);
  CHECK(d3.rule_count() == 4);
  CHECK(d3.entries_per_rule() == 16);
  std::mt19937_64 rng(63);
  for (int d = 3; d <= 6; ++d) {
    const auto store = precompute_bipermutive_tables(d);
    const int n = 2 * (d - 1);
    for (int i = 0; i < 1000 / 4; ++i) {
      const auto r = static_cast<std::uint32_t>(rng() % store.rule_count());
      const auto x = static_cast<std::uint32_t>(rng() % store.entries_per_rule());
      REQUIRE(store.table(r)[x] == oracle::ca(rule_at(r, d).table(), x, n));
    }
  }
  CHECK_THROWS_AS(precompute_bipermutive_tables(6, 1 << 20), ResourceError);
  const std::vector<LocalRule> mixed{rule_at(0, 3), rule_at(0, 4)};
  CHECK_THROWS_AS(precompute_rule_tables(mixed), std::invalid_argument);
}

TEST_CASE("table rows of the published search") {
  const auto d4 = run_search(config(4));
  CHECK(d4.oca_pairs == 32);
  CHECK(d4.by_nonlinearity == std::map<int, std::uint64_t>{{0, 32}});
  CHECK(d4.by_dimension == std::map<int, std::uint64_t>{{3, 32}});

  const auto d5 = run_search(config(5));
  CHECK(d5.oca_pairs == 1536);
  CHECK(d5.by_nonlinearity == std::map<int, std::uint64_t>{{0, 1536}});
  CHECK(d5.by_dimension == std::map<int, std::uint64_t>{{3, 64}, {4, 1472}});
  CHECK(d5.non_bijective == 0);
  CHECK(d5.non_polynomial == 0);

  for (const auto& r : {d4, d5}) {
    std::uint64_t sum = 0;
    for (const auto& [nl, c] : r.by_nonlinearity) sum += c;
    CHECK(sum == r.oca_pairs);
    sum = 0;
    for (const auto& [dim, c] : r.by_dimension) sum += c;
    CHECK(sum == r.by_nonlinearity.at(0));
  }

  // No nonlinear rule pairs are orthogonal at d = 3.
  CHECK(run_search(config(3)).oca_pairs == 0);
}

TEST_CASE("filter soundness and swap symmetry") {
  for (int d : {4, 5}) {
    auto with = config(d), without = config(d);
    with.record_pairs = without.record_pairs = true;
    without.use_pb_filter = false;
    const auto a = run_search(with), b = run_search(without);
    CHECK(a.pairs == b.pairs);
    CHECK(a.oca_pairs == b.oca_pairs);
    CHECK(b.pb_pairs == a.pb_pairs);
    CHECK(b.total_pairs_scanned == a.total_pairs_scanned);
  }
  auto c = config(4);
  c.exclude_linear_rules = false;
  c.use_pb_filter = false;
  c.record_pairs = true;
  const auto all = run_search(c);
  std::set<OcaPair> set(all.pairs.begin(), all.pairs.end());
  for (const auto& p : all.pairs) CHECK(set.contains(OcaPair{p.right, p.left}));
  for (const auto& p : all.pairs) {
    CHECK(are_orthogonal(latin_square_from_rule(rule_at(p.left, 4)), latin_square_from_rule(rule_at(p.right, 4))));
  }
  CHECK(all.oca_pairs_swap_reduced() * 2 == all.oca_pairs);
}

TEST_CASE("determinism and merging") {
  auto c = config(5);
  const auto base = canon(run_search(c));
  for (unsigned w : {2u, 3u, 8u}) {
    c.worker_count = w;
    CHECK(canon(run_search(c)) == base);
  }

  auto part = [](int d, std::uint64_t s, std::uint64_t e) {
    auto c = config(d);
    c.partition = PartitionRange{s, e};
    return run_search(c);
  };
  SUBCASE("two halves at d = 4") {
    CHECK(canon(merge_reports(part(4, 0, 8), part(4, 8, 16))) == canon(run_search(config(4))));
  }
  SUBCASE("quarters at d = 5 in every order") {
    std::vector<SearchReport> q{part(5, 0, 64), part(5, 64, 128), part(5, 128, 192), part(5, 192, 256)};
    std::vector<int> order{0, 1, 2, 3};
    do {
      SearchReport acc;
      for (int i : order) acc = merge_reports(acc, q[i]);
      REQUIRE(canon(acc) == base);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  SUBCASE("identity and errors") {
    const auto r = run_search(config(4));
    CHECK(canon(merge_reports(SearchReport{}, r)) == canon(r));
    CHECK(canon(merge_reports(r, SearchReport{})) == canon(r));
    CHECK_THROWS_AS(merge_reports(part(4, 0, 8), part(4, 4, 12)), std::invalid_argument);
    CHECK_THROWS_AS(merge_reports(r, run_search(config(5))), std::invalid_argument);
    auto nf = config(4);
    nf.use_pb_filter = false;
    CHECK_THROWS_AS(merge_reports(part(4, 0, 8), run_search(nf)), std::invalid_argument);
  }
}

TEST_CASE("run control") {
  auto c = config(5);
  c.worker_count = 2;
  std::atomic<bool> cancel{true};
  RunControl ctl;
  ctl.cancel = &cancel;
  const auto stopped = run_search(c, ctl);
  CHECK(stopped.interrupted);
  CHECK(stopped.ranges.empty());

  std::map<std::uint64_t, SearchReport> rows;
  RunControl rec;
  rec.on_row_complete = [&](std::uint64_t left, const SearchReport& row) { rows.emplace(left, row); };
  const auto full = run_search(c, rec);
  CHECK(rows.size() == 256);
  SearchReport sum;
  for (const auto& [left, row] : rows) sum = merge_reports(sum, row);
  CHECK(canon(sum) == canon(full));

  // Skipping rows and merging them back in reproduces the full run.
  RunControl skip;
  for (std::uint64_t i = 0; i < 100; ++i) skip.skip_left.insert(i);
  SearchReport prior;
  for (std::uint64_t i = 0; i < 100; ++i) prior = merge_reports(prior, rows.at(i));
  CHECK(canon(merge_reports(prior, run_search(c, skip))) == canon(full));

  int calls = 0;
  RunControl prog;
  prog.progress_interval_ms = 1;
  prog.progress = [&](const SearchProgress& p) {
    ++calls;
    CHECK(p.rows_done <= p.rows_total);
  };
  run_search(c, prog);
  CHECK(calls >= 1);
}

TEST_CASE("analysis of one pair") {
  const auto a = analyze_pair(LocalRule::from_wolfram(150, 3), LocalRule::from_wolfram(90, 3));
  CHECK(a.bijective);
  CHECK(a.nonlinearity == 0);
  CHECK(a.lcs.dimension == 4);
  REQUIRE(a.generator);
}
