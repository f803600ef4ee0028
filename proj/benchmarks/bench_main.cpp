#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/sbox.hpp"
#include "ocasbox/search.hpp"
#include "ocasbox/truth_table.hpp"

using namespace ocasbox;

namespace {

TruthTable random_table(int n, std::mt19937_64& rng) {
  TruthTable t(n);
  for (auto& w : t.mutable_words()) w = rng();
  if (n < 6) t = TruthTable::from_word(n, t.words()[0] & ((std::uint64_t{1} << (1u << n)) - 1));
  return t;
}

LocalRule rule_at(std::uint32_t index, int d) {
  return bipermutive_from_generating(TruthTable::from_word(d - 2, index), d);
}

void BM_Walsh(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto t = random_table(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(walsh_transform(t));
}
BENCHMARK(BM_Walsh)->Arg(6)->Arg(10)->Arg(16);

void BM_Mobius(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto t = random_table(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(mobius_transform(t));
}
BENCHMARK(BM_Mobius)->Arg(6)->Arg(10)->Arg(16);

// Orthogonality test of one d=6 pair on precomputed tables.
void BM_OrthogonalTables(benchmark::State& state) {
  static const auto store = precompute_bipermutive_tables(6);
  std::mt19937_64 rng(3);
  for (auto _ : state) {
    const auto a = static_cast<std::uint32_t>(rng() & 0xffff), b = static_cast<std::uint32_t>(rng() & 0xffff);
    benchmark::DoNotOptimize(orthogonal_tables(store.table(a), store.table(b), 5));
  }
}
BENCHMARK(BM_OrthogonalTables);

// One left row of the d=6 search: 65536 balancedness tests.
void BM_BalancedRow(benchmark::State& state) {
  std::vector<std::uint64_t> words(65536);
  for (std::uint32_t i = 0; i < words.size(); ++i) words[i] = bipermutive_word(i, 6);
  std::uint32_t left = 12345;
  for (auto _ : state) {
    int count = 0;
    for (auto w : words) count += pairwise_balanced_words(words[left], w, 6);
    benchmark::DoNotOptimize(count);
    left = (left + 1) & 0xffff;
  }
}
BENCHMARK(BM_BalancedRow);

void BM_Lcs(benchmark::State& state) {
  SearchConfig c;
  c.diameter = 6;
  c.partition = PartitionRange{0, 400};
  c.record_pairs = true;
  static const auto pairs = run_search(c).pairs;
  const auto& p = pairs.at(0);
  const auto box = superposition_sbox(rule_at(p.left, 6), rule_at(p.right, 6));
  const auto method = state.range(0) == 0 ? LcsMethod::walsh_scan : LcsMethod::anf_kernel;
  for (auto _ : state) benchmark::DoNotOptimize(linear_components_space(box, method));
}
BENCHMARK(BM_Lcs)->Arg(0)->Arg(1)->ArgName("anf_kernel");

void BM_SearchD5(benchmark::State& state) {
  SearchConfig c;
  c.diameter = 5;
  for (auto _ : state) benchmark::DoNotOptimize(run_search(c));
}
BENCHMARK(BM_SearchD5)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
