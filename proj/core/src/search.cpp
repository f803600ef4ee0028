#include "ocasbox/search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/sbox.hpp"

namespace ocasbox {

namespace {

constexpr std::size_t kRowsPerBlock = 16;

std::vector<PartitionRange> coalesce(std::vector<std::uint64_t> indices) {
  std::sort(indices.begin(), indices.end());
  std::vector<PartitionRange> out;
  for (auto i : indices) {
    if (!out.empty() && out.back().end == i) {
      ++out.back().end;
    } else {
      out.push_back({i, i + 1});
    }
  }
  return out;
}

std::vector<PartitionRange> merge_ranges(std::vector<PartitionRange> a,
                                         const std::vector<PartitionRange>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<PartitionRange> out;
  for (const auto& r : a) {
    if (r.size() == 0) continue;
    if (!out.empty() && r.start < out.back().end) {
      throw std::invalid_argument("merge_reports: partition ranges overlap at index " +
                                  std::to_string(r.start));
    }
    if (!out.empty() && out.back().end == r.start) {
      out.back().end = r.end;
    } else {
      out.push_back(r);
    }
  }
  return out;
}

// Sum of counts without range bookkeeping.
void accumulate(SearchReport& into, const SearchReport& row) {
  into.total_pairs_scanned += row.total_pairs_scanned;
  into.pb_pairs += row.pb_pairs;
  into.oca_pairs += row.oca_pairs;
  for (const auto& [k, v] : row.by_nonlinearity) into.by_nonlinearity[k] += v;
  for (const auto& [k, v] : row.by_dimension) into.by_dimension[k] += v;
  for (const auto& [k, v] : row.by_generator) into.by_generator[k] += v;
  into.non_polynomial += row.non_polynomial;
  into.non_bijective += row.non_bijective;
  into.pairs.insert(into.pairs.end(), row.pairs.begin(), row.pairs.end());
}

SearchReport blank_report(const SearchConfig& config) {
  SearchReport r;
  r.diameter = config.diameter;
  r.use_pb_filter = config.use_pb_filter;
  r.exclude_linear_rules = config.exclude_linear_rules;
  return r;
}

void record(SearchReport& row, const PairAnalysis& a) {
  ++row.oca_pairs;
  if (!a.bijective) ++row.non_bijective;
  ++row.by_nonlinearity[a.nonlinearity];
  if (a.lcs.dimension > 0) {
    ++row.by_dimension[a.lcs.dimension];
    if (const auto* code = std::get_if<PolynomialCode>(&*a.generator)) {
      ++row.by_generator[GeneratorClass{a.lcs.dimension, code->generator}];
    } else {
      ++row.non_polynomial;
    }
  }
}

// Shared read-only state of one search.
struct ScanContext {
  int d = 0;
  int b = 0;
  bool use_pb_filter = true;
  bool exclude_linear = true;
  bool record_pairs = false;
  std::vector<std::uint64_t> words;  // packed truth tables by rule index
  std::vector<std::uint8_t> linear;  // degree <= 1
  RuleTableStore tables;
};

ScanContext make_context(const SearchConfig& config) {
  ScanContext ctx;
  ctx.d = config.diameter;
  ctx.b = config.diameter - 1;
  ctx.use_pb_filter = config.use_pb_filter;
  ctx.exclude_linear = config.exclude_linear_rules;
  ctx.record_pairs = config.record_pairs;
  const auto count = bipermutive_rule_count(ctx.d);
  ctx.words.resize(count);
  ctx.linear.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    ctx.words[i] = bipermutive_word(static_cast<std::uint32_t>(i), ctx.d);
    ctx.linear[i] = algebraic_degree(TruthTable::from_word(ctx.d, ctx.words[i])) <= 1;
  }
  ctx.tables = precompute_bipermutive_tables(ctx.d, config.table_memory_budget);
  return ctx;
}

std::uint64_t candidate_rules(const ScanContext& ctx) {
  if (!ctx.exclude_linear) return ctx.words.size();
  return static_cast<std::uint64_t>(std::count(ctx.linear.begin(), ctx.linear.end(), 0));
}

SearchReport scan_row(const ScanContext& ctx, std::uint32_t left, std::vector<std::uint32_t>& sbox_scratch) {
  SearchReport row;
  if (ctx.exclude_linear && ctx.linear[left]) return row;
  const std::uint64_t fw = ctx.words[left];
  const auto ft = ctx.tables.table(left);
  const auto rules = static_cast<std::uint32_t>(ctx.words.size());
  for (std::uint32_t right = 0; right < rules; ++right) {
    if (ctx.exclude_linear && ctx.linear[right]) continue;
    ++row.total_pairs_scanned;
    if (pairwise_balanced_words(fw, ctx.words[right], ctx.d)) {
      ++row.pb_pairs;
    } else if (ctx.use_pb_filter) {
      continue;
    }
    const auto gt = ctx.tables.table(right);
    if (!orthogonal_tables(ft, gt, ctx.b)) continue;

    sbox_scratch.resize(ft.size());
    for (std::size_t x = 0; x < ft.size(); ++x) {
      sbox_scratch[x] = (std::uint32_t{ft[x]} << ctx.b) | gt[x];
    }
    record(row, analyze_sbox(SBox(2 * ctx.b, sbox_scratch)));
    if (ctx.record_pairs) row.pairs.push_back({left, right});
  }
  return row;
}

}  // namespace

PairAnalysis analyze_sbox(const SBox& s) {
  PairAnalysis a;
  a.bijective = is_bijective(s);
  a.lcs = linear_components_space(s, LcsMethod::anf_kernel);
  if (a.lcs.dimension > 0) {
    a.nonlinearity = 0;
    a.generator = classify_lcs(a.lcs);
  } else {
    a.nonlinearity = sbox_nonlinearity(s, false);
  }
  return a;
}

std::uint64_t bipermutive_rule_count(int diameter) {
  if (diameter < 2 || diameter > kMaxSearchDiameter) {
    throw std::invalid_argument("rule count: diameter must be in [2, 6]");
  }
  return std::uint64_t{1} << (std::uint64_t{1} << (diameter - 2));
}

void validate(const SearchConfig& config) {
  if (config.diameter < kMinSearchDiameter || config.diameter > kMaxSearchDiameter) {
    throw std::invalid_argument("search: diameter must be in [3, 6], got " +
                                std::to_string(config.diameter));
  }
  if (config.worker_count < 1) throw std::invalid_argument("search: worker_count must be >= 1");
  if (config.partition) {
    const auto& p = *config.partition;
    if (p.start > p.end || p.end > bipermutive_rule_count(config.diameter)) {
      throw std::invalid_argument("search: partition [" + std::to_string(p.start) + ", " +
                                  std::to_string(p.end) + ") outside the rule index range");
    }
  }
}

bool pairwise_balanced(const LocalRule& f, const LocalRule& g) {
  if (f.diameter() != g.diameter()) {
    throw std::invalid_argument("pairwise_balanced: diameters differ");
  }
  const int d = f.diameter();
  if (d < 2) return false;
  std::array<std::size_t, 4> counts{};
  for (std::size_t x = 0; x < f.table().size(); ++x) {
    ++counts[(f(x) ? 2u : 0u) | (g(x) ? 1u : 0u)];
  }
  const std::size_t quarter = f.table().size() / 4;
  return std::all_of(counts.begin(), counts.end(), [&](std::size_t c) { return c == quarter; });
}

void enumerate_pairs(const SearchConfig& config,
                     const std::function<void(const LocalRule&, const LocalRule&)>& visit) {
  validate(config);
  const int d = config.diameter;
  const auto count = bipermutive_rule_count(d);
  std::vector<LocalRule> rules;
  rules.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    rules.push_back(LocalRule(TruthTable::from_word(d, bipermutive_word(static_cast<std::uint32_t>(i), d))));
  }
  std::vector<bool> excluded(count, false);
  if (config.exclude_linear_rules) {
    for (std::uint64_t i = 0; i < count; ++i) excluded[i] = algebraic_degree(rules[i].table()) <= 1;
  }
  const PartitionRange range = config.partition.value_or(PartitionRange{0, count});
  for (auto i = range.start; i < range.end; ++i) {
    if (excluded[i]) continue;
    for (std::uint64_t j = 0; j < count; ++j) {
      if (excluded[j]) continue;
      if (config.use_pb_filter && !pairwise_balanced(rules[i], rules[j])) continue;
      visit(rules[i], rules[j]);
    }
  }
}

RuleTableStore precompute_rule_tables(std::span<const LocalRule> rules, std::size_t memory_budget) {
  RuleTableStore store;
  if (rules.empty()) return store;
  const int d = rules.front().diameter();
  if (d < 2 || d > 9) throw std::invalid_argument("rule tables: diameter must be in [2, 9]");
  for (const auto& r : rules) {
    if (r.diameter() != d) throw std::invalid_argument("rule tables: mixed diameters");
  }
  const int b = d - 1;
  const std::size_t entries = std::size_t{1} << (2 * b);
  if (rules.size() > memory_budget / entries) {
    throw ResourceError("rule tables: " + std::to_string(rules.size()) + " x " +
                        std::to_string(entries) + " bytes exceeds the budget of " +
                        std::to_string(memory_budget) + " bytes");
  }
  store.diameter_ = d;
  store.rule_count_ = rules.size();
  store.entries_ = entries;
  store.data_.resize(rules.size() * entries);
  for (std::size_t r = 0; r < rules.size(); ++r) {
    auto* out = store.data_.data() + r * entries;
    for (std::size_t x = 0; x < entries; ++x) {
      out[x] = static_cast<std::uint8_t>(apply_no_boundary_word(rules[r].table(), x, 2 * b));
    }
  }
  return store;
}

RuleTableStore precompute_bipermutive_tables(int diameter, std::size_t memory_budget) {
  const auto count = bipermutive_rule_count(diameter);
  const int b = diameter - 1;
  const std::size_t entries = std::size_t{1} << (2 * b);
  if (count > memory_budget / entries) {
    throw ResourceError("rule tables: " + std::to_string(count) + " x " + std::to_string(entries) +
                        " bytes exceeds the budget of " + std::to_string(memory_budget) + " bytes");
  }
  RuleTableStore store;
  store.diameter_ = diameter;
  store.rule_count_ = count;
  store.entries_ = entries;
  store.data_.resize(count * entries);
  const std::uint64_t window = (std::uint64_t{1} << diameter) - 1;
  for (std::uint64_t r = 0; r < count; ++r) {
    const std::uint64_t word = bipermutive_word(static_cast<std::uint32_t>(r), diameter);
    auto* out = store.data_.data() + r * entries;
    for (std::size_t x = 0; x < entries; ++x) {
      std::uint8_t y = 0;
      for (int s = 0; s < b; ++s) y |= static_cast<std::uint8_t>(((word >> ((x >> s) & window)) & 1u) << s);
      out[x] = y;
    }
  }
  return store;
}

bool orthogonal_tables(std::span<const std::uint8_t> f, std::span<const std::uint8_t> g, int b) {
  std::array<std::uint64_t, 1024> bitmap;
  const std::size_t words = std::max<std::size_t>(1, f.size() / 64);
  std::fill_n(bitmap.begin(), words, 0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    const std::uint32_t key = (std::uint32_t{f[x]} << b) | g[x];
    const std::uint64_t bit = std::uint64_t{1} << (key & 63);
    auto& w = bitmap[key >> 6];
    if (w & bit) return false;
    w |= bit;
  }
  return true;
}

PairAnalysis analyze_pair(const LocalRule& f, const LocalRule& g) {
  return analyze_sbox(superposition_sbox(f, g));
}

SearchReport run_search(const SearchConfig& config, const RunControl& control) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  const ScanContext ctx = make_context(config);

  const auto count = bipermutive_rule_count(config.diameter);
  const PartitionRange range = config.partition.value_or(PartitionRange{0, count});
  std::vector<std::uint32_t> rows;
  for (auto i = range.start; i < range.end; ++i) {
    if (!control.skip_left.contains(i)) rows.push_back(static_cast<std::uint32_t>(i));
  }

  const std::uint64_t candidates = candidate_rules(ctx);
  std::uint64_t pairs_total = 0;
  for (auto r : rows) {
    if (!(ctx.exclude_linear && ctx.linear[r])) pairs_total += candidates;
  }

  const unsigned workers = std::max(1u, config.worker_count);
  std::atomic<std::uint64_t> rows_done{0}, pairs_done{0}, oca_found{0};
  std::atomic<unsigned> finished{0};
  std::atomic<bool> stopped{false};
  std::mutex sink_mutex;
  std::vector<SearchReport> partial(workers, blank_report(config));
  std::vector<std::vector<std::uint64_t>> completed(workers);

  auto work = [&](unsigned w) {
    std::vector<std::uint32_t> scratch;
    for (std::size_t block = w; block * kRowsPerBlock < rows.size(); block += workers) {
      const std::size_t end = std::min(rows.size(), (block + 1) * kRowsPerBlock);
      for (std::size_t i = block * kRowsPerBlock; i < end; ++i) {
        if (control.cancel && control.cancel->load(std::memory_order_relaxed)) {
          stopped = true;
          finished.fetch_add(1);
          return;
        }
        SearchReport row = scan_row(ctx, rows[i], scratch);
        if (control.on_row_complete) {
          SearchReport tagged = row;
          tagged.diameter = config.diameter;
          tagged.use_pb_filter = config.use_pb_filter;
          tagged.exclude_linear_rules = config.exclude_linear_rules;
          tagged.ranges = {{rows[i], rows[i] + std::uint64_t{1}}};
          std::lock_guard lock(sink_mutex);
          control.on_row_complete(rows[i], tagged);
        }
        accumulate(partial[w], row);
        completed[w].push_back(rows[i]);
        rows_done.fetch_add(1, std::memory_order_relaxed);
        pairs_done.fetch_add(row.total_pairs_scanned, std::memory_order_relaxed);
        oca_found.fetch_add(row.oca_pairs, std::memory_order_relaxed);
      }
    }
    finished.fetch_add(1);
  };

  auto report_progress = [&] {
    if (control.progress) {
      control.progress(SearchProgress{rows_done.load(), rows.size(), pairs_done.load(), pairs_total,
                                      oca_found.load()});
    }
  };

  {
    std::vector<std::jthread> pool;
    if (control.progress) {
      // Every worker runs off-thread so this thread can poll progress.
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
      auto next = std::chrono::steady_clock::now();
      while (finished.load() < workers) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        if (std::chrono::steady_clock::now() >= next) {
          report_progress();
          next += std::chrono::milliseconds(control.progress_interval_ms);
        }
      }
      report_progress();
    } else {
      for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
      work(0);
    }
  }

  SearchReport report = blank_report(config);
  std::vector<std::uint64_t> all_rows;
  for (unsigned w = 0; w < workers; ++w) {
    accumulate(report, partial[w]);
    all_rows.insert(all_rows.end(), completed[w].begin(), completed[w].end());
  }
  std::sort(report.pairs.begin(), report.pairs.end());
  report.ranges = coalesce(std::move(all_rows));
  report.interrupted = stopped.load();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

SearchReport merge_reports(const SearchReport& a, const SearchReport& b) {
  if (a.diameter == 0 && a.ranges.empty()) return b;
  if (b.diameter == 0 && b.ranges.empty()) return a;
  if (a.diameter != b.diameter || a.use_pb_filter != b.use_pb_filter ||
      a.exclude_linear_rules != b.exclude_linear_rules) {
    throw std::invalid_argument("merge_reports: reports come from different configurations");
  }
  SearchReport out = a;
  out.ranges = merge_ranges(a.ranges, b.ranges);
  accumulate(out, b);
  std::sort(out.pairs.begin(), out.pairs.end());
  out.interrupted = a.interrupted || b.interrupted;
  out.wall_time_seconds = a.wall_time_seconds + b.wall_time_seconds;
  return out;
}

}  // namespace ocasbox
