#pragma once

// Exhaustive enumeration of ordered pairs of bipermutive rules of one
// diameter, orthogonality testing, and aggregation of the resulting
// superposition S-boxes by nonlinearity, LCS dimension and LCS generator.
//
// Bipermutive rules of diameter d are indexed by their generating function:
// rule index i is the rule whose generating function has truth table bits i.
// There are 2^(2^(d-2)) of them.

#include <atomic>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ocasbox/errors.hpp"
#include "ocasbox/local_rule.hpp"
#include "ocasbox/poly_code.hpp"

namespace ocasbox {

inline constexpr int kMinSearchDiameter = 3;
inline constexpr int kMaxSearchDiameter = 6;

/// Half-open range [start, end) of left-rule indices.
struct PartitionRange {
  std::uint64_t start = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const { return end - start; }
  friend auto operator<=>(const PartitionRange&, const PartitionRange&) = default;
};

struct SearchConfig {
  int diameter = 4;
  bool use_pb_filter = true;
  bool exclude_linear_rules = true;
  unsigned worker_count = 1;
  std::optional<PartitionRange> partition;
  /// Keep the list of orthogonal pairs in the report.
  bool record_pairs = false;
  std::size_t table_memory_budget = std::size_t{256} << 20;
};

/// Number of bipermutive rules of diameter d, 2^(2^(d-2)).
std::uint64_t bipermutive_rule_count(int diameter);

/// Throws std::invalid_argument for an unusable configuration.
void validate(const SearchConfig& config);

/// An ordered pair of rule indices.
struct OcaPair {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend auto operator<=>(const OcaPair&, const OcaPair&) = default;
};

struct SearchReport {
  int diameter = 0;  // 0 marks the empty report, the identity of merge_reports
  bool use_pb_filter = true;
  bool exclude_linear_rules = true;
  std::vector<PartitionRange> ranges;  // completed left indices, coalesced

  std::uint64_t total_pairs_scanned = 0;  // candidate pairs after rule exclusion
  std::uint64_t pb_pairs = 0;             // of those, pairwise balanced
  std::uint64_t oca_pairs = 0;
  std::map<int, std::uint64_t> by_nonlinearity;
  std::map<int, std::uint64_t> by_dimension;  // nl = 0 only
  std::map<GeneratorClass, std::uint64_t> by_generator;
  std::uint64_t non_polynomial = 0;  // linear S-boxes whose LCS is no polynomial code
  std::uint64_t non_bijective = 0;   // OCA S-boxes that fail to be permutations
  std::vector<OcaPair> pairs;        // only with SearchConfig::record_pairs, sorted

  bool interrupted = false;
  double wall_time_seconds = 0.0;

  /// Ordered pairs counted once per {f, g}.
  std::uint64_t oca_pairs_swap_reduced() const { return oca_pairs / 2; }
};

/// The map x -> (f(x), g(x)) hits each of the four values 2^(d-2) times.
/// Throws std::invalid_argument on a diameter mismatch.
bool pairwise_balanced(const LocalRule& f, const LocalRule& g);

/// Packed-word form for d <= 6: four pair counts from one popcount and the
/// two weights.
inline bool pairwise_balanced_words(std::uint64_t f, std::uint64_t g, int d) {
  const int quarter = 1 << (d - 2);
  const int both = std::popcount(f & g);
  const int wf = std::popcount(f);
  const int wg = std::popcount(g);
  return both == quarter && wf - both == quarter && wg - both == quarter &&
         (1 << d) - wf - wg + both == quarter;
}

/// Calls visit(f, g) for every ordered pair selected by the config (partition,
/// rule exclusion, balancedness filter), left index major.
void enumerate_pairs(const SearchConfig& config,
                     const std::function<void(const LocalRule&, const LocalRule&)>& visit);

/// Flat per-rule CA output tables: for each rule, all 2^(2b) inputs of the CA
/// on 2b cells mapped to their b-bit outputs.
class RuleTableStore {
 public:
  int diameter() const { return diameter_; }
  std::size_t rule_count() const { return rule_count_; }
  std::size_t entries_per_rule() const { return entries_; }
  std::size_t bytes() const { return data_.size(); }

  std::span<const std::uint8_t> table(std::size_t rule) const {
    return {data_.data() + rule * entries_, entries_};
  }

 private:
  friend RuleTableStore precompute_rule_tables(std::span<const LocalRule>, std::size_t);
  friend RuleTableStore precompute_bipermutive_tables(int, std::size_t);

  int diameter_ = 0;
  std::size_t rule_count_ = 0;
  std::size_t entries_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Tables for the given rules, in order. Throws ResourceError beyond
/// `memory_budget` bytes and std::invalid_argument for mixed diameters or
/// d outside [2, 9].
RuleTableStore precompute_rule_tables(std::span<const LocalRule> rules,
                                      std::size_t memory_budget = std::size_t{256} << 20);

/// Tables for every bipermutive rule of diameter d, indexed by rule index.
RuleTableStore precompute_bipermutive_tables(int diameter,
                                             std::size_t memory_budget = std::size_t{256} << 20);

/// Orthogonality of the Latin squares behind two CA output tables, by
/// occupancy bitmap over the 2^(2b) superposed pairs with early exit.
bool orthogonal_tables(std::span<const std::uint8_t> f, std::span<const std::uint8_t> g, int b);

struct SearchProgress {
  std::uint64_t rows_done = 0;
  std::uint64_t rows_total = 0;
  std::uint64_t pairs_scanned = 0;
  std::uint64_t pairs_total = 0;
  std::uint64_t oca_found = 0;
};

struct RunControl {
  /// Invoked on the calling thread about every `progress_interval_ms`.
  std::function<void(const SearchProgress&)> progress;
  unsigned progress_interval_ms = 1000;
  /// Checked before each left row; a set flag ends the run early with
  /// SearchReport::interrupted set.
  const std::atomic<bool>* cancel = nullptr;
  /// Called once per completed left row with that row's counts. Calls are
  /// serialized but arrive from worker threads.
  std::function<void(std::uint64_t left, const SearchReport& row)> on_row_complete;
  /// Left indices already covered (e.g. loaded from a checkpoint).
  std::set<std::uint64_t> skip_left;
};

/// Scans every selected pair: orthogonality, then for orthogonal pairs the
/// S-box nonlinearity, LCS dimension and generator. Counts are independent
/// of worker_count.
SearchReport run_search(const SearchConfig& config, const RunControl& control = {});

/// Pointwise sum. Throws std::invalid_argument when diameters or filters
/// differ or the covered ranges overlap. wall_time_seconds adds up.
SearchReport merge_reports(const SearchReport& a, const SearchReport& b);

/// Index-level analysis of one orthogonal pair, as done by run_search.
struct PairAnalysis {
  bool bijective = false;
  int nonlinearity = 0;
  LcsResult lcs;
  std::optional<GeneratorExtraction> generator;  // set when lcs.dimension > 0
};
PairAnalysis analyze_pair(const LocalRule& f, const LocalRule& g);
PairAnalysis analyze_sbox(const SBox& s);

}  // namespace ocasbox
