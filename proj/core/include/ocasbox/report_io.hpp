#pragma once

// Persistent forms of search results: JSON reports, Table-1-shaped CSV,
// classification CSV, and newline-delimited JSON checkpoints.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <fstream>
#include <string>
#include <string_view>

#include "ocasbox/search.hpp"

namespace ocasbox {

/// Full report. Timing is omitted when include_timing is false so that
/// reports of identical runs compare byte for byte.
std::string report_to_json(const SearchReport& report, bool include_timing = true);

/// Throws LoadError on malformed input.
SearchReport report_from_json(std::string_view json);

/// Header `diameter,nl,nl_count,dim,dim_count`; one row per nonzero
/// nonlinearity (dim 0) and one per LCS dimension of the linear S-boxes.
std::string report_to_csv(const SearchReport& report);

struct Table1Counts {
  int diameter = 0;
  std::map<int, std::uint64_t> by_nonlinearity;
  std::map<int, std::uint64_t> by_dimension;
  friend bool operator==(const Table1Counts&, const Table1Counts&) = default;
};

/// Parses report_to_csv output. Throws LoadError on malformed input.
Table1Counts table1_from_csv(std::string_view csv);

/// Header `diameter,dimension,generator,count`, classes in GeneratorClass order.
std::string classification_to_csv(int diameter,
                                  const std::map<GeneratorClass, std::uint64_t>& classes);

/// Human-readable summary laid out like the nl / count / dim / count table.
std::string report_summary(const SearchReport& report, bool swap_reduced = false);

struct Checkpoint {
  int diameter = 0;
  bool use_pb_filter = true;
  bool exclude_linear_rules = true;
  std::map<std::uint64_t, SearchReport> rows;  // by left index

  /// Sum of all rows as one report.
  SearchReport merged() const;
};

/// First line of a checkpoint file.
std::string checkpoint_header_line(const SearchConfig& config);
/// One completed left row: {"left_index":i,"partial_counts":{...}}.
std::string checkpoint_record_line(std::uint64_t left, const SearchReport& row);

/// Throws LoadError for a missing header, malformed lines, mismatched
/// configuration lines or duplicate rows.
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Appends row records to a checkpoint file, writing the header when the
/// file is new. Thread-safe.
class CheckpointWriter {
 public:
  CheckpointWriter(const std::filesystem::path& path, const SearchConfig& config);

  void write(std::uint64_t left, const SearchReport& row);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace ocasbox
