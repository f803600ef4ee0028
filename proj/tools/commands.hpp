#pragma once

// Subcommands of the ocasbox tool, kept apart from argument parsing so the
// tests can drive them with string streams.

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "ocasbox/local_rule.hpp"
#include "ocasbox/search.hpp"

namespace ocasbox::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDomain = 2,
  kViolation = 3,
  kInterrupted = 4,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

/// A rule given as a Wolfram number or as a hex truth table.
struct RuleSpec {
  std::optional<std::string> wolfram;
  std::optional<std::string> tt;
};

/// Throws UsageError for a missing, doubled or malformed spec.
LocalRule parse_rule(const RuleSpec& spec, int diameter);

int cmd_rule_info(const RuleSpec& rule, int diameter, std::ostream& out, std::ostream& err);

int cmd_analyze(const RuleSpec& f, const RuleSpec& g, int diameter, std::optional<Format> format,
                std::ostream& out, std::ostream& err);

struct SearchOptions {
  SearchConfig config;
  /// Report path. With no format both <stem>.json and <stem>.csv are written.
  std::optional<std::filesystem::path> output;
  std::optional<Format> format;
  bool swap_reduced = false;
  bool confirm_long_run = false;
  bool progress = false;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::filesystem::path> resume;
};

int cmd_search(const SearchOptions& opts, const std::atomic<bool>* cancel, std::ostream& out,
               std::ostream& err);

struct ClassifyOptions {
  int diameter = 4;
  unsigned jobs = 1;
  bool confirm_long_run = false;
  bool progress = false;
  /// Classify a saved JSON report instead of searching.
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> output;  // CSV
};

int cmd_classify(const ClassifyOptions& opts, const std::atomic<bool>* cancel, std::ostream& out,
                 std::ostream& err);

struct VerifyOptions {
  int diameter = 4;
  unsigned jobs = 1;
  bool confirm_long_run = false;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace ocasbox::cli
