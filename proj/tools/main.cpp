// ocasbox: S-boxes from orthogonal cellular automata.
//
//   ocasbox rule-info --wolfram 150 -d 3
//   ocasbox analyze --f-wolfram 150 --g-wolfram 90 -d 3
//   ocasbox search -d 5 --jobs 4 --output d5
//   ocasbox classify -d 5
//   ocasbox verify -d 4

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ocasbox/errors.hpp"

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

ocasbox::PartitionRange parse_partition(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ocasbox::cli::UsageError("--partition expects START:END");
  try {
    return {std::stoull(text.substr(0, colon)), std::stoull(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ocasbox::cli::UsageError("--partition expects START:END, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ocasbox::cli;

  CLI::App app{"S-boxes from orthogonal cellular automata: search, analysis, LCS classification"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}};
  std::optional<Format> format;

  int diameter = 0;
  RuleSpec rule, f, g;
  auto* info = app.add_subcommand("rule-info", "Truth table, ANF, degree and nonlinearity of a rule");
  info->add_option("-d,--diameter", diameter, "Rule diameter")->required();
  info->add_option("--wolfram", rule.wolfram, "Wolfram number (decimal)");
  info->add_option("--tt", rule.tt, "Truth table in hex, bit i = output on input i");

  auto* analyze = app.add_subcommand("analyze", "Superposition S-box of two bipermutive rules");
  analyze->add_option("-d,--diameter", diameter, "Rule diameter")->required();
  analyze->add_option("--f-wolfram", f.wolfram, "First rule, Wolfram number");
  analyze->add_option("--f-tt", f.tt, "First rule, hex truth table");
  analyze->add_option("--g-wolfram", g.wolfram, "Second rule, Wolfram number");
  analyze->add_option("--g-tt", g.tt, "Second rule, hex truth table");
  analyze->add_option("--format", format, "json for machine-readable output")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  SearchOptions sopt;
  std::string partition;
  bool ordered = false;
  auto* search = app.add_subcommand("search", "Exhaustive OCA search over one diameter");
  search->add_option("-d,--diameter", sopt.config.diameter, "Diameter 3..6")->required();
  search->add_option("--jobs", sopt.config.worker_count, "Worker threads")->check(CLI::PositiveNumber);
  search->add_option("--output", sopt.output, "Report path (both .json and .csv without --format)");
  search->add_option("--format", sopt.format, "json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  search->add_flag("--no-pb-filter", [&](std::int64_t) { sopt.config.use_pb_filter = false; },
                   "Skip the pairwise-balanced prefilter");
  search->add_flag("--include-linear-rules",
                   [&](std::int64_t) { sopt.config.exclude_linear_rules = false; },
                   "Also pair rules of degree <= 1");
  auto* ord = search->add_flag("--ordered", ordered, "Count ordered pairs (default)");
  search->add_flag("--swap-reduced", sopt.swap_reduced, "Count {f, g} once")->excludes(ord);
  search->add_flag("--confirm-long-run", sopt.confirm_long_run, "Allow the full d=6 run");
  search->add_flag("--progress", sopt.progress, "Progress lines on stderr");
  search->add_option("--checkpoint", sopt.checkpoint, "Append completed rows to this file");
  search->add_option("--resume", sopt.resume, "Continue from a checkpoint file");
  search->add_option("--partition", partition, "Left rule index range START:END");
  search->add_flag("--record-pairs", sopt.config.record_pairs, "List the OCA pairs in the report");

  ClassifyOptions copt;
  auto* classify = app.add_subcommand("classify", "Group linear S-boxes by LCS generator polynomial");
  classify->add_option("-d,--diameter", copt.diameter, "Diameter 3..6");
  classify->add_option("--jobs", copt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  classify->add_option("--input", copt.input, "Classify a saved JSON search report");
  classify->add_option("--output", copt.output, "Classification CSV");
  classify->add_flag("--confirm-long-run", copt.confirm_long_run, "Allow the full d=6 run");
  classify->add_flag("--progress", copt.progress, "Progress lines on stderr");

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "Check LCS structure on every linear OCA S-box");
  verify->add_option("-d,--diameter", vopt.diameter, "Diameter 4..6")->required();
  verify->add_option("--jobs", vopt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--confirm-long-run", vopt.confirm_long_run, "Allow d=6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  std::signal(SIGINT, on_sigint);
  try {
    if (*info) return cmd_rule_info(rule, diameter, std::cout, std::cerr);
    if (*analyze) return cmd_analyze(f, g, diameter, format, std::cout, std::cerr);
    if (*search) {
      if (!partition.empty()) sopt.config.partition = parse_partition(partition);
      return cmd_search(sopt, &g_cancel, std::cout, std::cerr);
    }
    if (*classify) return cmd_classify(copt, &g_cancel, std::cout, std::cerr);
    if (*verify) return cmd_verify(vopt, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ocasbox::LoadError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const ocasbox::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}
