#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "ocasbox/cellular_automaton.hpp"
#include "ocasbox/poly_code.hpp"
#include "ocasbox/report_io.hpp"
#include "ocasbox/sbox.hpp"
#include "ocasbox/truth_table.hpp"

namespace ocasbox::cli {

namespace {

using Json = nlohmann::ordered_json;

// ANF of a generating function, renumbered so its first variable reads x2.
std::string generating_anf(const TruthTable& g) {
  static const std::regex var("x([0-9]+)");
  const std::string s = anf_to_string(mobius_transform(g));
  std::string out;
  auto it = std::sregex_iterator(s.begin(), s.end(), var);
  std::size_t pos = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += s.substr(pos, it->position() - pos);
    out += "x" + std::to_string(std::stoi((*it)[1]) + 1);
    pos = it->position() + it->length();
  }
  return out + s.substr(pos);
}

std::string hex_word(std::uint64_t v, int bits) {
  std::ostringstream os;
  os << std::hex << std::setw(std::max(1, (bits + 3) / 4)) << std::setfill('0') << v;
  return os.str();
}

LocalRule rule_from_index(std::uint32_t index, int d) {
  return bipermutive_from_generating(TruthTable::from_word(d - 2, index), d);
}

std::uint64_t candidate_pairs(const SearchConfig& c) {
  const std::uint64_t rules = bipermutive_rule_count(c.diameter);
  // Affine generating functions give the linear rules.
  const std::uint64_t linear = std::uint64_t{1} << (c.diameter - 1);
  const std::uint64_t right = c.exclude_linear_rules ? rules - linear : rules;
  std::uint64_t left = right;
  if (c.partition) {
    left = 0;
    for (auto i = c.partition->start; i < c.partition->end; ++i) {
      if (!c.exclude_linear_rules || algebraic_degree(TruthTable::from_word(c.diameter - 2, i)) > 1) {
        ++left;
      }
    }
  }
  return left * right;
}

bool covers_everything(const SearchReport& r) {
  return r.ranges.size() == 1 && r.ranges[0].start == 0 &&
         r.ranges[0].end == bipermutive_rule_count(r.diameter);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw LoadError("cannot write " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw LoadError("cannot open " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void check_long_run(int d, bool partial, bool confirmed) {
  if (d == kMaxSearchDiameter && !partial && !confirmed) {
    throw UsageError("the full d=6 run scans about 4.3e9 candidate pairs (about 8.4e8 after the "
                     "pairwise-balanced filter); pass --confirm-long-run to start it");
  }
}

// Runs a search with optional progress on `err`; shared by search, classify
// and verify.
SearchReport run_with_progress(const SearchConfig& config, bool progress,
                               const std::atomic<bool>* cancel, std::ostream& err,
                               RunControl control = {}) {
  control.cancel = cancel;
  if (progress) {
    control.progress_interval_ms = 2000;
    control.progress = [&err](const SearchProgress& p) {
      const double pct = p.pairs_total ? 100.0 * static_cast<double>(p.pairs_scanned) /
                                             static_cast<double>(p.pairs_total)
                                       : 100.0;
      err << p.pairs_scanned << '/' << p.pairs_total << " (" << std::fixed << std::setprecision(1)
          << pct << "%), oca found " << p.oca_found << '\n';
      err.flush();
    };
  }
  return run_search(config, control);
}

}  // namespace

LocalRule parse_rule(const RuleSpec& spec, int diameter) {
  if (diameter < 1 || diameter > kMaxVars) {
    throw UsageError("diameter must be in [1, " + std::to_string(kMaxVars) + "]");
  }
  if (spec.wolfram.has_value() == spec.tt.has_value()) {
    throw UsageError("give a rule as exactly one of --wolfram or --tt");
  }
  try {
    if (spec.wolfram) return LocalRule::from_wolfram(parse_wolfram(*spec.wolfram), diameter);
    return LocalRule(TruthTable::from_hex(diameter, *spec.tt));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

int cmd_rule_info(const RuleSpec& spec, int diameter, std::ostream& out, std::ostream&) {
  const LocalRule rule = parse_rule(spec, diameter);
  const auto& t = rule.table();
  const auto anf = mobius_transform(t);
  out << rule.label() << '\n';
  out << "truth table   0x" << t.to_hex() << '\n';
  out << "wolfram       " << rule.wolfram().str() << '\n';
  out << "anf           " << anf_to_string(anf) << '\n';
  out << "degree        " << algebraic_degree(anf) << '\n';
  out << "balanced      " << (is_balanced(t) ? "yes" : "no") << " (weight " << t.weight() << " of "
      << t.size() << ")\n";
  out << "nonlinearity  " << nonlinearity(t) << '\n';
  if (rule.is_bipermutive()) {
    out << "bipermutive   yes\n";
    out << "generating    g = " << generating_anf(*rule.generating()) << " (0x"
        << rule.generating()->to_hex() << ")\n";
  } else {
    out << "bipermutive   no\n";
  }
  return kOk;
}

int cmd_analyze(const RuleSpec& fs, const RuleSpec& gs, int diameter, std::optional<Format> format,
                std::ostream& out, std::ostream& err) {
  const LocalRule f = parse_rule(fs, diameter);
  const LocalRule g = parse_rule(gs, diameter);
  for (const auto* r : {&f, &g}) {
    if (!r->is_bipermutive()) {
      err << "error: " << r->label() << " is not bipermutive\n";
      return kDomain;
    }
  }
  if (2 * (diameter - 1) > kMaxVars) throw UsageError("analyze: diameter must be at most 9");
  if (format == Format::csv) throw UsageError("analyze: output formats are text and json");

  const bool orth = are_orthogonal(latin_square_from_rule(f), latin_square_from_rule(g));
  const SBox s = superposition_sbox(f, g);
  const int n = s.n();
  const auto lcs = linear_components_space(s);
  const int nl = lcs.dimension > 0 ? 0 : sbox_nonlinearity(s);
  std::optional<GeneratorExtraction> gen;
  if (lcs.dimension > 0) gen = classify_lcs(lcs);

  if (format == Format::json) {
    Json j;
    j["f"] = f.label();
    j["g"] = g.label();
    j["orthogonal"] = orth;
    j["sbox"] = Json::parse(sbox_to_json(s));
    j["bijective"] = is_bijective(s);
    j["nonlinearity"] = nl;
    j["degree"] = sbox_degree(s);
    j["lcs"] = Json::parse(lcs_to_json(lcs));
    if (gen) {
      if (const auto* code = std::get_if<PolynomialCode>(&*gen)) {
        j["generator"] = code->generator.to_string();
        j["generator_hex"] = code->generator.to_hex();
        j["cyclic"] = code->cyclic;
      } else {
        j["generator"] = nullptr;
        j["not_polynomial"] = std::get<NotPolynomialCode>(*gen).reason;
      }
      j["orientation"] = kCodeOrientation;
    }
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << "f             " << f.label() << '\n';
  out << "g             " << g.label() << '\n';
  out << "orthogonal    " << (orth ? "yes" : "no") << '\n';
  out << "sbox (n=" << n << ")\n" << sbox_to_text(s) << '\n';
  out << "bijective     " << (is_bijective(s) ? "yes" : "no") << '\n';
  out << "nonlinearity  " << nl << '\n';
  out << "degree        " << sbox_degree(s) << '\n';
  out << "lcs dimension " << lcs.dimension << '\n';
  for (auto row : lcs.basis) out << "  basis       " << hex_word(row, n) << '\n';
  if (gen) {
    if (const auto* code = std::get_if<PolynomialCode>(&*gen)) {
      out << "generator     " << code->generator.to_string() << " (hex " << code->generator.to_hex()
          << ")" << (code->cyclic ? ", cyclic" : ", not cyclic") << '\n';
    } else {
      out << "generator     none: " << std::get<NotPolynomialCode>(*gen).reason << '\n';
    }
  }
  return kOk;
}

int cmd_search(const SearchOptions& opts, const std::atomic<bool>* cancel, std::ostream& out,
               std::ostream& err) {
  SearchConfig config = opts.config;
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  check_long_run(config.diameter, config.partition.has_value(), opts.confirm_long_run);
  const PartitionRange range =
      config.partition.value_or(PartitionRange{0, bipermutive_rule_count(config.diameter)});

  RunControl control;
  SearchReport prior;
  std::optional<std::filesystem::path> ckpt_path = opts.checkpoint;
  if (opts.resume) {
    const Checkpoint cp = load_checkpoint(*opts.resume);
    if (cp.diameter != config.diameter || cp.use_pb_filter != config.use_pb_filter ||
        cp.exclude_linear_rules != config.exclude_linear_rules) {
      throw UsageError("checkpoint " + opts.resume->string() + " was written with other settings");
    }
    for (const auto& [left, row] : cp.rows) {
      if (left < range.start || left >= range.end) continue;
      control.skip_left.insert(left);
      prior = merge_reports(prior, row);
    }
    if (!ckpt_path) ckpt_path = opts.resume;
    err << "resuming: " << control.skip_left.size() << " rows already done\n";
  }

  std::optional<CheckpointWriter> writer;
  if (ckpt_path) {
    writer.emplace(*ckpt_path, config);
    control.on_row_complete = [&writer](std::uint64_t left, const SearchReport& row) {
      writer->write(left, row);
    };
  }

  if (config.diameter == kMaxSearchDiameter || opts.progress) {
    err << "d=" << config.diameter << ": " << candidate_pairs(config) << " candidate pairs"
        << (config.use_pb_filter ? ", pairwise-balanced filter on" : "") << '\n';
  }
  const bool progress = opts.progress || config.diameter == kMaxSearchDiameter;
  SearchReport report = merge_reports(prior, run_with_progress(config, progress, cancel, err, control));
  if (report.diameter == 0) {
    // Nothing scanned and nothing resumed: an empty range.
    report.diameter = config.diameter;
    report.use_pb_filter = config.use_pb_filter;
    report.exclude_linear_rules = config.exclude_linear_rules;
  }

  if (opts.output) {
    const auto& path = *opts.output;
    if (opts.format == Format::json) {
      write_file(path, report_to_json(report));
    } else if (opts.format == Format::csv) {
      write_file(path, report_to_csv(report));
    } else {
      auto stem = path;
      write_file(stem.replace_extension(".json"), report_to_json(report));
      write_file(stem.replace_extension(".csv"), report_to_csv(report));
    }
  }

  if (report.interrupted) {
    err << "interrupted; " << (ckpt_path ? "rows so far are in " + ckpt_path->string() +
                                               " (resume with --resume)"
                                         : std::string("no checkpoint was requested"))
        << '\n';
    return kInterrupted;
  }

  out << report_summary(report, opts.swap_reduced);
  int status = kOk;
  if (report.non_bijective > 0) {
    err << "finding: " << report.non_bijective << " orthogonal pairs gave non-bijective S-boxes\n";
    status = kViolation;
  }
  if (report.non_polynomial > 0) {
    err << "finding: " << report.non_polynomial
        << " linear components spaces are not polynomial codes\n";
    status = kViolation;
  }
  if (config.diameter == kMaxSearchDiameter && covers_everything(report)) {
    out << "oca pairs divisible by 8: " << (report.oca_pairs % 8 == 0 ? "yes" : "no") << '\n';
  }
  return status;
}

int cmd_classify(const ClassifyOptions& opts, const std::atomic<bool>* cancel, std::ostream& out,
                 std::ostream& err) {
  SearchReport report;
  if (opts.input) {
    report = report_from_json(read_file(*opts.input));
  } else {
    SearchConfig config;
    config.diameter = opts.diameter;
    config.worker_count = opts.jobs;
    try {
      validate(config);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    check_long_run(config.diameter, false, opts.confirm_long_run);
    report = run_with_progress(config, opts.progress || config.diameter == kMaxSearchDiameter,
                               cancel, err);
    if (report.interrupted) {
      err << "interrupted before the classification was complete\n";
      return kInterrupted;
    }
  }

  const int d = report.diameter;
  const int n = 2 * (d - 1);
  out << "# d=" << d << ", codes of length " << n << ", " << kCodeOrientation << '\n';
  out << std::setw(4) << "dim" << std::setw(9) << "count" << std::setw(8) << "cyclic"
      << "  generator\n";
  for (const auto& [key, count] : report.by_generator) {
    out << std::setw(4) << key.dimension << std::setw(9) << count << std::setw(8)
        << (is_cyclic_code(key.generator, n, key.dimension) ? "yes" : "no") << "  "
        << key.generator.to_string() << " (hex " << key.generator.to_hex() << ")\n";
  }
  out << "non-polynomial: " << report.non_polynomial << '\n';

  int status = report.non_polynomial > 0 ? kViolation : kOk;
  const auto reference = reference_classes(d);
  if (!reference.empty()) {
    if (!covers_everything(report)) {
      out << "reference comparison skipped: the report covers only part of the rule range\n";
    } else {
      const auto cmp = compare_with_reference(report.by_generator, reference);
      out << "class sizes vs published list: " << (cmp.cardinalities_match ? "match" : "differ")
          << '\n';
      for (const auto& note : cmp.notes) out << "  " << note << '\n';
      if (!cmp.cardinalities_match) status = kViolation;
    }
  }
  if (opts.output) write_file(*opts.output, classification_to_csv(d, report.by_generator));
  return status;
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  const int d = opts.diameter;
  if (d == 3) throw UsageError("verify: there are no nonlinear OCA pairs at d=3");
  if (d < 4 || d > kMaxSearchDiameter) throw UsageError("verify: diameter must be 4, 5 or 6");
  check_long_run(d, false, opts.confirm_long_run);

  SearchConfig config;
  config.diameter = d;
  config.worker_count = opts.jobs;
  config.record_pairs = true;
  const SearchReport report = run_with_progress(config, d == kMaxSearchDiameter, nullptr, err);

  const int b = d - 1;
  const int n = 2 * b;
  const std::uint32_t full = (1u << n) - 1;
  const std::uint32_t low = (1u << b) - 1;
  // The spectral scan is the reference route; at d=6 it is too slow for
  // half a million S-boxes, so the kernel route is used there.
  const LcsMethod method = d < kMaxSearchDiameter ? LcsMethod::walsh_scan : LcsMethod::anf_kernel;

  std::uint64_t linear = 0, padded = 0;
  std::uint64_t fail_support = 0, fail_shift = 0, fail_code = 0;
  int shown = 0;
  auto report_failure = [&](const OcaPair& p, const std::string& what) {
    if (shown++ < 10) {
      err << "counterexample: f=" << rule_from_index(p.left, d).label()
          << " g=" << rule_from_index(p.right, d).label() << ": " << what << '\n';
    }
  };

  for (const auto& p : report.pairs) {
    const SBox s = superposition_sbox(rule_from_index(p.left, d), rule_from_index(p.right, d));
    const LcsResult lcs = linear_components_space(s, method);
    if (lcs.dimension == 0) continue;
    ++linear;
    const std::set<std::uint32_t> members(lcs.members.begin(), lcs.members.end());

    bool support_ok = true, shift_ok = true;
    for (auto v : lcs.members) {
      if ((v >> b) == 0 || (v & low) == 0) {
        support_ok = false;
        report_failure(p, "component 0x" + hex_word(v, n) + " lies in one half");
      }
      // Coordinate i is bit n - i: coordinates b and n are bits b and 0.
      if (((v >> b) & 1u) == 0 && (v & 1u) == 0 && !members.contains(v >> 1)) {
        shift_ok = false;
        report_failure(p, "right shift of 0x" + hex_word(v, n) + " is not linear");
      }
      // Coordinates 1 and b + 1 are bits n - 1 and b - 1.
      if (((v >> (n - 1)) & 1u) == 0 && ((v >> (b - 1)) & 1u) == 0 &&
          !members.contains((v << 1) & full)) {
        shift_ok = false;
        report_failure(p, "left shift of 0x" + hex_word(v, n) + " is not linear");
      }
    }
    fail_support += !support_ok;
    fail_shift += !shift_ok;

    const auto gen = classify_lcs(lcs);
    if (const auto* code = std::get_if<PolynomialCode>(&gen)) {
      padded += code->padding() > 0;
    } else {
      ++fail_code;
      report_failure(p, std::get<NotPolynomialCode>(gen).reason);
    }
  }

  out << "d=" << d << ": " << report.oca_pairs << " OCA pairs, " << linear << " linear S-boxes\n";
  out << "support meets both halves   " << linear - fail_support << '/' << linear << '\n';
  out << "shift closure               " << linear - fail_shift << '/' << linear << '\n';
  out << "polynomial code             " << linear - fail_code << '/' << linear;
  if (padded) out << " (" << padded << " with zero-padded tail)";
  out << '\n';
  return fail_support + fail_shift + fail_code == 0 ? kOk : kViolation;
}

}  // namespace ocasbox::cli
