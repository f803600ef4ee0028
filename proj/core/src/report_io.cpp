#include "ocasbox/report_io.hpp"

#include <iomanip>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace ocasbox {

namespace {

using Json = nlohmann::ordered_json;

Json counts_to_json(const SearchReport& r) {
  Json j;
  j["total_pairs_scanned"] = r.total_pairs_scanned;
  j["pb_pairs"] = r.pb_pairs;
  j["oca_pairs"] = r.oca_pairs;
  j["oca_pairs_swap_reduced"] = r.oca_pairs_swap_reduced();
  Json nl = Json::array();
  for (auto it = r.by_nonlinearity.rbegin(); it != r.by_nonlinearity.rend(); ++it) {
    nl.push_back({{"nl", it->first}, {"count", it->second}});
  }
  j["by_nonlinearity"] = std::move(nl);
  Json dim = Json::array();
  for (const auto& [d, c] : r.by_dimension) dim.push_back({{"dimension", d}, {"count", c}});
  j["by_dimension"] = std::move(dim);
  const int n = 2 * (r.diameter - 1);
  Json gen = Json::array();
  for (const auto& [key, c] : r.by_generator) {
    gen.push_back({{"dimension", key.dimension},
                   {"generator", key.generator.to_string()},
                   {"generator_hex", key.generator.to_hex()},
                   {"cyclic", n > 0 && is_cyclic_code(key.generator, n, key.dimension)},
                   {"count", c}});
  }
  j["by_generator"] = std::move(gen);
  j["non_polynomial"] = r.non_polynomial;
  j["non_bijective"] = r.non_bijective;
  if (!r.pairs.empty()) {
    Json pairs = Json::array();
    for (const auto& p : r.pairs) pairs.push_back({p.left, p.right});
    j["pairs"] = std::move(pairs);
  }
  return j;
}

void counts_from_json(const Json& j, SearchReport& r) {
  r.total_pairs_scanned = j.at("total_pairs_scanned").get<std::uint64_t>();
  r.pb_pairs = j.at("pb_pairs").get<std::uint64_t>();
  r.oca_pairs = j.at("oca_pairs").get<std::uint64_t>();
  for (const auto& e : j.at("by_nonlinearity")) {
    r.by_nonlinearity[e.at("nl").get<int>()] = e.at("count").get<std::uint64_t>();
  }
  for (const auto& e : j.at("by_dimension")) {
    r.by_dimension[e.at("dimension").get<int>()] = e.at("count").get<std::uint64_t>();
  }
  for (const auto& e : j.at("by_generator")) {
    GeneratorClass key{e.at("dimension").get<int>(),
                       Gf2Poly::parse(e.at("generator").get<std::string>())};
    r.by_generator[key] = e.at("count").get<std::uint64_t>();
  }
  r.non_polynomial = j.at("non_polynomial").get<std::uint64_t>();
  r.non_bijective = j.at("non_bijective").get<std::uint64_t>();
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      r.pairs.push_back({p.at(0).get<std::uint32_t>(), p.at(1).get<std::uint32_t>()});
    }
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s) {
  if (s.empty()) throw LoadError("csv: empty numeric field");
  std::uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw LoadError("csv: bad number '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

std::string report_to_json(const SearchReport& report, bool include_timing) {
  Json j;
  j["diameter"] = report.diameter;
  j["use_pb_filter"] = report.use_pb_filter;
  j["exclude_linear_rules"] = report.exclude_linear_rules;
  j["orientation"] = kCodeOrientation;
  Json ranges = Json::array();
  for (const auto& r : report.ranges) ranges.push_back({r.start, r.end});
  j["ranges"] = std::move(ranges);
  j.update(counts_to_json(report));
  j["interrupted"] = report.interrupted;
  if (include_timing) j["wall_time_seconds"] = report.wall_time_seconds;
  return j.dump(2) + "\n";
}

SearchReport report_from_json(std::string_view json) {
  try {
    const Json j = Json::parse(json);
    SearchReport r;
    r.diameter = j.at("diameter").get<int>();
    r.use_pb_filter = j.at("use_pb_filter").get<bool>();
    r.exclude_linear_rules = j.at("exclude_linear_rules").get<bool>();
    for (const auto& e : j.at("ranges")) {
      r.ranges.push_back({e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>()});
    }
    counts_from_json(j, r);
    r.interrupted = j.value("interrupted", false);
    r.wall_time_seconds = j.value("wall_time_seconds", 0.0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("report json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw LoadError(std::string("report json: ") + e.what());
  }
}

std::string report_to_csv(const SearchReport& report) {
  std::ostringstream os;
  os << "diameter,nl,nl_count,dim,dim_count\n";
  for (auto it = report.by_nonlinearity.rbegin(); it != report.by_nonlinearity.rend(); ++it) {
    if (it->first == 0) continue;
    os << report.diameter << ',' << it->first << ',' << it->second << ",0," << it->second << '\n';
  }
  const auto linear = report.by_nonlinearity.find(0);
  const std::uint64_t linear_count = linear == report.by_nonlinearity.end() ? 0 : linear->second;
  for (const auto& [dim, count] : report.by_dimension) {
    os << report.diameter << ",0," << linear_count << ',' << dim << ',' << count << '\n';
  }
  return os.str();
}

Table1Counts table1_from_csv(std::string_view csv) {
  Table1Counts out;
  auto lines = split(csv, '\n');
  if (lines.empty() || lines.front() != "diameter,nl,nl_count,dim,dim_count") {
    throw LoadError("csv: missing header row");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) throw LoadError("csv: expected 5 fields on line " + std::to_string(i + 1));
    const auto d = static_cast<int>(parse_u64(f[0]));
    if (out.diameter != 0 && out.diameter != d) throw LoadError("csv: mixed diameters");
    out.diameter = d;
    const auto nl = static_cast<int>(parse_u64(f[1]));
    out.by_nonlinearity[nl] = parse_u64(f[2]);
    if (nl == 0) out.by_dimension[static_cast<int>(parse_u64(f[3]))] = parse_u64(f[4]);
  }
  return out;
}

std::string classification_to_csv(int diameter,
                                  const std::map<GeneratorClass, std::uint64_t>& classes) {
  std::ostringstream os;
  os << "diameter,dimension,generator,count\n";
  for (const auto& [key, count] : classes) {
    os << diameter << ',' << key.dimension << ',' << key.generator.to_string() << ',' << count << '\n';
  }
  return os.str();
}

std::string report_summary(const SearchReport& r, bool swap_reduced) {
  const auto scale = [&](std::uint64_t c) { return swap_reduced ? c / 2 : c; };
  std::ostringstream os;
  os << "d=" << r.diameter << ": " << scale(r.oca_pairs) << " OCA pairs";
  for (auto it = r.by_nonlinearity.rbegin(); it != r.by_nonlinearity.rend(); ++it) {
    os << ", nl=" << it->first << ": " << scale(it->second);
  }
  for (const auto& [dim, count] : r.by_dimension) os << ", dim " << dim << ": " << scale(count);
  os << (swap_reduced ? " (swap-reduced)" : " (ordered pairs)") << '\n';

  os << '\n' << std::setw(4) << "d" << std::setw(8) << "nl(H)" << std::setw(10) << "#nl(H)"
     << std::setw(6) << "dim" << std::setw(10) << "#dim" << '\n';
  for (auto it = r.by_nonlinearity.rbegin(); it != r.by_nonlinearity.rend(); ++it) {
    if (it->first == 0) {
      for (const auto& [dim, count] : r.by_dimension) {
        os << std::setw(4) << r.diameter << std::setw(8) << 0 << std::setw(10) << scale(it->second)
           << std::setw(6) << dim << std::setw(10) << scale(count) << '\n';
      }
    } else {
      os << std::setw(4) << r.diameter << std::setw(8) << it->first << std::setw(10)
         << scale(it->second) << std::setw(6) << 0 << std::setw(10) << scale(it->second) << '\n';
    }
  }
  os << '\n'
     << "pairs scanned " << r.total_pairs_scanned << ", pairwise balanced " << r.pb_pairs
     << ", non-polynomial LCS " << r.non_polynomial << ", non-bijective " << r.non_bijective << '\n';
  return os.str();
}

SearchReport Checkpoint::merged() const {
  SearchReport out;
  for (const auto& [left, row] : rows) out = merge_reports(out, row);
  return out;
}

std::string checkpoint_header_line(const SearchConfig& config) {
  Json j;
  j["format"] = "ocasbox-checkpoint";
  j["version"] = 1;
  j["diameter"] = config.diameter;
  j["use_pb_filter"] = config.use_pb_filter;
  j["exclude_linear_rules"] = config.exclude_linear_rules;
  return j.dump();
}

std::string checkpoint_record_line(std::uint64_t left, const SearchReport& row) {
  Json j;
  j["left_index"] = left;
  j["partial_counts"] = counts_to_json(row);
  return j.dump();
}

Checkpoint load_checkpoint(std::istream& in) {
  Checkpoint cp;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw LoadError("checkpoint line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      if (!have_header) {
        if (j.value("format", "") != "ocasbox-checkpoint" || j.value("version", 0) != 1) {
          throw LoadError("checkpoint: missing or unknown header");
        }
        cp.diameter = j.at("diameter").get<int>();
        cp.use_pb_filter = j.at("use_pb_filter").get<bool>();
        cp.exclude_linear_rules = j.at("exclude_linear_rules").get<bool>();
        bipermutive_rule_count(cp.diameter);
        have_header = true;
        continue;
      }
      const auto left = j.at("left_index").get<std::uint64_t>();
      if (left >= bipermutive_rule_count(cp.diameter)) {
        throw LoadError("checkpoint line " + std::to_string(line_no) + ": left index out of range");
      }
      SearchReport row;
      row.diameter = cp.diameter;
      row.use_pb_filter = cp.use_pb_filter;
      row.exclude_linear_rules = cp.exclude_linear_rules;
      row.ranges = {{left, left + 1}};
      counts_from_json(j.at("partial_counts"), row);
      if (!cp.rows.emplace(left, std::move(row)).second) {
        throw LoadError("checkpoint line " + std::to_string(line_no) + ": duplicate left index " +
                        std::to_string(left));
      }
    } catch (const nlohmann::json::exception& e) {
      throw LoadError("checkpoint line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw LoadError("checkpoint line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw LoadError("checkpoint: empty file");
  return cp;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("checkpoint: cannot open " + path.string());
  return load_checkpoint(in);
}

CheckpointWriter::CheckpointWriter(const std::filesystem::path& path, const SearchConfig& config)
    : path_(path) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  out_.open(path, std::ios::app);
  if (!out_) throw LoadError("checkpoint: cannot write " + path.string());
  if (fresh) out_ << checkpoint_header_line(config) << '\n' << std::flush;
}

void CheckpointWriter::write(std::uint64_t left, const SearchReport& row) {
  std::lock_guard lock(mutex_);
  out_ << checkpoint_record_line(left, row) << '\n' << std::flush;
}

}  // namespace ocasbox
