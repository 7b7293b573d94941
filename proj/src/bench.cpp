// Copyright 2026 The mrcuts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "mrcuts/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <openssl/evp.h>

namespace mrcuts {

namespace {

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string one_decimal(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char ch = line[k];
    if (quoted) {
      if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quote");
  out.push_back(std::move(cur));
  return out;
}

template <typename T>
T parse_number(const std::string& field, const char* column) {
  T v{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError(std::string("csv: bad value '") + field + "' in column " + column);
  }
  return v;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

BenchMode parse_mode(std::string_view name) {
  if (name == "default") return BenchMode::kDefault;
  if (name == "cuts") return BenchMode::kCuts;
  if (name == "both") return BenchMode::kBoth;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::vector<std::string> mode_names(BenchMode mode) {
  switch (mode) {
    case BenchMode::kDefault:
      return {"default"};
    case BenchMode::kCuts:
      return {"cuts"};
    case BenchMode::kBoth:
      return {"default", "cuts"};
  }
  return {};
}

BenchRow make_row(std::string instance, std::string mode, const SolveReport& report) {
  BenchRow row;
  row.instance = std::move(instance);
  row.mode = std::move(mode);
  row.rgap = report.rgap;
  row.time_s = std::round(report.wall_seconds * 10.0) / 10.0;
  row.egap = report.egap;
  row.solved = report.status == SolveStatus::kOptimal ? 1 : 0;
  row.nodes = report.branch_nodes;
  row.cuts_linear = report.cuts[0];
  row.cuts_subset = report.cuts[1];
  row.cuts_mixed = report.cuts[2];
  return row;
}

BenchRow failed_row(std::string instance, std::string mode) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  BenchRow row;
  row.instance = std::move(instance);
  row.mode = std::move(mode);
  row.rgap = nan;
  row.time_s = nan;
  row.egap = nan;
  return row;
}

std::string format_row(const BenchRow& row) {
  std::ostringstream out;
  out << quote(row.instance) << ',' << quote(row.mode) << ',' << shortest(row.rgap) << ','
      << one_decimal(row.time_s) << ',' << shortest(row.egap) << ',' << row.solved << ','
      << row.nodes << ',' << row.cuts_linear << ',' << row.cuts_subset << ','
      << row.cuts_mixed;
  return out.str();
}

BenchRow parse_row(std::string_view line) {
  const auto f = split_fields(line);
  if (f.size() != 10) throw ParseError("csv: expected 10 fields");
  BenchRow row;
  row.instance = f[0];
  row.mode = f[1];
  row.rgap = parse_number<double>(f[2], "rgap");
  row.time_s = parse_number<double>(f[3], "time_s");
  row.egap = parse_number<double>(f[4], "egap");
  row.solved = parse_number<int>(f[5], "solved");
  row.nodes = parse_number<std::int64_t>(f[6], "nodes");
  row.cuts_linear = parse_number<int>(f[7], "cuts_linear");
  row.cuts_subset = parse_number<int>(f[8], "cuts_subset");
  row.cuts_mixed = parse_number<int>(f[9], "cuts_mixed");
  return row;
}

std::string write_csv(const std::vector<BenchRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += format_row(row);
    out += '\n';
  }
  return out;
}

std::vector<BenchRow> read_csv(std::string_view text) {
  std::vector<BenchRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    if (header) {
      if (line != kCsvHeader) throw ParseError("csv: unexpected header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    rows.push_back(parse_row(line));
  }
  if (header) throw ParseError("csv: missing header");
  return rows;
}

std::string group_of(std::string_view instance) {
  std::string name = std::filesystem::path(std::string(instance)).filename().string();
  if (name.size() > 5 && name.ends_with(".json")) name.resize(name.size() - 5);
  const auto cut = name.rfind('_');
  if (cut != std::string::npos && cut + 1 < name.size() &&
      std::all_of(name.begin() + static_cast<std::ptrdiff_t>(cut) + 1, name.end(),
                  [](unsigned char ch) { return std::isdigit(ch); })) {
    name.resize(cut);
  }
  return name;
}

std::string markdown_summary(const std::vector<BenchRow>& rows) {
  struct Acc {
    std::vector<double> rgap, time_s, egap, solved, nodes, lin, sub, mix;
    void add(const BenchRow& r) {
      rgap.push_back(r.rgap);
      time_s.push_back(r.time_s);
      egap.push_back(r.egap);
      solved.push_back(r.solved);
      nodes.push_back(static_cast<double>(r.nodes));
      lin.push_back(r.cuts_linear);
      sub.push_back(r.cuts_subset);
      mix.push_back(r.cuts_mixed);
    }
  };
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, Acc> groups;
  std::vector<std::string> modes;
  std::map<std::string, Acc> totals;
  for (const auto& r : rows) {
    auto key = std::make_pair(group_of(r.instance), r.mode);
    if (!groups.count(key)) keys.push_back(key);
    groups[key].add(r);
    if (!totals.count(r.mode)) modes.push_back(r.mode);
    totals[r.mode].add(r);
  }
  std::ostringstream out;
  out << "| group | mode | runs | rgap | time_s | egap | solved | nodes | cuts_linear | "
         "cuts_subset | cuts_mixed |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  auto line = [&](const std::string& group, const std::string& mode, const Acc& a) {
    out << "| " << group << " | " << mode << " | " << a.rgap.size() << " | "
        << shortest(mean(a.rgap)) << " | " << shortest(mean(a.time_s)) << " | "
        << shortest(mean(a.egap)) << " | " << shortest(mean(a.solved)) << " | "
        << shortest(mean(a.nodes)) << " | " << shortest(mean(a.lin)) << " | "
        << shortest(mean(a.sub)) << " | " << shortest(mean(a.mix)) << " |\n";
  };
  for (const auto& key : keys) line(key.first, key.second, groups[key]);
  for (const auto& mode : modes) line("avg", mode, totals[mode]);
  return out.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int k = 0; k < len; ++k) {
    out += kHex[digest[k] >> 4];
    out += kHex[digest[k] & 0xf];
  }
  return out;
}

BenchOutcome run_matrix(const std::vector<std::string>& files, BenchMode mode,
                        const SolverConfig& cfg, int jobs) {
  const auto modes = mode_names(mode);
  const std::size_t total = files.size() * modes.size();
  BenchOutcome outcome;
  outcome.rows.resize(total);
  std::vector<std::string> errors(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::string& file = files[k / modes.size()];
      const std::string& m = modes[k % modes.size()];
      const std::string name = std::filesystem::path(file).filename().string();
      try {
        const Instance inst = read_instance_file(file);
        SolverConfig run_cfg = cfg;
        run_cfg.enable_cuts = m == "cuts";
        const SolveReport rep = solve(inst, run_cfg);
        outcome.rows[k] = make_row(name, m, rep);
        if (rep.status == SolveStatus::kLpFailure) {
          errors[k] = name + " (" + m + "): " + to_string(rep.status);
        }
      } catch (const std::exception& e) {
        outcome.rows[k] = failed_row(name, m);
        errors[k] = name + " (" + m + "): " + e.what();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (auto& e : errors) {
    if (!e.empty()) outcome.errors.push_back(std::move(e));
  }
  return outcome;
}

}  // namespace mrcuts
