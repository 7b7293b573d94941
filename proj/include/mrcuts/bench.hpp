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


#ifndef MRCUTS_BENCH_HPP
#define MRCUTS_BENCH_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mrcuts/bb_solver.hpp"

namespace mrcuts {

inline constexpr std::string_view kCsvHeader =
    "instance,mode,rgap,time_s,egap,solved,nodes,cuts_linear,cuts_subset,cuts_mixed";

/// One solve of one instance. "default" runs without lifted cuts, "cuts"
/// with them.
struct BenchRow {
  std::string instance;
  std::string mode;
  double rgap = 0.0;
  double time_s = 0.0;  ///< rounded to 0.1 s
  double egap = 0.0;
  int solved = 0;
  std::int64_t nodes = 0;  ///< branch nodes, root excluded
  int cuts_linear = 0;
  int cuts_subset = 0;
  int cuts_mixed = 0;

  bool operator==(const BenchRow&) const = default;
};

enum class BenchMode { kDefault, kCuts, kBoth };

BenchMode parse_mode(std::string_view name);
std::vector<std::string> mode_names(BenchMode mode);

BenchRow make_row(std::string instance, std::string mode, const SolveReport& report);
/// Row for a run that did not produce a report; numeric results are NaN.
BenchRow failed_row(std::string instance, std::string mode);

std::string format_row(const BenchRow& row);
BenchRow parse_row(std::string_view line);

std::string write_csv(const std::vector<BenchRow>& rows);
/// Throws ParseError if the header differs from kCsvHeader.
std::vector<BenchRow> read_csv(std::string_view text);

/// Instance name with a trailing "_{seed}" and extension removed.
std::string group_of(std::string_view instance);

/// Markdown table of per-(group, mode) means, followed by an "avg" row per
/// mode over all rows.
std::string markdown_summary(const std::vector<BenchRow>& rows);

/// Lowercase hex SHA-256 of `bytes`.
std::string sha256_hex(std::string_view bytes);

struct BenchOutcome {
  std::vector<BenchRow> rows;   ///< input order, then mode order
  std::vector<std::string> errors;
};

/// Solves every (file, mode) pair with up to `jobs` threads.
BenchOutcome run_matrix(const std::vector<std::string>& files, BenchMode mode,
                        const SolverConfig& cfg, int jobs);

}  // namespace mrcuts

#endif  // MRCUTS_BENCH_HPP
