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


#ifndef MRCUTS_BB_SOLVER_HPP
#define MRCUTS_BB_SOLVER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mrcuts/instance.hpp"

namespace mrcuts {

struct SolverConfig {
  double time_limit_s = 60.0;
  std::int64_t node_limit = 10'000'000;
  double gap_tol = 1e-6;  ///< relative to max(1, |incumbent|)
  int max_cut_depth = 10;
  int budget_primary = 5000;
  int budget_secondary = 200;
  bool enable_cuts = true;
  std::int64_t lp_pivot_limit = 1'000'000;
};

/// Reads a flat JSON object whose keys are the SolverConfig field names.
/// Missing keys keep their defaults; unknown keys raise ParseError.
SolverConfig parse_solver_config(std::string_view text);

enum class SolveStatus { kOptimal, kTimeLimit, kNodeLimit, kLpFailure };

const char* to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kOptimal;
  double incumbent = 0.0;
  double bound = 0.0;       ///< best bound at termination
  double root_bound = 0.0;  ///< bound after root cut rounds
  double rgap = 0.0;        ///< percent, root bound vs final incumbent
  double egap = 0.0;        ///< percent, final bound vs final incumbent
  std::int64_t nodes_explored = 0;  ///< includes the root
  std::int64_t branch_nodes = 0;    ///< nodes other than the root
  double wall_seconds = 0.0;
  std::array<int, 3> cuts = {0, 0, 0};  ///< indexed by CutClass
  Point solution;
};

/// Percentage gap 100 * (upper - lower) / |upper|, zero when both vanish.
double percent_gap(double upper, double lower);

/// Outer-approximation branch and bound with optional lifted cuts.
SolveReport solve(const Instance& inst, const SolverConfig& cfg = {});

struct RootReport {
  double bound = 0.0;
  double rgap = 0.0;
  std::array<int, 3> cuts = {0, 0, 0};
};

/// Processes the root node only. The gap is measured against `reference`,
/// or against the incumbent of a full solve when no reference is given.
RootReport root_relaxation(const Instance& inst, const SolverConfig& cfg = {},
                           std::optional<double> reference = std::nullopt);

/// Objective value of a point; no feasibility check.
double objective_value(const Instance& inst, const Point& p);

/// Largest violation of bounds, linking, cardinality and cone constraints,
/// with x required to be binary.
double max_infeasibility(const Instance& inst, const Point& p);

}  // namespace mrcuts

#endif  // MRCUTS_BB_SOLVER_HPP
