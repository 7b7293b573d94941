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

#ifndef MRCUTS_LP_HPP
#define MRCUTS_LP_HPP

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mrcuts {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpRow {
  std::vector<std::pair<int, double>> coefs;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

/// min c'x  s.t.  rows,  lower <= x <= upper.
struct LpModel {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int add_var(double lo, double hi, double cost);
  int add_row(LpRow row);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  std::int64_t iterations = 0;
};

struct LpOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  std::int64_t pivot_limit = 1'000'000;
  int refactor_interval = 100;
};

/// Bounded dual simplex with row slacks. Only the block of the basis formed by
/// basic structural columns and rows with a nonbasic slack is inverted
/// explicitly, so rows can be added cheaply when there are many more cut rows
/// than variables. The basis survives add_row and set_bounds, so a re-solve
/// after adding cuts or branching starts from the previous optimum.
///
/// Every variable needs a finite lower or upper bound. Variables whose reduced
/// cost points toward an infinite bound get a temporary artificial bound; the
/// LP is reported unbounded if one of those ends up active.
class DualSimplex {
 public:
  explicit DualSimplex(LpModel model, LpOptions options = {});

  int add_row(const LpRow& row);
  void set_bounds(int var, double lo, double hi);

  LpResult solve();

  const LpModel& model() const { return model_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

 private:
  enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper };

  int num_cols() const { return nv_ + num_rows(); }
  double lo(int j) const;
  double hi(int j) const;
  double cost(int j) const { return j < nv_ ? model_.objective[j] : 0.0; }
  double coef(int row, int var) const { return a_[row * nv_ + var]; }

  void refactor();
  void reset_to_slack_basis();
  void place_nonbasics();
  void compute_primals();
  void compute_duals();
  bool repair_dual_feasibility();
  double tight_residual() const;
  void pivot(int leaving, int entering, const Eigen::VectorXd& g);

  LpModel model_;  // rows are kept in the dense arrays below
  LpOptions opt_;
  int nv_ = 0;
  std::vector<double> a_;  // row-major, num_rows() x nv_
  std::vector<double> rhs_;
  std::vector<double> slack_lo_, slack_hi_;
  std::vector<VarStatus> status_;
  std::vector<double> value_;
  std::vector<double> reduced_;
  std::vector<double> art_lo_, art_hi_;  // NaN unless artificially bounded
  std::vector<int> basic_cols_;  // basic structural variables
  std::vector<int> tight_rows_;  // rows whose slack is nonbasic
  std::vector<int> col_pos_;     // position in basic_cols_, or -1
  std::vector<int> row_pos_;     // position in tight_rows_, or -1
  Eigen::MatrixXd inv_;          // inverse of A[tight_rows_, basic_cols_]
  int pivots_since_refactor_ = 0;
};

/// Solves `model` from the slack basis.
LpResult solve_lp(const LpModel& model, const LpOptions& options = {});

}  // namespace mrcuts

#endif  // MRCUTS_LP_HPP
