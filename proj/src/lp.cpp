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

#include "mrcuts/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrcuts {

namespace {

constexpr double kArtificialBound = 1e9;
constexpr double kDegenerateStep = 1e-12;

}  // namespace

int LpModel::add_var(double lo, double hi, double cost) {
  objective.push_back(cost);
  lower.push_back(lo);
  upper.push_back(hi);
  return num_vars() - 1;
}

int LpModel::add_row(LpRow row) {
  rows.push_back(std::move(row));
  return static_cast<int>(rows.size()) - 1;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

DualSimplex::DualSimplex(LpModel model, LpOptions options)
    : model_(std::move(model)), opt_(options) {
  nv_ = model_.num_vars();
  if (static_cast<int>(model_.lower.size()) != nv_ ||
      static_cast<int>(model_.upper.size()) != nv_) {
    throw std::invalid_argument("bounds and objective differ in length");
  }
  status_.resize(nv_);
  value_.assign(nv_, 0.0);
  reduced_.assign(nv_, 0.0);
  art_lo_.assign(nv_, std::nan(""));
  art_hi_.assign(nv_, std::nan(""));
  col_pos_.assign(nv_, -1);
  for (int j = 0; j < nv_; ++j) {
    if (model_.lower[j] > model_.upper[j]) {
      throw std::invalid_argument("variable has lower bound above upper bound");
    }
    if (std::isfinite(model_.lower[j])) {
      status_[j] = VarStatus::kAtLower;
    } else if (std::isfinite(model_.upper[j])) {
      status_[j] = VarStatus::kAtUpper;
    } else {
      throw std::invalid_argument("free variables are not supported");
    }
  }
  auto rows = std::move(model_.rows);
  model_.rows.clear();
  for (const auto& row : rows) add_row(row);
}

double DualSimplex::lo(int j) const {
  if (!std::isnan(art_lo_[j])) return art_lo_[j];
  return j < nv_ ? model_.lower[j] : slack_lo_[j - nv_];
}

double DualSimplex::hi(int j) const {
  if (!std::isnan(art_hi_[j])) return art_hi_[j];
  return j < nv_ ? model_.upper[j] : slack_hi_[j - nv_];
}

int DualSimplex::add_row(const LpRow& row) {
  const int m = num_rows();
  a_.resize(a_.size() + nv_, 0.0);
  double* dense = a_.data() + static_cast<std::size_t>(m) * nv_;
  for (const auto& [j, v] : row.coefs) {
    if (j < 0 || j >= nv_) {
      a_.resize(a_.size() - nv_);
      throw std::invalid_argument("row index out of range");
    }
    dense[j] += v;
  }
  switch (row.sense) {
    case RowSense::kLessEqual:
      slack_lo_.push_back(0.0);
      slack_hi_.push_back(kInf);
      break;
    case RowSense::kGreaterEqual:
      slack_lo_.push_back(-kInf);
      slack_hi_.push_back(0.0);
      break;
    case RowSense::kEqual:
      slack_lo_.push_back(0.0);
      slack_hi_.push_back(0.0);
      break;
  }
  rhs_.push_back(row.rhs);
  model_.rows.push_back(row);
  status_.push_back(VarStatus::kBasic);
  value_.push_back(0.0);
  reduced_.push_back(0.0);
  art_lo_.push_back(std::nan(""));
  art_hi_.push_back(std::nan(""));
  row_pos_.push_back(-1);
  return m;
}

void DualSimplex::set_bounds(int var, double lo_v, double hi_v) {
  if (var < 0 || var >= nv_) throw std::invalid_argument("variable out of range");
  if (lo_v > hi_v) throw std::invalid_argument("lower bound above upper bound");
  if (!std::isfinite(lo_v) && !std::isfinite(hi_v)) {
    throw std::invalid_argument("free variables are not supported");
  }
  model_.lower[var] = lo_v;
  model_.upper[var] = hi_v;
}

void DualSimplex::reset_to_slack_basis() {
  for (int j : basic_cols_) {
    status_[j] = std::isfinite(lo(j)) ? VarStatus::kAtLower : VarStatus::kAtUpper;
    col_pos_[j] = -1;
  }
  for (int i : tight_rows_) {
    status_[nv_ + i] = VarStatus::kBasic;
    row_pos_[i] = -1;
  }
  basic_cols_.clear();
  tight_rows_.clear();
  inv_.resize(0, 0);
}

void DualSimplex::refactor() {
  const int k = static_cast<int>(basic_cols_.size());
  pivots_since_refactor_ = 0;
  if (k == 0) {
    inv_.resize(0, 0);
    return;
  }
  Eigen::MatrixXd block(k, k);
  for (int q = 0; q < k; ++q) {
    for (int p = 0; p < k; ++p) block(q, p) = coef(tight_rows_[q], basic_cols_[p]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
  if (!lu.isInvertible()) {
    reset_to_slack_basis();
    return;
  }
  inv_ = lu.inverse();
}

void DualSimplex::place_nonbasics() {
  for (int j = 0; j < num_cols(); ++j) {
    if (status_[j] == VarStatus::kBasic) continue;
    if (status_[j] == VarStatus::kAtLower && !std::isfinite(lo(j))) {
      status_[j] = VarStatus::kAtUpper;
    } else if (status_[j] == VarStatus::kAtUpper && !std::isfinite(hi(j))) {
      status_[j] = VarStatus::kAtLower;
    }
    value_[j] = status_[j] == VarStatus::kAtLower ? lo(j) : hi(j);
  }
}

void DualSimplex::compute_primals() {
  const int k = static_cast<int>(basic_cols_.size());
  Eigen::VectorXd r(k);
  for (int q = 0; q < k; ++q) {
    const int i = tight_rows_[q];
    double v = rhs_[i] - value_[nv_ + i];
    for (int j = 0; j < nv_; ++j) {
      if (status_[j] != VarStatus::kBasic) v -= coef(i, j) * value_[j];
    }
    r[q] = v;
  }
  const Eigen::VectorXd xb = inv_ * r;
  for (int p = 0; p < k; ++p) value_[basic_cols_[p]] = xb[p];
  for (int i = 0; i < num_rows(); ++i) {
    if (row_pos_[i] >= 0) continue;
    const double* row = a_.data() + static_cast<std::size_t>(i) * nv_;
    double act = 0.0;
    for (int j = 0; j < nv_; ++j) act += row[j] * value_[j];
    value_[nv_ + i] = rhs_[i] - act;
  }
}

void DualSimplex::compute_duals() {
  const int k = static_cast<int>(basic_cols_.size());
  Eigen::VectorXd cb(k);
  for (int p = 0; p < k; ++p) cb[p] = cost(basic_cols_[p]);
  const Eigen::VectorXd y = inv_.transpose() * cb;
  for (int j = 0; j < nv_; ++j) {
    if (status_[j] == VarStatus::kBasic) {
      reduced_[j] = 0.0;
      continue;
    }
    double d = model_.objective[j];
    for (int q = 0; q < k; ++q) d -= y[q] * coef(tight_rows_[q], j);
    reduced_[j] = d;
  }
  for (int i = 0; i < num_rows(); ++i) {
    reduced_[nv_ + i] = row_pos_[i] >= 0 ? -y[row_pos_[i]] : 0.0;
  }
}

bool DualSimplex::repair_dual_feasibility() {
  bool changed = false;
  for (int j = 0; j < num_cols(); ++j) {
    if (status_[j] == VarStatus::kBasic || lo(j) == hi(j)) continue;
    if (status_[j] == VarStatus::kAtLower && reduced_[j] < -opt_.dual_tol) {
      if (!std::isfinite(hi(j))) {
        art_hi_[j] = std::max(kArtificialBound, 10.0 * std::abs(lo(j)));
      }
      status_[j] = VarStatus::kAtUpper;
      value_[j] = hi(j);
      changed = true;
    } else if (status_[j] == VarStatus::kAtUpper && reduced_[j] > opt_.dual_tol) {
      if (!std::isfinite(lo(j))) {
        art_lo_[j] = -std::max(kArtificialBound, 10.0 * std::abs(hi(j)));
      }
      status_[j] = VarStatus::kAtLower;
      value_[j] = lo(j);
      changed = true;
    }
  }
  return changed;
}

double DualSimplex::tight_residual() const {
  double worst = 0.0;
  for (int i : tight_rows_) {
    double v = value_[nv_ + i] - rhs_[i];
    double scale = 1.0 + std::abs(rhs_[i]);
    for (int j = 0; j < nv_; ++j) {
      const double t = coef(i, j) * value_[j];
      v += t;
      scale = std::max(scale, std::abs(t));
    }
    worst = std::max(worst, std::abs(v) / scale);
  }
  return worst;
}

// `g` is the row of the inverse block used to price the leaving variable:
// row p of inv_ for a structural, a_{i,B} inv_ for the slack of row i.
void DualSimplex::pivot(int leaving, int entering, const Eigen::VectorXd& g) {
  const int k = static_cast<int>(basic_cols_.size());
  const bool leave_col = leaving < nv_;
  const bool enter_col = entering < nv_;

  if (leave_col && enter_col) {
    // Column replacement.
    const int p = col_pos_[leaving];
    Eigen::VectorXd u(k);
    for (int q = 0; q < k; ++q) u[q] = coef(tight_rows_[q], entering);
    const Eigen::VectorXd v = inv_ * u;
    const Eigen::RowVectorXd row_p = inv_.row(p) / v[p];
    Eigen::VectorXd w = v;
    w[p] = 0.0;
    inv_.noalias() -= w * row_p;
    inv_.row(p) = row_p;
    basic_cols_[p] = entering;
    col_pos_[entering] = p;
    col_pos_[leaving] = -1;
  } else if (leave_col) {
    // Shrink: drop the leaving column and the entering slack's row.
    const int p = col_pos_[leaving];
    const int t = row_pos_[entering - nv_];
    const double piv = inv_(p, t);
    Eigen::MatrixXd next = inv_ - inv_.col(t) * inv_.row(p) / piv;
    std::vector<int> keep_r, keep_c;
    for (int q = 0; q < k; ++q) {
      if (q != p) keep_r.push_back(q);
      if (q != t) keep_c.push_back(q);
    }
    inv_ = next(keep_r, keep_c);
    basic_cols_.erase(basic_cols_.begin() + p);
    tight_rows_.erase(tight_rows_.begin() + t);
    col_pos_[leaving] = -1;
    row_pos_[entering - nv_] = -1;
    for (int q = 0; q < k - 1; ++q) {
      col_pos_[basic_cols_[q]] = q;
      row_pos_[tight_rows_[q]] = q;
    }
  } else if (enter_col) {
    // Grow: add the entering column and the leaving slack's row.
    const int i = leaving - nv_;
    Eigen::VectorXd u(k);
    for (int q = 0; q < k; ++q) u[q] = coef(tight_rows_[q], entering);
    const Eigen::VectorXd v = inv_ * u;
    const double schur = coef(i, entering) - g.dot(u);
    Eigen::MatrixXd next(k + 1, k + 1);
    next.topLeftCorner(k, k) = inv_ + v * g.transpose() / schur;
    next.topRightCorner(k, 1) = -v / schur;
    next.bottomLeftCorner(1, k) = -g.transpose() / schur;
    next(k, k) = 1.0 / schur;
    inv_ = std::move(next);
    basic_cols_.push_back(entering);
    tight_rows_.push_back(i);
    col_pos_[entering] = k;
    row_pos_[i] = k;
  } else {
    // Row replacement.
    const int i = leaving - nv_;
    const int t = row_pos_[entering - nv_];
    Eigen::VectorXd h = g;
    h[t] -= 1.0;
    const Eigen::VectorXd col_t = inv_.col(t) / g[t];
    inv_.noalias() -= col_t * h.transpose();
    tight_rows_[t] = i;
    row_pos_[i] = t;
    row_pos_[entering - nv_] = -1;
  }

  status_[entering] = VarStatus::kBasic;
  ++pivots_since_refactor_;
}

LpResult DualSimplex::solve() {
  LpResult res;
  const int ncols = num_cols();

  auto restart = [&](bool factor) {
    if (factor) refactor();
    place_nonbasics();
    compute_primals();
    compute_duals();
    if (repair_dual_feasibility()) compute_primals();
  };
  restart(pivots_since_refactor_ > 0);

  std::vector<double> alpha(ncols, 0.0);
  std::int64_t degenerate_run = 0;
  std::int64_t iterations = 0;
  res.status = LpStatus::kIterationLimit;
  while (iterations < opt_.pivot_limit) {
    if (pivots_since_refactor_ >= opt_.refactor_interval) restart(true);
    const int k = static_cast<int>(basic_cols_.size());
    const bool bland = degenerate_run > 10LL * std::max(num_rows(), 1);

    // Leaving variable: largest bound violation among basics (smallest
    // index in Bland mode).
    int leaving = -1;
    double worst = opt_.primal_tol;
    auto consider = [&](int j) {
      const double infeas = std::max(lo(j) - value_[j], value_[j] - hi(j));
      if (infeas <= opt_.primal_tol) return;
      if (bland) {
        if (leaving < 0 || j < leaving) leaving = j;
      } else if (infeas > worst) {
        worst = infeas;
        leaving = j;
      }
    };
    for (int j : basic_cols_) consider(j);
    for (int i = 0; i < num_rows(); ++i) {
      if (row_pos_[i] < 0) consider(nv_ + i);
    }

    if (leaving < 0) {
      if (pivots_since_refactor_ > 0 && tight_residual() > 1e-9) {
        restart(true);
        ++iterations;
        continue;
      }
      bool unbounded = false;
      for (int j = 0; j < ncols; ++j) {
        if (std::isnan(art_lo_[j]) && std::isnan(art_hi_[j])) continue;
        if (std::abs(value_[j]) > 0.5 * kArtificialBound) unbounded = true;
        art_lo_[j] = std::nan("");
        art_hi_[j] = std::nan("");
      }
      res.status = unbounded ? LpStatus::kUnbounded : LpStatus::kOptimal;
      break;
    }

    // Row of the tableau for the leaving variable.
    Eigen::VectorXd g(k);
    std::fill(alpha.begin(), alpha.end(), 0.0);
    if (leaving < nv_) {
      g = inv_.row(col_pos_[leaving]).transpose();
      for (int j = 0; j < nv_; ++j) {
        if (status_[j] == VarStatus::kBasic) continue;
        double v = 0.0;
        for (int q = 0; q < k; ++q) v += g[q] * coef(tight_rows_[q], j);
        alpha[j] = v;
      }
      for (int q = 0; q < k; ++q) alpha[nv_ + tight_rows_[q]] = g[q];
    } else {
      const int i = leaving - nv_;
      Eigen::VectorXd w(k);
      for (int p = 0; p < k; ++p) w[p] = coef(i, basic_cols_[p]);
      g = inv_.transpose() * w;
      for (int j = 0; j < nv_; ++j) {
        if (status_[j] == VarStatus::kBasic) continue;
        double v = coef(i, j);
        for (int q = 0; q < k; ++q) v -= g[q] * coef(tight_rows_[q], j);
        alpha[j] = v;
      }
      for (int q = 0; q < k; ++q) alpha[nv_ + tight_rows_[q]] = -g[q];
    }

    const bool to_lower = value_[leaving] < lo(leaving);
    const double target = to_lower ? lo(leaving) : hi(leaving);
    const double dir = to_lower ? 1.0 : -1.0;

    auto eligible = [&](int j, double& dj) {
      if (status_[j] == VarStatus::kBasic || lo(j) == hi(j)) return false;
      const double a = alpha[j];
      if (std::abs(a) < opt_.pivot_tol) return false;
      const bool at_lower = status_[j] == VarStatus::kAtLower;
      if (at_lower ? dir * a >= 0.0 : dir * a <= 0.0) return false;
      dj = at_lower ? std::max(reduced_[j], 0.0) : std::max(-reduced_[j], 0.0);
      return true;
    };

    // Harris two-pass ratio test.
    double theta_max = kInf;
    double dj = 0.0;
    for (int j = 0; j < ncols; ++j) {
      if (eligible(j, dj)) {
        theta_max = std::min(theta_max, (dj + opt_.dual_tol) / std::abs(alpha[j]));
      }
    }
    int entering = -1;
    double best_ratio = kInf;
    double best_pivot = 0.0;
    for (int j = 0; j < ncols; ++j) {
      if (!eligible(j, dj)) continue;
      const double ratio = dj / std::abs(alpha[j]);
      if (bland) {
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          entering = j;
        }
      } else if (ratio <= theta_max && std::abs(alpha[j]) > best_pivot) {
        best_pivot = std::abs(alpha[j]);
        entering = j;
      }
    }
    if (entering < 0) {
      res.status = LpStatus::kInfeasible;
      break;
    }

    const double theta_d = reduced_[entering] / alpha[entering];
    degenerate_run = std::abs(theta_d) < kDegenerateStep ? degenerate_run + 1 : 0;

    pivot(leaving, entering, g);
    status_[leaving] = target == lo(leaving) ? VarStatus::kAtLower : VarStatus::kAtUpper;
    value_[leaving] = target;
    compute_primals();
    compute_duals();
    ++iterations;
  }

  res.iterations = iterations;
  res.x.assign(value_.begin(), value_.begin() + nv_);
  res.objective = 0.0;
  for (int j = 0; j < nv_; ++j) res.objective += model_.objective[j] * res.x[j];
  return res;
}

LpResult solve_lp(const LpModel& model, const LpOptions& options) {
  DualSimplex simplex(model, options);
  return simplex.solve();
}

}  // namespace mrcuts
