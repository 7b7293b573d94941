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


#include "mrcuts/bb_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "mrcuts/lp.hpp"
#include "mrcuts/oracles.hpp"
#include "mrcuts/separation.hpp"

namespace mrcuts {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kConeTol = 1e-6;
constexpr double kConeTolIntegral = 1e-9;
constexpr double kIntTol = 1e-6;
constexpr int kMaxRoundsRoot = 2000;
constexpr int kMaxRoundsNode = 5;
constexpr int kMaxRoundsIntegral = 1000;

double quad_form(const Eigen::MatrixXd& v, std::span<const double> y) {
  const Eigen::Map<const Eigen::VectorXd> yy(y.data(), static_cast<Eigen::Index>(y.size()));
  return yy.dot(v * yy);
}

double cone_value(const Instance& inst, std::span<const double> y, double s) {
  double q = inst.sigma0 + s * s;
  for (int i = 0; i < inst.n; ++i) q += inst.a[i] * y[i] * y[i];
  return std::sqrt(std::max(q, 0.0));
}

struct Node {
  double bound;
  std::int64_t seq;
  int depth;
  std::vector<std::int8_t> fix;  // -1 free, 0 or 1 fixed
};

struct NodeOrder {
  bool operator()(const Node& l, const Node& r) const {
    if (l.bound != r.bound) return l.bound > r.bound;
    return l.seq > r.seq;
  }
};

class Search {
 public:
  Search(const Instance& inst, const SolverConfig& cfg)
      : inst_(inst), cfg_(cfg), n_(inst.n), start_(Clock::now()) {
    sep_cfg_.budget_primary = cfg.budget_primary;
    sep_cfg_.budget_secondary = cfg.budget_secondary;
    sep_cfg_.max_depth = cfg.max_cut_depth;
    build_lp();
    Point origin;
    origin.x.assign(n_, 0.0);
    origin.y.assign(n_, 0.0);
    if (inst_.correlated()) origin.s = 0.0;
    origin.z = std::sqrt(inst_.sigma0);
    offer(origin);
  }

  SolveReport run(bool root_only);

 private:
  enum class NodeResult { kPruned, kInfeasible, kResolved, kBranch, kStopped, kLpFailure };

  int xv(int i) const { return i; }
  int yv(int i) const { return n_ + i; }
  int zv() const { return 2 * n_; }
  int sv() const { return 2 * n_ + 1; }

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  bool out_of_time() const { return elapsed() >= cfg_.time_limit_s; }

  double cutoff() const {
    if (!has_incumbent_) return kInf;
    return incumbent_value_ - cfg_.gap_tol * std::max(1.0, std::abs(incumbent_value_));
  }

  void build_lp();
  bool add_cone_row(std::span<const double> y, double s);
  bool add_vcone_row(std::span<const double> y);
  Point point_from(const std::vector<double>& sol) const;
  void offer(const Point& p);
  Point complete_diagonal(std::vector<double> x) const;
  Point complete_correlated(std::vector<double> x, std::span<const double> y) const;
  void rounding_heuristic(const Point& p);
  NodeResult process(const Node& node, double& bound, Point& p);
  int branch_index(const Node& node, const Point& p, bool integral) const;

  const Instance& inst_;
  const SolverConfig& cfg_;
  int n_;
  Clock::time_point start_;
  SeparationConfig sep_cfg_;
  SeparationState sep_state_;
  std::optional<DualSimplex> lp_;
  std::array<int, 3> cuts_ = {0, 0, 0};
  bool has_incumbent_ = false;
  double incumbent_value_ = kInf;
  Point incumbent_;
};

void Search::build_lp() {
  LpModel m;
  double s_max = 0.0;
  if (inst_.correlated()) s_max = std::sqrt(inst_.covariance->cwiseAbs().sum()) + 1.0;
  double z_max = inst_.sigma0 + s_max * s_max;
  for (double ai : inst_.a) z_max += ai;
  z_max = std::sqrt(z_max) + 1.0;
  for (int i = 0; i < n_; ++i) m.add_var(0.0, 1.0, inst_.c[i]);
  for (int i = 0; i < n_; ++i) m.add_var(0.0, 1.0, inst_.d[i]);
  m.add_var(0.0, z_max, inst_.omega);
  if (inst_.correlated()) m.add_var(0.0, s_max, 0.0);
  for (int i = 0; i < n_; ++i) {
    m.add_row({{{yv(i), 1.0}, {xv(i), -1.0}}, RowSense::kLessEqual, 0.0});
  }
  if (inst_.cardinality) {
    LpRow card;
    for (int i = 0; i < n_; ++i) card.coefs.emplace_back(xv(i), 1.0);
    card.rhs = *inst_.cardinality;
    m.add_row(std::move(card));
  }
  LpOptions opt;
  opt.pivot_limit = cfg_.lp_pivot_limit;
  lp_.emplace(std::move(m), opt);

  std::vector<double> y(n_, 1.0);
  auto s_at = [&](const std::vector<double>& yy) {
    return inst_.correlated() ? std::sqrt(std::max(quad_form(*inst_.covariance, yy), 0.0))
                              : 0.0;
  };
  add_cone_row(y, s_at(y));
  if (inst_.correlated()) add_vcone_row(y);
  for (int i = 0; i < n_; ++i) {
    std::vector<double> e(n_, 0.0);
    e[i] = 1.0;
    add_cone_row(e, s_at(e));
    if (inst_.correlated()) add_vcone_row(e);
  }
}

bool Search::add_cone_row(std::span<const double> y, double s) {
  const double f = cone_value(inst_, y, s);
  if (f < 1e-12) return false;
  LpRow row;
  for (int i = 0; i < n_; ++i) {
    if (y[i] != 0.0) row.coefs.emplace_back(yv(i), inst_.a[i] * y[i] / f);
  }
  if (inst_.correlated() && s != 0.0) row.coefs.emplace_back(sv(), s / f);
  row.coefs.emplace_back(zv(), -1.0);
  row.rhs = -inst_.sigma0 / f;
  lp_->add_row(row);
  return true;
}

bool Search::add_vcone_row(std::span<const double> y) {
  const Eigen::Map<const Eigen::VectorXd> yy(y.data(), n_);
  const Eigen::VectorXd vy = *inst_.covariance * yy;
  const double g2 = yy.dot(vy);
  if (g2 <= 1e-24) return false;
  const double g = std::sqrt(g2);
  LpRow row;
  for (int i = 0; i < n_; ++i) {
    if (vy[i] != 0.0) row.coefs.emplace_back(yv(i), vy[i] / g);
  }
  row.coefs.emplace_back(sv(), -1.0);
  lp_->add_row(row);
  return true;
}

Point Search::point_from(const std::vector<double>& sol) const {
  Point p;
  p.x.assign(sol.begin(), sol.begin() + n_);
  p.y.assign(sol.begin() + n_, sol.begin() + 2 * n_);
  p.z = sol[zv()];
  if (inst_.correlated()) p.s = sol[sv()];
  return p;
}

void Search::offer(const Point& p) {
  const double v = objective_value(inst_, p);
  if (has_incumbent_ && v >= incumbent_value_ - 1e-12 * std::max(1.0, std::abs(v))) return;
  if (max_infeasibility(inst_, p) > 1e-8) return;
  has_incumbent_ = true;
  incumbent_value_ = v;
  incumbent_ = p;
}

Point Search::complete_diagonal(std::vector<double> x) const {
  std::vector<int> idx;
  std::vector<double> ct, at;
  for (int i = 0; i < n_; ++i) {
    if (x[i] > 0.5 && inst_.d[i] < 0.0) {
      idx.push_back(i);
      ct.push_back(inst_.d[i] / inst_.omega);
      at.push_back(inst_.a[i]);
    }
  }
  Point p;
  p.y.assign(n_, 0.0);
  if (!idx.empty()) {
    const auto rel = solve_continuous_relaxation(ct, at, inst_.sigma0);
    for (std::size_t k = 0; k < idx.size(); ++k) p.y[idx[k]] = rel.y_tilde[k];
  }
  for (int i = 0; i < n_; ++i) {
    x[i] = x[i] > 0.5 ? 1.0 : 0.0;
    if (x[i] == 1.0 && p.y[i] == 0.0 && inst_.c[i] >= 0.0) x[i] = 0.0;
  }
  p.x = std::move(x);
  p.z = cone_value(inst_, p.y, 0.0);
  return p;
}

Point Search::complete_correlated(std::vector<double> x, std::span<const double> y) const {
  Point p;
  p.y.assign(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    x[i] = x[i] > 0.5 ? 1.0 : 0.0;
    p.y[i] = std::clamp(y[i], 0.0, x[i]);
  }
  p.x = std::move(x);
  const double s = std::sqrt(std::max(quad_form(*inst_.covariance, p.y), 0.0));
  p.s = s;
  p.z = cone_value(inst_, p.y, s);
  return p;
}

void Search::rounding_heuristic(const Point& p) {
  std::vector<int> order(n_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return p.x[i] > p.x[j]; });
  const int limit = inst_.cardinality ? *inst_.cardinality : n_;
  std::vector<double> x(n_, 0.0);
  for (int k = 0; k < limit; ++k) {
    if (p.x[order[k]] <= kIntTol) break;
    x[order[k]] = 1.0;
    offer(inst_.correlated() ? complete_correlated(x, p.y) : complete_diagonal(x));
  }
}

Search::NodeResult Search::process(const Node& node, double& bound, Point& p) {
  for (int i = 0; i < n_; ++i) {
    const double lo = node.fix[i] == 1 ? 1.0 : 0.0;
    const double hi = node.fix[i] == 0 ? 0.0 : 1.0;
    lp_->set_bounds(xv(i), lo, hi);
  }
  const int max_rounds = node.depth == 0 ? kMaxRoundsRoot : kMaxRoundsNode;
  for (int round = 0;; ++round) {
    const LpResult res = lp_->solve();
    if (res.status == LpStatus::kInfeasible) return NodeResult::kInfeasible;
    if (res.status != LpStatus::kOptimal) return NodeResult::kLpFailure;
    bound = std::max(res.objective, node.bound);
    p = point_from(res.x);
    if (bound >= cutoff()) return NodeResult::kPruned;

    bool integral = true;
    for (int i = 0; i < n_; ++i) {
      if (std::min(p.x[i], 1.0 - p.x[i]) > kIntTol) integral = false;
    }
    const double tol = integral ? kConeTolIntegral : kConeTol;
    bool added = false;
    const double s = p.s.value_or(0.0);
    if (cone_value(inst_, p.y, s) - p.z > tol) added |= add_cone_row(p.y, s);
    if (inst_.correlated()) {
      const double g = std::sqrt(std::max(quad_form(*inst_.covariance, p.y), 0.0));
      if (g - s > tol) added |= add_vcone_row(p.y);
    }
    if (cfg_.enable_cuts && node.depth < sep_cfg_.max_depth) {
      const auto out = separate(p, inst_.a, inst_.sigma0, sep_cfg_, sep_state_);
      for (std::size_t k = 0; k < out.rows.size(); ++k) {
        const auto& r = out.rows[k];
        LpRow row;
        for (int i = 0; i < n_; ++i) {
          if (r.coef_x[i] != 0.0) row.coefs.emplace_back(xv(i), r.coef_x[i]);
          if (r.coef_y[i] != 0.0) row.coefs.emplace_back(yv(i), r.coef_y[i]);
        }
        row.coefs.emplace_back(zv(), -r.coef_z);
        row.rhs = r.rhs;
        lp_->add_row(row);
      }
      for (int c = 0; c < 3; ++c) cuts_[c] += out.counts[c];
      added |= !out.rows.empty();
    }
    if (!added || round + 1 >= (integral ? kMaxRoundsIntegral : max_rounds)) break;
    if (out_of_time()) return NodeResult::kStopped;
  }

  rounding_heuristic(p);
  bool integral = true;
  for (int i = 0; i < n_; ++i) {
    if (std::min(p.x[i], 1.0 - p.x[i]) > kIntTol) integral = false;
  }
  if (integral) {
    offer(inst_.correlated() ? complete_correlated(p.x, p.y) : complete_diagonal(p.x));
  }
  if (bound >= cutoff()) return NodeResult::kResolved;
  return NodeResult::kBranch;
}

int Search::branch_index(const Node& node, const Point& p, bool integral) const {
  int best = -1;
  double best_frac = kIntTol;
  for (int i = 0; i < n_; ++i) {
    if (node.fix[i] >= 0) continue;
    if (integral) return i;
    const double frac = std::min(p.x[i], 1.0 - p.x[i]);
    if (frac > best_frac) {
      best_frac = frac;
      best = i;
    }
  }
  return best;
}

SolveReport Search::run(bool root_only) {
  SolveReport rep;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  std::int64_t seq = 0;
  open.push(Node{-kInf, seq++, 0, std::vector<std::int8_t>(n_, -1)});
  double stopped_bound = kInf;
  bool lp_failure = false;
  bool root_done = false;

  while (!open.empty()) {
    if (open.top().bound >= cutoff()) {
      open = {};
      break;
    }
    if (out_of_time()) {
      rep.status = SolveStatus::kTimeLimit;
      break;
    }
    if (rep.nodes_explored >= cfg_.node_limit) {
      rep.status = SolveStatus::kNodeLimit;
      break;
    }
    Node node = open.top();
    open.pop();
    ++rep.nodes_explored;

    double bound = node.bound;
    Point p;
    const NodeResult result = process(node, bound, p);
    if (node.depth == 0) {
      rep.root_bound = result == NodeResult::kInfeasible ? kInf : bound;
      root_done = true;
    }
    if (result == NodeResult::kStopped) {
      stopped_bound = std::min(stopped_bound, bound);
      rep.status = SolveStatus::kTimeLimit;
      break;
    }
    if (result == NodeResult::kLpFailure) {
      lp_failure = true;
      continue;
    }
    if (root_only) {
      stopped_bound = bound;
      break;
    }
    if (result != NodeResult::kBranch) continue;

    bool integral = true;
    for (int i = 0; i < n_; ++i) {
      if (std::min(p.x[i], 1.0 - p.x[i]) > kIntTol) integral = false;
    }
    const int j = branch_index(node, p, integral);
    if (j < 0) continue;
    for (std::int8_t v : {0, 1}) {
      Node child{bound, seq++, node.depth + 1, node.fix};
      child.fix[j] = v;
      open.push(std::move(child));
    }
  }

  double bound = incumbent_value_;
  if (!open.empty()) bound = std::min(bound, open.top().bound);
  bound = std::min(bound, stopped_bound);
  if (!root_done) rep.root_bound = bound;
  if (lp_failure && rep.status == SolveStatus::kOptimal) rep.status = SolveStatus::kLpFailure;

  rep.incumbent = incumbent_value_;
  rep.solution = incumbent_;
  rep.bound = std::min(bound, incumbent_value_);
  rep.root_bound = std::min(rep.root_bound, incumbent_value_);
  rep.rgap = percent_gap(rep.incumbent, rep.root_bound);
  rep.egap = percent_gap(rep.incumbent, rep.bound);
  rep.branch_nodes = std::max<std::int64_t>(rep.nodes_explored - 1, 0);
  rep.cuts = cuts_;
  rep.wall_seconds = elapsed();
  return rep;
}

}  // namespace

SolverConfig parse_solver_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("solver config: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("solver config: expected an object");
  SolverConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "time_limit_s") {
        cfg.time_limit_s = value.get<double>();
      } else if (key == "node_limit") {
        cfg.node_limit = value.get<std::int64_t>();
      } else if (key == "gap_tol") {
        cfg.gap_tol = value.get<double>();
      } else if (key == "max_cut_depth") {
        cfg.max_cut_depth = value.get<int>();
      } else if (key == "budget_primary") {
        cfg.budget_primary = value.get<int>();
      } else if (key == "budget_secondary") {
        cfg.budget_secondary = value.get<int>();
      } else if (key == "enable_cuts") {
        cfg.enable_cuts = value.get<bool>();
      } else if (key == "lp_pivot_limit") {
        cfg.lp_pivot_limit = value.get<std::int64_t>();
      } else {
        throw ParseError("solver config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ParseError(std::string("solver config: ") + e.what());
  }
  if (cfg.time_limit_s <= 0.0 || cfg.node_limit <= 0 || cfg.gap_tol < 0.0 ||
      cfg.max_cut_depth < 0 || cfg.budget_primary < 0 || cfg.budget_secondary < 0 ||
      cfg.lp_pivot_limit <= 0) {
    throw ParseError("solver config: values out of range");
  }
  return cfg;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kTimeLimit:
      return "time-limit";
    case SolveStatus::kNodeLimit:
      return "node-limit";
    case SolveStatus::kLpFailure:
      return "lp-failure";
  }
  return "unknown";
}

double percent_gap(double upper, double lower) {
  const double diff = upper - lower;
  if (std::abs(upper) < 1e-12) return std::abs(diff) < 1e-12 ? 0.0 : 100.0 * diff;
  return 100.0 * diff / std::abs(upper);
}

double objective_value(const Instance& inst, const Point& p) {
  double v = inst.omega * p.z;
  for (int i = 0; i < inst.n; ++i) v += inst.c[i] * p.x[i] + inst.d[i] * p.y[i];
  return v;
}

double max_infeasibility(const Instance& inst, const Point& p) {
  double worst = 0.0;
  double count = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    worst = std::max(worst, std::min(std::abs(p.x[i]), std::abs(1.0 - p.x[i])));
    worst = std::max({worst, -p.y[i], p.y[i] - p.x[i]});
    count += p.x[i];
  }
  if (inst.cardinality) worst = std::max(worst, count - *inst.cardinality);
  double s = 0.0;
  if (inst.correlated()) {
    s = p.s.value_or(0.0);
    const double g = std::sqrt(std::max(quad_form(*inst.covariance, p.y), 0.0));
    worst = std::max(worst, g - s);
  }
  worst = std::max(worst, cone_value(inst, p.y, s) - p.z);
  return worst;
}

SolveReport solve(const Instance& inst, const SolverConfig& cfg) {
  if (auto errs = validate(inst); !errs.empty()) throw ValidationError(std::move(errs));
  Search search(inst, cfg);
  return search.run(false);
}

RootReport root_relaxation(const Instance& inst, const SolverConfig& cfg,
                           std::optional<double> reference) {
  if (auto errs = validate(inst); !errs.empty()) throw ValidationError(std::move(errs));
  Search search(inst, cfg);
  const SolveReport root = search.run(true);
  const double ref = reference ? *reference : solve(inst, cfg).incumbent;
  RootReport out;
  out.bound = std::min(root.root_bound, ref);
  out.rgap = percent_gap(ref, out.bound);
  out.cuts = root.cuts;
  return out;
}

}  // namespace mrcuts
