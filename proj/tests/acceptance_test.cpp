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


// Acceptance checks. Prints one PASS/FAIL line per check and exits nonzero if
// any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mrcuts/bb_solver.hpp"
#include "mrcuts/generators.hpp"
#include "mrcuts/lifted_cuts.hpp"
#include "mrcuts/oracles.hpp"
#include "mrcuts/polymatroid.hpp"
#include "support.hpp"

namespace mrcuts {
namespace {

namespace tst = testing;

// Tolerances.
constexpr double kCoefTol = 1e-4;
constexpr double kValueTol = 1e-3;
constexpr double kWorkedCutSeconds = 1e-3;
constexpr double kValidityTol = 1e-9;
constexpr double kValiditySeconds = 120.0;
constexpr double kOracleRelTol = 1e-8;
constexpr double kOracleSeconds = 60.0;
constexpr double kKktTol = 1e-8;
constexpr double kProjGradTol = 1e-6;
constexpr double kGreedyTol = 1e-9;
constexpr double kRootGapPercent = 0.1;
constexpr double kRootInstanceSeconds = 60.0;
constexpr double kNodeGapTol = 1e-4;
constexpr double kNodeSeconds = 120.0;
constexpr double kEndToEndRelTol = 1e-6;
constexpr double kGradientRelTol = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = true;
  std::string detail;
};

bool near_vec(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (!(std::abs(got[i] - want[i]) <= tol)) return false;
  }
  return true;
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

Result worked_linear() {
  const std::vector<double> pt = {1, 0.3817, 0.6543, 0.3616, 0.8083};
  const auto t0 = Clock::now();
  const auto cut = build_lifted_linear(tst::kWeights, 0.0,
                                       Permutation::from_one_based({1, 3, 5, 2, 4}));
  const double v = violation(Cut{cut}, Point{pt, pt, 6.8705, std::nullopt});
  const double dt = seconds_since(t0);
  Result r;
  r.pass = near_vec(cut.pi, {4.6904, 1.0858, 1.8670, 1.0171, 1.1885}, kCoefTol) &&
           near_vec(cut.alpha, {4.6904, 2.0381, 3.2025, 1.9292, 2.1947}, kCoefTol) &&
           std::abs(v - 0.7844) <= kValueTol && dt < kWorkedCutSeconds;
  r.detail = fmt("violation %.4f", v) + fmt(", %.1f us", dt * 1e6);
  return r;
}

Result worked_subset() {
  const std::vector<double> pt = {1, 0, 0, 0, 0.8};
  const auto cut = build_subset_cone(tst::kWeights, {0, 1, 4},
                                     Permutation::from_one_based({1, 5, 2}));
  const double v = violation(Cut{cut}, Point{pt, pt, 5.7341, std::nullopt});
  Result r;
  r.pass = near_vec(cut.pi, {4.6904, 1.3048, 0, 0, 1.5546}, kCoefTol) &&
           near_vec(cut.alpha, {4.6904, 2.3842, 0, 0, 2.7222}, kCoefTol) &&
           std::abs(v - 0.2) <= kValueTol;
  r.detail = fmt("violation %.4f", v);
  return r;
}

Result worked_mixed() {
  const std::vector<double> pt = {0.8, 0.5, 1, 0, 1};
  const auto cut = build_mixed_cone(tst::kWeights, {0, 1}, {2, 4},
                                    Permutation::from_one_based({1, 2}));
  const double lhs = cut_lhs(Cut{cut}, pt, pt);
  Result r;
  r.pass = near_vec({cut.pi[0], cut.pi[1]}, {1.5816, 1.0858}, kCoefTol) &&
           near_vec({cut.alpha[0], cut.alpha[1]}, {2.8402, 2.0381}, kCoefTol) &&
           std::abs(lhs - 7.9726) <= kValueTol;
  r.detail = fmt("lhs %.4f", lhs);
  return r;
}

Instance scaled_instance(std::mt19937_64& rng, int n) {
  // a_i on [ceil(0.9 s), floor(1.2 s)] with the scale s drawn in [5, 60].
  const int scale = std::uniform_int_distribution<int>(5, 60)(rng);
  const double sigma0 = std::uniform_int_distribution<int>(0, 3)(rng) == 0
                            ? tst::uniform(rng, 0.0, 2.0 * scale)
                            : 0.0;
  return tst::random_instance(rng, n, sigma0, scale);
}

Result cut_validity() {
  std::mt19937_64 rng(101);
  const auto t0 = Clock::now();
  double worst = -1e300;
  int cuts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    const Instance inst = scaled_instance(rng, n);
    const auto order = tst::random_order(rng, n);
    // Random disjoint S (nonempty) and T.
    std::vector<int> S, T;
    for (int i : tst::random_order(rng, n)) {
      const int pick = std::uniform_int_distribution<int>(0, 2)(rng);
      if (pick == 0 || S.empty()) {
        S.push_back(i);
      } else if (pick == 1) {
        T.push_back(i);
      }
    }
    const auto s_order = Permutation(S);
    std::shuffle(S.begin(), S.end(), rng);
    const Cut all[] = {build_lifted_linear(inst.a, inst.sigma0, Permutation(order)),
                       build_subset_cone(inst.a, s_order.order(), s_order),
                       build_mixed_cone(inst.a, s_order.order(), T, s_order)};
    for (const Cut& c : all) {
      const double v = max_cut_violation(c, inst.a, inst.sigma0);
      worst = std::max(worst, v);
      ++cuts;
    }
  }
  const double dt = seconds_since(t0);
  Result r;
  r.pass = worst <= kValidityTol && dt < kValiditySeconds;
  r.detail = std::to_string(cuts) + " cuts" + fmt(", worst %.3e", worst) + fmt(", %.1f s", dt);
  return r;
}

// Value of the best support formed by the pre-fixed indices and a prefix of
// the sorted free indices, each inner problem solved by breakpoints.
double best_prefix_value(const Instance& inst, const std::vector<int>& order) {
  const int n = inst.n;
  std::vector<char> on(n, 0);
  for (int i = 0; i < n; ++i) on[i] = inst.c[i] <= 0.0;
  auto value = [&] {
    std::vector<double> cm(n, 0.0), am;
    double fixed = 0.0;
    for (int i = 0; i < n; ++i) {
      if (on[i]) {
        cm[i] = inst.d[i];
        fixed += inst.c[i];
      }
    }
    return fixed + solve_box_conic_by_breakpoints(cm, inst.a, inst.sigma0).objective;
  };
  double best = value();
  for (int i : order) {
    on[i] = 1;
    best = std::min(best, value());
  }
  return best;
}

Result oracle_equivalence() {
  std::mt19937_64 rng(102);
  const auto t0 = Clock::now();
  double worst_fast = 0.0, worst_prefix = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 10)(rng);
    Instance inst = scaled_instance(rng, n);
    // Mix in indices that the sign rules settle before sorting.
    for (int i = 0; i < n; ++i) {
      const int kind = std::uniform_int_distribution<int>(0, 9)(rng);
      if (kind == 0) inst.c[i] = -tst::uniform(rng, 0.0, 5.0);
      if (kind == 1) inst.d[i] = tst::uniform(rng, 0.0, 5.0);
      if (kind == 2) inst.d[i] = -inst.c[i] + tst::uniform(rng, 0.0, 1.0);
    }
    const double brute = brute_force_opt(inst.c, inst.d, inst.a, inst.sigma0).value;
    const double fast = solve_opt(inst.c, inst.d, inst.a, inst.sigma0).value;
    const double scale = std::max(1.0, std::abs(brute));
    worst_fast = std::max(worst_fast, std::abs(fast - brute) / scale);
    const double prefix = best_prefix_value(inst, consecutive_ones_order(inst.c, inst.d, inst.a));
    worst_prefix = std::max(worst_prefix, std::abs(prefix - brute) / scale);
  }
  const double dt = seconds_since(t0);
  Result r;
  r.pass = worst_fast <= kOracleRelTol && worst_prefix <= kOracleRelTol && dt < kOracleSeconds;
  r.detail = fmt("sweep rel err %.2e", worst_fast) + fmt(", prefix rel err %.2e", worst_prefix) +
             fmt(", %.1f s", dt);
  return r;
}

// Largest KKT residual: stationarity with multipliers for the box, feasibility
// and complementarity. At a zero norm the subgradient condition replaces
// stationarity.
double kkt_residual(std::span<const double> c, std::span<const double> a, double offset,
                    const RelaxationSolution& sol) {
  const std::size_t n = a.size();
  double q = offset;
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = sol.y_tilde[i];
    res = std::max({res, -y, y - 1.0});
    q += a[i] * y * y;
  }
  res = std::max(res, std::abs(q - sol.sigma_tilde) / (1.0 + q));
  const double root = std::sqrt(q);
  if (root <= 1e-12) {
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) mass += c[i] * c[i] / a[i];
    return std::max(res, mass - 1.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double y = sol.y_tilde[i];
    const double g = c[i] + a[i] * y / root;
    const double lambda = std::max(g, 0.0);   // multiplier of y >= 0
    const double mu = std::max(-g, 0.0);      // multiplier of y <= 1
    res = std::max({res, lambda * y, mu * (1.0 - y)});
  }
  return res;
}

Result relaxation_certificate() {
  std::mt19937_64 rng(103);
  double worst_kkt = 0.0, worst_pg = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::vector<double> a(n), c(n);
    const double scale = tst::uniform(rng, 5.0, 60.0);
    for (int i = 0; i < n; ++i) {
      a[i] = std::round(tst::uniform(rng, 0.9 * scale, 1.2 * scale));
      c[i] = -tst::uniform(rng, 0.05, 4.0);
    }
    const double offset = trial % 2 ? 0.0 : tst::uniform(rng, 0.0, 2.0 * scale);
    const auto sol = solve_continuous_relaxation(c, a, offset);
    worst_kkt = std::max(worst_kkt, kkt_residual(c, a, offset, sol));
    const double pg = tst::projected_gradient_box(c, a, offset);
    worst_pg = std::max(worst_pg, std::abs(sol.objective - pg));
  }
  Result r;
  r.pass = worst_kkt <= kKktTol && worst_pg <= kProjGradTol;
  r.detail = fmt("kkt residual %.2e", worst_kkt) + fmt(", objective diff %.2e", worst_pg);
  return r;
}

Result greedy_exactness() {
  std::mt19937_64 rng(104);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 7)(rng);
    const Instance inst = scaled_instance(rng, n);
    std::vector<double> x(n);
    double total = inst.sigma0;
    for (int i = 0; i < n; ++i) {
      x[i] = tst::uniform(rng, 0.0, 1.0);
      total += inst.a[i];
    }
    const double z = tst::uniform(rng, 0.0, std::sqrt(total));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = -1e300;
    do {
      const auto pi = tst::reference_pi(inst.a, inst.sigma0, perm);
      double v = std::sqrt(inst.sigma0) - z;
      for (int i = 0; i < n; ++i) v += pi[i] * x[i];
      best = std::max(best, v);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const auto cut = greedy_separate_binary(inst.a, inst.sigma0, x, z, -1e300);
    const double got = cut ? cut->violation(x, z) : -1e300;
    worst = std::max(worst, std::abs(got - best));
  }
  Result r;
  r.pass = worst <= kGreedyTol;
  r.detail = fmt("max diff %.2e", worst);
  return r;
}

Result root_gap_closure() {
  Result r;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = gen_fixed_charge(50, 0.05, seed);
    const auto t0 = Clock::now();
    SolverConfig on;
    on.time_limit_s = kRootInstanceSeconds;
    const auto rep = solve(inst, on);
    SolverConfig off = on;
    off.enable_cuts = false;
    const auto root_off = root_relaxation(inst, off, rep.incumbent);
    const double dt = seconds_since(t0);
    const bool ok = rep.status == SolveStatus::kOptimal && rep.rgap <= kRootGapPercent &&
                    rep.branch_nodes == 0 && root_off.rgap > rep.rgap &&
                    dt < kRootInstanceSeconds;
    r.pass = r.pass && ok;
    detail += " s" + std::to_string(seed) + fmt(":%.3f", rep.rgap) + fmt("/%.2f%%", root_off.rgap) +
              "/" + std::to_string(rep.branch_nodes) + "n" + fmt("/%.1fs", dt);
  }
  r.detail = "rgap on/off, nodes, time:" + detail;
  return r;
}

Result node_reduction() {
  Result r;
  std::string detail;
  for (int fam = 0; fam < 2; ++fam) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Instance inst = fam == 0 ? gen_cardinality(50, 0.2, 0.05, seed)
                                     : gen_correlated(50, 0.2, 1.0, 0.05, seed);
      SolverConfig on;
      on.time_limit_s = kNodeSeconds;
      const auto t0 = Clock::now();
      const auto rep_on = solve(inst, on);
      const double dt = seconds_since(t0);
      SolverConfig off = on;
      off.enable_cuts = false;
      // A run stopped by the limit still gives a lower bound on the node count.
      const auto rep_off = solve(inst, off);
      const bool ok = rep_on.status == SolveStatus::kOptimal && rep_on.egap <= kNodeGapTol &&
                      dt < kNodeSeconds && rep_on.branch_nodes <= rep_off.branch_nodes;
      r.pass = r.pass && ok;
      detail += std::string(fam == 0 ? " c" : " v") + std::to_string(seed) + ":" +
                std::to_string(rep_on.branch_nodes) + "/" + std::to_string(rep_off.branch_nodes);
    }
  }
  r.detail = "nodes on/off (c cardinality, v correlated):" + detail;
  return r;
}

Result end_to_end() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 15)(rng);
    const double kappa = tst::uniform(rng, 0.1, 0.6);
    const Instance inst = gen_cardinality(n, kappa, 0.05, 1000 + trial);
    const double want = brute_force_instance(inst).value;
    const auto rep = solve(inst);
    if (rep.status != SolveStatus::kOptimal) ++failures;
    worst = std::max(worst, std::abs(rep.incumbent - want) / std::max(1.0, std::abs(want)));
  }
  Result r;
  r.pass = failures == 0 && worst <= kEndToEndRelTol;
  r.detail = fmt("max rel err %.2e", worst) + ", " + std::to_string(failures) + " unsolved";
  return r;
}

Result gradient_dominance() {
  std::mt19937_64 rng(106);
  double worst_over = -1e300, worst_exact = 0.0;
  int triples = 0;
  while (triples < 1000) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    const Instance inst = scaled_instance(rng, n);
    const auto order = tst::random_order(rng, n);
    const int s_size = std::uniform_int_distribution<int>(1, n)(rng);
    const int t_size = std::uniform_int_distribution<int>(0, n - s_size)(rng);
    std::vector<int> S(order.begin(), order.begin() + s_size);
    std::vector<int> T(order.begin() + s_size, order.begin() + s_size + t_size);
    const Cut cut = triples % 2 ? Cut{build_subset_cone(inst.a, S, Permutation(S))}
                                : Cut{build_mixed_cone(inst.a, S, T, Permutation(S))};
    Point p;
    for (int i = 0; i < n; ++i) {
      p.x.push_back(tst::uniform(rng, 0.0, 1.0));
      p.y.push_back(tst::uniform(rng, 0.0, p.x.back()));
    }
    LinearCutRow row;
    try {
      row = gradient_linearize(cut, p);
    } catch (const DegeneratePointError&) {
      continue;
    }
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = tst::uniform(rng, 0.0, 1.0);
      y[i] = tst::uniform(rng, 0.0, x[i]);
    }
    const double at_p = cut_lhs(cut, p.x, p.y);
    worst_exact = std::max(worst_exact,
                           std::abs(row.bound_on_z(p.x, p.y) - at_p) / std::max(1.0, at_p));
    const double lhs = cut_lhs(cut, x, y);
    worst_over = std::max(worst_over, (row.bound_on_z(x, y) - lhs) / std::max(1.0, lhs));
    ++triples;
  }
  Result r;
  r.pass = worst_over <= kGradientRelTol && worst_exact <= kGradientRelTol;
  r.detail = fmt("max excess %.2e", worst_over) + fmt(", max error at point %.2e", worst_exact);
  return r;
}

}  // namespace
}  // namespace mrcuts

int main() {
  using namespace mrcuts;
  struct Check {
    const char* name;
    std::function<Result()> run;
  };
  const std::vector<Check> checks = {
      {"worked lifted linear cut", worked_linear},
      {"worked subset cone cut", worked_subset},
      {"worked mixed cone cut", worked_mixed},
      {"cut validity on random instances", cut_validity},
      {"sorted-prefix optimum equals enumeration", oracle_equivalence},
      {"relaxation KKT certificate", relaxation_certificate},
      {"greedy separation exactness", greedy_exactness},
      {"root gap closed on fixed-charge n=50", root_gap_closure},
      {"node reduction on cardinality and correlated n=50", node_reduction},
      {"branch and bound equals enumeration", end_to_end},
      {"gradient row dominance", gradient_dominance},
  };
  int failed = 0;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    Result r;
    try {
      r = checks[k].run();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", k + 1, checks[k].name,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu checks passed\n", static_cast<int>(checks.size()) - failed,
              checks.size());
  return failed == 0 ? 0 : 1;
}
