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

#include "mrcuts/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mrcuts {

namespace {

double conic_objective(std::span<const double> c, std::span<const double> a,
                       double offset, const std::vector<double>& y) {
  double lin = 0.0;
  double sq = offset;
  for (std::size_t i = 0; i < y.size(); ++i) {
    lin += c[i] * y[i];
    sq += a[i] * y[i] * y[i];
  }
  return lin + std::sqrt(sq);
}

void classify(RelaxationSolution& sol) {
  sol.fractional.clear();
  sol.at_one.clear();
  for (std::size_t i = 0; i < sol.y_tilde.size(); ++i) {
    if (sol.y_tilde[i] >= 1.0) {
      sol.at_one.push_back(static_cast<int>(i));
    } else if (sol.y_tilde[i] > 0.0) {
      sol.fractional.push_back(static_cast<int>(i));
    }
  }
}

}  // namespace

RelaxationSolution solve_continuous_relaxation(std::span<const double> c_tilde,
                                               std::span<const double> a,
                                               double sigma_offset) {
  const std::size_t n = a.size();
  if (c_tilde.size() != n) {
    throw std::invalid_argument("c_tilde and a differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c_tilde[i] < 0.0)) {
      throw std::invalid_argument("continuous relaxation requires c_tilde < 0");
    }
    if (!(a[i] > 0.0)) throw std::invalid_argument("a must be positive");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return c_tilde[i] / a[i] < c_tilde[j] / a[j];
  });

  double a_one = std::accumulate(a.begin(), a.end(), 0.0);
  double frac_mass = 0.0;  // sum over the fractional set of c~^2/a
  double sigma = sigma_offset + a_one;
  std::ptrdiff_t p = static_cast<std::ptrdiff_t>(n) - 1;
  for (; p >= 0; --p) {
    const int i = order[p];
    if (sigma > 0.0 && -c_tilde[i] / a[i] >= 1.0 / std::sqrt(sigma)) break;
    a_one = p == 0 ? 0.0 : a_one - a[i];
    frac_mass += c_tilde[i] * c_tilde[i] / a[i];
    // The denominator stays positive: the update is the root of a linear
    // function that is nonnegative at zero and negative at the old sigma.
    const double numer = sigma_offset + std::max(a_one, 0.0);
    const double denom = 1.0 - frac_mass;
    sigma = (numer <= 0.0 || denom <= 0.0) ? 0.0 : numer / denom;
  }

  RelaxationSolution sol;
  sol.y_tilde.assign(n, 0.0);
  const double root = std::sqrt(sigma);
  for (std::size_t k = 0; k < n; ++k) {
    const int i = order[k];
    if (static_cast<std::ptrdiff_t>(k) <= p) {
      sol.y_tilde[i] = 1.0;
    } else {
      sol.y_tilde[i] = std::min(1.0, -c_tilde[i] / a[i] * root);
    }
  }
  classify(sol);
  sol.sigma_tilde = sigma_offset;
  for (std::size_t i = 0; i < n; ++i) {
    sol.sigma_tilde += a[i] * sol.y_tilde[i] * sol.y_tilde[i];
  }
  sol.objective = conic_objective(c_tilde, a, sigma_offset, sol.y_tilde);
  return sol;
}

RelaxationSolution solve_box_conic_by_breakpoints(std::span<const double> c,
                                                  std::span<const double> a,
                                                  double sigma_offset) {
  const std::size_t n = a.size();
  if (c.size() != n) throw std::invalid_argument("c and a differ in length");

  std::vector<int> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] < 0.0) active.push_back(static_cast<int>(i));
  }
  // y_i(t) reaches one at t = a_i / (-c_i).
  std::vector<double> brk(n, std::numeric_limits<double>::infinity());
  for (int i : active) brk[i] = a[i] / -c[i];
  std::sort(active.begin(), active.end(),
            [&](int i, int j) { return brk[i] < brk[j]; });

  auto y_at = [&](double t) {
    std::vector<double> y(n, 0.0);
    for (int i : active) y[i] = std::min(1.0, -c[i] * t / a[i]);
    return y;
  };

  std::vector<double> candidates = {0.0};
  for (int i : active) candidates.push_back(brk[i]);
  // Segment k: the first k breakpoints are passed (those y are at one).
  double a_one = 0.0;
  double frac_mass = 0.0;
  for (int i : active) frac_mass += c[i] * c[i] / a[i];
  for (std::size_t k = 0; k <= active.size(); ++k) {
    const double lo = k == 0 ? 0.0 : brk[active[k - 1]];
    const double hi = k == active.size() ? std::numeric_limits<double>::infinity()
                                         : brk[active[k]];
    if (frac_mass < 1.0) {
      const double t = std::sqrt((sigma_offset + a_one) / (1.0 - frac_mass));
      if (t > lo && t < hi) candidates.push_back(t);
    }
    if (k < active.size()) {
      const int i = active[k];
      a_one += a[i];
      frac_mass -= c[i] * c[i] / a[i];
    }
  }

  RelaxationSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    auto y = y_at(t);
    const double val = conic_objective(c, a, sigma_offset, y);
    if (val < best.objective) {
      best.objective = val;
      best.y_tilde = std::move(y);
    }
  }
  classify(best);
  best.sigma_tilde = sigma_offset;
  for (std::size_t i = 0; i < n; ++i) {
    best.sigma_tilde += a[i] * best.y_tilde[i] * best.y_tilde[i];
  }
  return best;
}

std::vector<int> consecutive_ones_order(std::span<const double> c,
                                        std::span<const double> d,
                                        std::span<const double> a) {
  std::vector<int> free;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (c[i] > 0.0 && d[i] < 0.0 && c[i] + d[i] < 0.0) {
      free.push_back(static_cast<int>(i));
    }
  }
  std::stable_sort(free.begin(), free.end(), [&](int i, int j) {
    return (c[i] + d[i]) / a[i] < (c[j] + d[j]) / a[j];
  });
  return free;
}

namespace {

void check_opt_args(std::span<const double> c, std::span<const double> d,
                    std::span<const double> a, double sigma0) {
  if (c.size() != a.size() || d.size() != a.size()) {
    throw std::invalid_argument("c, d and a differ in length");
  }
  for (double ai : a) {
    if (!(ai > 0.0)) throw std::invalid_argument("a must be positive");
  }
  if (!(sigma0 >= 0.0)) throw std::invalid_argument("sigma0 must be >= 0");
}

}  // namespace

OptSolution solve_opt(std::span<const double> c, std::span<const double> d,
                      std::span<const double> a, double sigma0) {
  check_opt_args(c, d, a, sigma0);
  const std::size_t n = a.size();

  // Pre-fixing: c_i <= 0 switches x_i on for free; y_i only moves when d_i < 0.
  std::vector<int> x_fixed(n, 0);
  std::vector<int> forced_support;
  double fixed_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] <= 0.0) {
      x_fixed[i] = 1;
      fixed_cost += c[i];
      if (d[i] < 0.0) forced_support.push_back(static_cast<int>(i));
    }
  }
  const auto order = consecutive_ones_order(c, d, a);

  OptSolution best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<int> support = forced_support;
  double prefix_cost = fixed_cost;
  for (std::size_t k = 0; k <= order.size(); ++k) {
    if (k > 0) {
      support.push_back(order[k - 1]);
      prefix_cost += c[order[k - 1]];
    }
    std::vector<double> dk, ak;
    for (int i : support) {
      dk.push_back(d[i]);
      ak.push_back(a[i]);
    }
    const auto inner = solve_continuous_relaxation(dk, ak, sigma0);
    const double value = prefix_cost + inner.objective;
    if (value < best.value) {
      best.value = value;
      best.prefix_len = static_cast<int>(k);
      best.x_star = x_fixed;
      for (std::size_t j = 0; j < k; ++j) best.x_star[order[j]] = 1;
      best.y_star.assign(n, 0.0);
      for (std::size_t j = 0; j < support.size(); ++j) {
        best.y_star[support[j]] = inner.y_tilde[j];
      }
    }
  }
  return best;
}

OptSolution brute_force_opt(std::span<const double> c,
                            std::span<const double> d,
                            std::span<const double> a, double sigma0) {
  check_opt_args(c, d, a, sigma0);
  const std::size_t n = a.size();
  if (n > kMaxEnumeration) {
    throw std::invalid_argument("brute force limited to n <= 20");
  }
  OptSolution best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> cm(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double fixed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool on = (mask >> i) & 1u;
      cm[i] = on ? d[i] : 0.0;
      if (on) fixed += c[i];
    }
    const auto inner = solve_box_conic_by_breakpoints(cm, a, sigma0);
    const double value = fixed + inner.objective;
    if (value < best.value) {
      best.value = value;
      best.x_star.assign(n, 0);
      for (std::size_t i = 0; i < n; ++i) best.x_star[i] = (mask >> i) & 1u;
      best.y_star = inner.y_tilde;
      best.prefix_len = std::popcount(mask);
    }
  }
  return best;
}

OptSolution brute_force_instance(const Instance& inst) {
  if (inst.correlated()) {
    throw std::invalid_argument("brute force supports diagonal instances only");
  }
  const int n = inst.n;
  if (n > kMaxEnumeration) {
    throw std::invalid_argument("brute force limited to n <= 20");
  }
  const int card = inst.cardinality.value_or(n);
  OptSolution best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> cm(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > card) continue;
    double fixed = 0.0;
    for (int i = 0; i < n; ++i) {
      const bool on = (mask >> i) & 1u;
      cm[i] = on ? inst.d[i] / inst.omega : 0.0;
      if (on) fixed += inst.c[i];
    }
    const auto inner = solve_box_conic_by_breakpoints(cm, inst.a, inst.sigma0);
    const double value = fixed + inst.omega * inner.objective;
    if (value < best.value) {
      best.value = value;
      best.x_star.assign(n, 0);
      for (int i = 0; i < n; ++i) best.x_star[i] = (mask >> i) & 1u;
      best.y_star = inner.y_tilde;
      best.prefix_len = std::popcount(mask);
    }
  }
  return best;
}

namespace {

struct ReducedForm {
  std::vector<int> S;
  const std::vector<double>* pi = nullptr;
  const std::vector<double>* alpha = nullptr;
  double offset = 0.0;  // under the root, y_T at one
  double shift = 0.0;   // constant added to tau
};

}  // namespace

double max_cut_violation(const Cut& cut, std::span<const double> a,
                         double sigma0) {
  ReducedForm form;
  if (const auto* c = std::get_if<LiftedLinearCut>(&cut)) {
    form.S = c->perm.order();
    form.pi = &c->pi;
    form.alpha = &c->alpha;
    form.offset = sigma0;
    form.shift = std::sqrt(c->sigma0);
  } else if (const auto* c = std::get_if<SubsetConeCut>(&cut)) {
    form.S = c->S;
    form.pi = &c->pi;
    form.alpha = &c->alpha;
    form.offset = sigma0;
  } else {
    const auto& m = std::get<MixedConeCut>(cut);
    form.S = m.S;
    form.pi = &m.pi;
    form.alpha = &m.alpha;
    // nu - sqrt(K + nu^2) grows with nu, so y_T = 1 is optimal.
    double a_t = 0.0;
    for (int i : m.T) a_t += a[i];
    form.offset = sigma0 + a_t;
    form.shift = std::sqrt(a_t);
  }
  const std::size_t s = form.S.size();
  if (s > kMaxEnumeration) {
    throw std::invalid_argument("max_cut_violation limited to |S| <= 20");
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> neg_alpha, ap;
  for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
    neg_alpha.clear();
    ap.clear();
    double fixed = form.shift;
    for (std::size_t k = 0; k < s; ++k) {
      if (!((mask >> k) & 1u)) continue;
      const int i = form.S[k];
      fixed += (*form.pi)[i] - (*form.alpha)[i];
      neg_alpha.push_back(-(*form.alpha)[i]);
      ap.push_back(a[i]);
    }
    // max_y alpha'y - sqrt(offset + sum a y^2) = -min_y (-alpha)'y + sqrt(.)
    const auto inner = solve_continuous_relaxation(neg_alpha, ap, form.offset);
    best = std::max(best, fixed - inner.objective);
  }
  return best;
}

}  // namespace mrcuts
